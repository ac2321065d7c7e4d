#include "sentiframes/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "sentiframes/errors.hpp"

namespace sentiframes {

namespace {

std::string describe(const Connotation& c) {
    std::string out = c.id.empty() ? std::string("<no id>") : c.id;
    switch (c.dimension) {
        case Connotation::Dimension::Polarity:
            out += ": polarity " + std::string(to_string(c.role_a)) + "->" +
                   std::string(to_string(c.role_b));
            break;
        case Connotation::Dimension::Effect:
            out += ": effect " + std::string(to_string(c.role_a));
            break;
        case Connotation::Dimension::State:
            out += ": state " + std::string(to_string(c.role_a));
            break;
    }
    return out;
}

void insert_checked(ConnotationSet& set, Connotation c, std::vector<std::string>& conflicts) {
    Connotation opposite = c;
    opposite.sign = invert(c.sign);
    if (set.count(opposite) > 0) {
        conflicts.push_back("conflicting signs for " + describe(c));
        return;
    }
    set.insert(std::move(c));
}

} // namespace

ConnotationSet connotation_set(const std::vector<SentimentFrame>& frames) {
    ConnotationSet set;
    std::vector<std::string> conflicts;
    for (const SentimentFrame& frame : frames) {
        for (const PolarityAssertion& p : frame.polarity) {
            insert_checked(set,
                           {frame.id, Connotation::Dimension::Polarity, p.source, p.target, p.sign},
                           conflicts);
        }
        for (const EffectAssertion& e : frame.effects) {
            insert_checked(set, {frame.id, Connotation::Dimension::Effect, e.role, Role::A0, e.sign},
                           conflicts);
        }
        for (const StateAssertion& s : frame.states) {
            insert_checked(set, {frame.id, Connotation::Dimension::State, s.role, Role::A0, s.sign},
                           conflicts);
        }
    }
    if (!conflicts.empty()) {
        throw ValidationError("conflicting connotation signs: " +
                                  std::to_string(conflicts.size()) + " conflict(s)",
                              conflicts);
    }
    return set;
}

ConnotationSet strip_ids(const ConnotationSet& set) {
    ConnotationSet stripped;
    for (Connotation c : set) {
        c.id.clear();
        stripped.insert(std::move(c));
    }
    return stripped;
}

AgreementRatios agreement_ratios(const ConnotationSet& e1, const ConnotationSet& e2) {
    if (e1.empty() || e2.empty()) {
        throw ValidationError("agreement ratios are undefined for an empty connotation set");
    }
    std::size_t common = 0;
    for (const Connotation& c : e1) common += e2.count(c);

    AgreementRatios ratios;
    ratios.r1 = static_cast<double>(common) / static_cast<double>(e1.size());
    ratios.r2 = static_cast<double>(common) / static_cast<double>(e2.size());
    ratios.hm = harmonic_mean(ratios.r1, ratios.r2);
    return ratios;
}

double harmonic_mean(double r1, double r2) {
    double sum = r1 + r2;
    if (sum <= 0.0) return 0.0;
    return 2.0 * r1 * r2 / sum;
}

std::string format_ratio_2dp(double value) {
    long long hundredths = static_cast<long long>(std::floor(value * 100.0 + 0.5));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%02lld", hundredths / 100,
                  std::llabs(hundredths % 100));
    return buf;
}

} // namespace sentiframes
