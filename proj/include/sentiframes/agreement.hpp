#pragma once

// Expert-agreement measures over connotation sets: directional overlap
// ratios R1 and R2 and their harmonic mean.

#include <set>
#include <string>
#include <vector>

#include "sentiframes/frame.hpp"

namespace sentiframes {

// One atomic signed fact of a frame. For Polarity, role_a/role_b are the
// source and target; for Effect/State, role_a is the affected role.
struct Connotation {
    enum class Dimension { Polarity, Effect, State };

    std::string id; // owning frame/word id; empty after strip_ids
    Dimension dimension = Dimension::Polarity;
    Role role_a = Role::A0;
    Role role_b = Role::A0;
    Sign sign = Sign::Neg;

    auto operator<=>(const Connotation&) const = default;
};

using ConnotationSet = std::set<Connotation>;

// Flattens every polarity/effect/state assertion; confidence is discarded.
// Throws ValidationError when the same (id, dimension, roles) carries both
// signs — conflicting connotations within one expert's set.
ConnotationSet connotation_set(const std::vector<SentimentFrame>& frames);

// Dimension-only matching: drops the id component (collapses duplicates).
ConnotationSet strip_ids(const ConnotationSet& set);

struct AgreementRatios {
    double r1 = 0.0; // |e1 ∩ e2| / |e1|
    double r2 = 0.0; // |e1 ∩ e2| / |e2|
    double hm = 0.0; // harmonic mean, 0 when r1 + r2 == 0
};

// Throws ValidationError when either set is empty (ratio undefined).
AgreementRatios agreement_ratios(const ConnotationSet& e1, const ConnotationSet& e2);

double harmonic_mean(double r1, double r2);

// Two-decimal half-up presentation, e.g. 0.7623 -> "0.76".
std::string format_ratio_2dp(double value);

} // namespace sentiframes
