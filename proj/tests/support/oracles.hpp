#pragma once

// Brute-force reference implementations used to check the production code.
// These deliberately avoid the automaton and the extractor's span logic:
// matching enumerates every contiguous subsequence, and pair extraction
// works over explicit token-index sets.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sentiframes/extractor.hpp"
#include "sentiframes/matcher.hpp"

namespace sentiframes::testing {

struct OraclePattern {
    std::vector<std::string> tokens;
    std::vector<std::string> frame_ids; // sorted unique
    SignSet base;
};

// All contiguous subsequences that equal a pattern, then the
// longest-match-at-start filter, then window-based negation.
inline std::vector<EntryMatch> brute_force_matches(const std::vector<OraclePattern>& patterns,
                                                   const std::vector<std::string>& lemmas,
                                                   const NegationConfig& negation) {
    struct Candidate {
        std::size_t begin;
        std::size_t end;
        const OraclePattern* pattern;
    };
    std::vector<Candidate> candidates;
    for (std::size_t begin = 0; begin < lemmas.size(); ++begin) {
        for (std::size_t end = begin; end < lemmas.size(); ++end) {
            std::vector<std::string> window(lemmas.begin() + begin, lemmas.begin() + end + 1);
            for (const OraclePattern& pattern : patterns) {
                if (pattern.tokens == window) candidates.push_back({begin, end, &pattern});
            }
        }
    }

    std::map<std::size_t, Candidate> longest;
    for (const Candidate& c : candidates) {
        auto it = longest.find(c.begin);
        if (it == longest.end() || c.end > it->second.end) longest[c.begin] = c;
    }

    std::vector<EntryMatch> matches;
    for (const auto& [begin, c] : longest) {
        EntryMatch match;
        match.begin = c.begin;
        match.end = c.end;
        match.frame_ids = c.pattern->frame_ids;
        match.base_polarities = c.pattern->base;
        for (std::size_t back = 1; back <= negation.window && back <= c.begin; ++back) {
            const std::string& before = lemmas[c.begin - back];
            if (std::find(negation.particles.begin(), negation.particles.end(), before) !=
                negation.particles.end()) {
                match.negated = true;
                break;
            }
        }
        match.effective_polarities =
            match.negated ? match.base_polarities.inverted() : match.base_polarities;
        matches.push_back(std::move(match));
    }
    return matches;
}

// Exhaustive enumeration over ordered mention pairs with direct set checks.
inline std::vector<PairAttitude> brute_force_attitudes(
    const std::vector<EntityMention>& mentions, const std::vector<EntryMatch>& matches,
    PairingMode pairing, const std::string& sentence_id) {
    std::vector<PairAttitude> attitudes;
    for (std::size_t li = 0; li < mentions.size(); ++li) {
        for (std::size_t ri = 0; ri < mentions.size(); ++ri) {
            if (mentions[li].begin >= mentions[ri].begin) continue; // ordered left-right pairs

            // Token indices strictly between the two mentions.
            std::set<std::size_t> between;
            for (std::size_t t = mentions[li].end + 1; t < mentions[ri].begin; ++t) {
                between.insert(t);
            }

            if (pairing == PairingMode::AdjacentOnly) {
                bool blocked = false;
                for (std::size_t mi = 0; mi < mentions.size(); ++mi) {
                    if (mi == li || mi == ri) continue;
                    bool inside = true;
                    for (std::size_t t = mentions[mi].begin; t <= mentions[mi].end; ++t) {
                        if (between.count(t) == 0) inside = false;
                    }
                    if (inside) blocked = true;
                }
                if (blocked) continue;
            }

            std::vector<EntryMatch> internal;
            for (const EntryMatch& match : matches) {
                bool inside = true;
                for (std::size_t t = match.begin; t <= match.end; ++t) {
                    if (between.count(t) == 0) inside = false;
                }
                if (inside) internal.push_back(match);
            }
            if (internal.empty()) continue;

            bool any_negative = false;
            for (const EntryMatch& match : internal) {
                if (match.effective_polarities.contains(Sign::Neg)) any_negative = true;
            }

            PairAttitude attitude;
            attitude.source = mentions[li].canonical;
            attitude.target = mentions[ri].canonical;
            attitude.sentiment = any_negative ? Sign::Neg : Sign::Pos;
            attitude.evidence = internal;
            attitude.sentence_id = sentence_id;
            attitudes.push_back(std::move(attitude));
        }
    }
    // Mentions are sorted by start, so this emission order is already
    // (left start, right start).
    return attitudes;
}

} // namespace sentiframes::testing
