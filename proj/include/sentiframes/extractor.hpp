#pragma once

// Sentence-level attitude extraction: for every ordered named-entity pair
// with at least one frame-entry match strictly between the mentions, emit a
// signed attitude. The left mention plays A0, the right mention A1. The pair
// is positive only when every effective polarity of every internal match is
// positive; otherwise negative.

#include <string>
#include <vector>

#include "sentiframes/frame.hpp"
#include "sentiframes/matcher.hpp"

namespace sentiframes {

struct EntityMention {
    std::size_t begin = 0; // inclusive token span
    std::size_t end = 0;
    std::string surface;
    std::string canonical; // aggregation key: lowercased, whitespace-collapsed, alias-mapped
    std::string type;      // optional tag (ORG, LOC, PER, ...), empty when absent

    bool operator==(const EntityMention&) const = default;
};

enum class PairingMode { AdjacentOnly, AllPairs };

struct PairAttitude {
    std::string source; // canonical string of the left mention (A0)
    std::string target; // canonical string of the right mention (A1)
    Sign sentiment = Sign::Neg;
    std::vector<EntryMatch> evidence; // the internal matches, non-empty
    std::string sentence_id;

    bool operator==(const PairAttitude&) const = default;
};

// Mentions must be sorted by span start and pairwise non-overlapping;
// matches must come from find_matches over the same stream. Output is
// ordered by (left mention start, right mention start).
std::vector<PairAttitude> extract_sentence_attitudes(const std::vector<EntityMention>& mentions,
                                                     const std::vector<EntryMatch>& matches,
                                                     PairingMode pairing,
                                                     const std::string& sentence_id);

} // namespace sentiframes
