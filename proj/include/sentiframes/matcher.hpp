#pragma once

// Multi-pattern matching of frame entries over token streams. Entries are
// indexed as lemma sequences in a token-level Aho-Corasick automaton; only
// frames carrying an A0->A1 polarity assertion are indexed. Matches report
// the owning frames' A0->A1 signs, inverted under negation.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentiframes/frame.hpp"
#include "sentiframes/lexicon.hpp"
#include "sentiframes/text.hpp"

namespace sentiframes {

struct EntryOwner {
    std::string frame_id;
    EntryKind kind = EntryKind::Other;

    bool operator==(const EntryOwner&) const = default;
};

class EntryIndex {
public:
    // Entry tokens are lemma-normalized through the table when one is given.
    static EntryIndex build(const Lexicon& lexicon, const LemmaTable* lemmas = nullptr);

    std::size_t pattern_count() const { return patterns_.size(); }
    bool empty() const { return patterns_.empty(); }

    // Owners of the pattern with exactly these lemma tokens; empty if absent.
    std::vector<EntryOwner> owners_of(const std::vector<std::string>& lemmas) const;

    struct Pattern {
        std::vector<std::string> tokens;
        std::vector<EntryOwner> owners;       // sorted by frame id
        std::vector<std::string> frame_ids;   // sorted unique
        SignSet base_polarities;              // A0->A1 signs of the owners
    };

    const std::vector<Pattern>& patterns() const { return patterns_; }

    // All pattern occurrences in the lemma sequence, as (start, pattern id).
    std::vector<std::pair<std::size_t, std::size_t>> scan(
        const std::vector<std::string>& lemmas) const;

private:
    struct Node {
        std::unordered_map<std::uint32_t, std::uint32_t> next;
        std::uint32_t fail = 0;
        std::vector<std::uint32_t> outputs; // pattern ids ending here
    };

    std::uint32_t symbol_of(const std::string& lemma) const;
    void link_failures();

    std::vector<Node> nodes_{1};
    std::unordered_map<std::string, std::uint32_t> symbols_;
    std::vector<Pattern> patterns_;
};

struct NegationConfig {
    std::vector<std::string> particles{"не", "ни"};
    std::size_t window = 1; // tokens immediately before the match span

    bool is_particle(const std::string& lemma) const;
};

struct EntryMatch {
    std::size_t begin = 0; // inclusive token span
    std::size_t end = 0;
    std::vector<std::string> frame_ids; // sorted unique, non-empty
    bool negated = false;
    SignSet base_polarities;
    SignSet effective_polarities; // base, element-wise inverted when negated

    bool operator==(const EntryMatch&) const = default;
};

// All maximal matches: at each start position only the longest match
// survives. Matches are ordered by start position.
std::vector<EntryMatch> find_matches(const EntryIndex& index, const TokenStream& stream,
                                     const NegationConfig& negation = {});

} // namespace sentiframes
