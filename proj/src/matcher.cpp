#include "sentiframes/matcher.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace sentiframes {

namespace {

constexpr std::uint32_t kRoot = 0;
constexpr std::uint32_t kNoSymbol = UINT32_MAX;

} // namespace

EntryIndex EntryIndex::build(const Lexicon& lexicon, const LemmaTable* lemmas) {
    EntryIndex index;

    // Collect lemma-normalized patterns, merging owners of identical
    // sequences (ambiguous entries attached to several frames).
    std::map<std::vector<std::string>, Pattern> by_tokens;
    for (const auto& [id, frame] : lexicon.frames) {
        std::optional<Sign> a0_a1 = frame.a0_a1_sign();
        if (!a0_a1) continue; // only frames with an A0->A1 attitude are indexed
        for (const FrameEntry& entry : frame.entries) {
            std::vector<std::string> tokens;
            tokens.reserve(entry.tokens.size());
            for (const std::string& tok : entry.tokens) tokens.push_back(lemma_of(tok, lemmas));
            Pattern& pat = by_tokens[tokens];
            pat.tokens = tokens;
            pat.owners.push_back({id, entry.kind});
            pat.base_polarities.insert(*a0_a1);
        }
    }

    for (auto& [tokens, pat] : by_tokens) {
        std::sort(pat.owners.begin(), pat.owners.end(),
                  [](const EntryOwner& a, const EntryOwner& b) {
                      return std::tie(a.frame_id, a.kind) < std::tie(b.frame_id, b.kind);
                  });
        for (const EntryOwner& owner : pat.owners) {
            if (pat.frame_ids.empty() || pat.frame_ids.back() != owner.frame_id) {
                pat.frame_ids.push_back(owner.frame_id);
            }
        }

        std::uint32_t pattern_id = static_cast<std::uint32_t>(index.patterns_.size());
        std::uint32_t node = kRoot;
        for (const std::string& tok : tokens) {
            auto [it, inserted] = index.symbols_.try_emplace(
                tok, static_cast<std::uint32_t>(index.symbols_.size()));
            std::uint32_t sym = it->second;
            auto next = index.nodes_[node].next.find(sym);
            if (next == index.nodes_[node].next.end()) {
                index.nodes_.push_back({});
                std::uint32_t fresh = static_cast<std::uint32_t>(index.nodes_.size() - 1);
                index.nodes_[node].next.emplace(sym, fresh);
                node = fresh;
            } else {
                node = next->second;
            }
        }
        index.nodes_[node].outputs.push_back(pattern_id);
        index.patterns_.push_back(std::move(pat));
    }

    index.link_failures();
    return index;
}

void EntryIndex::link_failures() {
    std::deque<std::uint32_t> queue;
    for (auto& [sym, child] : nodes_[kRoot].next) {
        nodes_[child].fail = kRoot;
        queue.push_back(child);
    }
    while (!queue.empty()) {
        std::uint32_t node = queue.front();
        queue.pop_front();
        for (auto& [sym, child] : nodes_[node].next) {
            std::uint32_t fail = nodes_[node].fail;
            while (fail != kRoot && nodes_[fail].next.count(sym) == 0) fail = nodes_[fail].fail;
            auto it = nodes_[fail].next.find(sym);
            nodes_[child].fail = (it != nodes_[fail].next.end() && it->second != child)
                                     ? it->second
                                     : kRoot;
            // Inherit outputs along the suffix chain so every occurrence is
            // reported at its end position.
            const auto& inherited = nodes_[nodes_[child].fail].outputs;
            nodes_[child].outputs.insert(nodes_[child].outputs.end(), inherited.begin(),
                                         inherited.end());
            queue.push_back(child);
        }
    }
}

std::uint32_t EntryIndex::symbol_of(const std::string& lemma) const {
    auto it = symbols_.find(lemma);
    return it == symbols_.end() ? kNoSymbol : it->second;
}

std::vector<std::pair<std::size_t, std::size_t>> EntryIndex::scan(
    const std::vector<std::string>& lemmas) const {
    std::vector<std::pair<std::size_t, std::size_t>> hits;
    std::uint32_t state = kRoot;
    for (std::size_t pos = 0; pos < lemmas.size(); ++pos) {
        std::uint32_t sym = symbol_of(lemmas[pos]);
        if (sym == kNoSymbol) {
            state = kRoot;
            continue;
        }
        while (state != kRoot && nodes_[state].next.count(sym) == 0) state = nodes_[state].fail;
        auto it = nodes_[state].next.find(sym);
        state = it == nodes_[state].next.end() ? kRoot : it->second;
        for (std::uint32_t pattern_id : nodes_[state].outputs) {
            std::size_t len = patterns_[pattern_id].tokens.size();
            hits.emplace_back(pos + 1 - len, pattern_id);
        }
    }
    return hits;
}

std::vector<EntryOwner> EntryIndex::owners_of(const std::vector<std::string>& lemmas) const {
    for (const Pattern& pat : patterns_) {
        if (pat.tokens == lemmas) return pat.owners;
    }
    return {};
}

bool NegationConfig::is_particle(const std::string& lemma) const {
    return std::find(particles.begin(), particles.end(), lemma) != particles.end();
}

std::vector<EntryMatch> find_matches(const EntryIndex& index, const TokenStream& stream,
                                     const NegationConfig& negation) {
    std::vector<std::string> lemmas;
    lemmas.reserve(stream.size());
    for (const Token& tok : stream.tokens) lemmas.push_back(tok.lemma);

    // Longest match wins at each start position.
    std::map<std::size_t, std::size_t> best; // start -> pattern id
    for (const auto& [start, pattern_id] : index.scan(lemmas)) {
        auto it = best.find(start);
        if (it == best.end() ||
            index.patterns()[pattern_id].tokens.size() >
                index.patterns()[it->second].tokens.size()) {
            best[start] = pattern_id;
        }
    }

    std::vector<EntryMatch> matches;
    matches.reserve(best.size());
    for (const auto& [start, pattern_id] : best) {
        const EntryIndex::Pattern& pat = index.patterns()[pattern_id];
        EntryMatch match;
        match.begin = start;
        match.end = start + pat.tokens.size() - 1;
        match.frame_ids = pat.frame_ids;
        match.base_polarities = pat.base_polarities;

        std::size_t window_begin = start >= negation.window ? start - negation.window : 0;
        for (std::size_t i = window_begin; i < start; ++i) {
            if (negation.is_particle(lemmas[i])) {
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

} // namespace sentiframes
