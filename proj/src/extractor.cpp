#include "sentiframes/extractor.hpp"

namespace sentiframes {

namespace {

// Strictly inside the open token interval (left.end, right.begin).
bool strictly_between(std::size_t begin, std::size_t end, const EntityMention& left,
                      const EntityMention& right) {
    return begin > left.end && end < right.begin;
}

} // namespace

std::vector<PairAttitude> extract_sentence_attitudes(const std::vector<EntityMention>& mentions,
                                                     const std::vector<EntryMatch>& matches,
                                                     PairingMode pairing,
                                                     const std::string& sentence_id) {
    std::vector<PairAttitude> attitudes;
    if (mentions.size() < 2) return attitudes;

    for (std::size_t li = 0; li < mentions.size(); ++li) {
        for (std::size_t ri = li + 1; ri < mentions.size(); ++ri) {
            const EntityMention& left = mentions[li];
            const EntityMention& right = mentions[ri];

            if (pairing == PairingMode::AdjacentOnly) {
                bool has_between = false;
                for (std::size_t mi = 0; mi < mentions.size() && !has_between; ++mi) {
                    if (mi == li || mi == ri) continue;
                    has_between =
                        strictly_between(mentions[mi].begin, mentions[mi].end, left, right);
                }
                if (has_between) continue;
            }

            PairAttitude attitude;
            bool all_positive = true;
            for (const EntryMatch& match : matches) {
                if (!strictly_between(match.begin, match.end, left, right)) continue;
                attitude.evidence.push_back(match);
                if (!match.effective_polarities.all_positive()) all_positive = false;
            }
            if (attitude.evidence.empty()) continue;

            attitude.source = left.canonical;
            attitude.target = right.canonical;
            attitude.sentiment = all_positive ? Sign::Pos : Sign::Neg;
            attitude.sentence_id = sentence_id;
            attitudes.push_back(std::move(attitude));
        }
    }
    return attitudes;
}

} // namespace sentiframes
