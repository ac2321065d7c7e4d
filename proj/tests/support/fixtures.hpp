#pragma once

// Shared test fixtures.

#include <string>

#include "sentiframes/frame.hpp"
#include "sentiframes/lexicon.hpp"

namespace sentiframes::testing {

// The "осудить" (to condemn) frame: four roles, five negative polarity
// assertions, a negative effect and state on A1, one verb entry.
inline SentimentFrame condemn_frame() {
    SentimentFrame frame;
    frame.id = "осудить";
    frame.title = "осудить";
    frame.roles = {{Role::A0, "who condemns"},
                   {Role::A1, "who is condemned"},
                   {Role::A2, "grounds for condemnation"},
                   {Role::A3, "punishment"}};
    frame.polarity = {{Role::A0, Role::A1, Sign::Neg, 1.0},
                      {Role::A0, Role::A2, Sign::Neg, 1.0},
                      {Role::A0, Role::A3, Sign::Neg, 1.0},
                      {Role::A1, Role::A0, Sign::Neg, 1.0},
                      {Role::A1, Role::A3, Sign::Neg, 1.0}};
    frame.effects = {{Role::A1, Sign::Neg, 1.0}};
    frame.states = {{Role::A1, Sign::Neg, 1.0}};
    frame.entries = {{{"осудить"}, EntryKind::SingleWord, WordClass::Verb}};
    return frame;
}

inline SentimentFrame simple_frame(const std::string& id, Sign a0_a1,
                                   std::vector<FrameEntry> entries) {
    SentimentFrame frame;
    frame.id = id;
    frame.title = id;
    frame.roles = {{Role::A0, ""}, {Role::A1, ""}};
    frame.polarity = {{Role::A0, Role::A1, a0_a1, 1.0}};
    frame.entries = std::move(entries);
    return frame;
}

inline FrameEntry word_entry(const std::string& token) {
    return {{token}, EntryKind::SingleWord, std::nullopt};
}

inline FrameEntry phrase_entry(std::vector<std::string> tokens,
                               EntryKind kind = EntryKind::Other) {
    return {std::move(tokens), kind, std::nullopt};
}

inline Lexicon make_lexicon(std::vector<SentimentFrame> frames) {
    Lexicon lexicon;
    for (SentimentFrame& frame : frames) {
        normalize(frame);
        std::string id = frame.id;
        lexicon.frames.emplace(std::move(id), std::move(frame));
    }
    return lexicon;
}

} // namespace sentiframes::testing
