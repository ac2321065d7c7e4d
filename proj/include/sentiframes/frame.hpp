#pragma once

// Sentiment-frame data model. A frame bundles the signed connotations of a
// predicate: attitudes between participant roles (or from the text author),
// effects on participants, participant mental states, and the lexical
// entries that evoke the frame.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentiframes {

enum class Role { A0, A1, A2, A3, Author };

// No neutral value: a neutral connotation is the absence of an assertion.
enum class Sign { Pos, Neg };

inline Sign invert(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }

std::string_view to_string(Role role);
std::string_view to_string(Sign sign);

// Case-insensitive, whitespace-trimmed. "A0".."A3", "author".
std::optional<Role> role_from_string(std::string_view text);
// Accepts "pos"/"neg" and the sign characters "+", "-", U+2212, U+2013.
std::optional<Sign> sign_from_string(std::string_view text);

// Assertion confidence has exactly two valid values.
inline constexpr double kConfidenceAlways = 1.0;
inline constexpr double kConfidenceDefault = 0.7;

inline bool valid_confidence(double c) {
    return c == kConfidenceAlways || c == kConfidenceDefault;
}

// A small set over {Pos, Neg}.
struct SignSet {
    bool pos = false;
    bool neg = false;

    void insert(Sign s) { (s == Sign::Pos ? pos : neg) = true; }
    bool contains(Sign s) const { return s == Sign::Pos ? pos : neg; }
    bool empty() const { return !pos && !neg; }
    bool all_positive() const { return pos && !neg; }
    SignSet inverted() const { return {neg, pos}; }

    bool operator==(const SignSet&) const = default;
};

struct PolarityAssertion {
    Role source = Role::A0; // A0-A3 or Author
    Role target = Role::A1; // A0-A3 only
    Sign sign = Sign::Neg;
    double confidence = kConfidenceAlways;

    bool operator==(const PolarityAssertion&) const = default;
};

struct EffectAssertion {
    Role role = Role::A1; // A0-A3 only
    Sign sign = Sign::Neg;
    double confidence = kConfidenceAlways;

    bool operator==(const EffectAssertion&) const = default;
};

struct StateAssertion {
    Role role = Role::A1; // A0-A3 only
    Sign sign = Sign::Neg;
    double confidence = kConfidenceAlways;

    bool operator==(const StateAssertion&) const = default;
};

enum class EntryKind { SingleWord, Idiom, LightVerb, WordWithPreposition, Compositional, Other };

std::string_view to_string(EntryKind kind);
std::optional<EntryKind> entry_kind_from_string(std::string_view text);

// Entry class used by the lexicon statistics (verb/noun/phrase/other split).
enum class WordClass { Verb, Noun, Phrase, Other };

std::string_view to_string(WordClass wc);
std::optional<WordClass> word_class_from_string(std::string_view text);

// One lexical realization of a frame: a single word or a multiword sequence.
struct FrameEntry {
    std::vector<std::string> tokens; // lowercase, no internal whitespace
    EntryKind kind = EntryKind::Other;
    std::optional<WordClass> word_class; // explicit stats annotation, else heuristic

    bool operator==(const FrameEntry&) const = default;
};

struct SentimentFrame {
    std::string id;    // unique within a lexicon, e.g. the title lemma
    std::string title;
    std::map<Role, std::string> roles; // declared roles; Author is implicit, never declared
    std::vector<PolarityAssertion> polarity;
    std::vector<EffectAssertion> effects;
    std::vector<StateAssertion> states;
    std::vector<FrameEntry> entries;

    bool operator==(const SentimentFrame&) const = default;

    // The frame's A0->A1 attitude sign, if asserted.
    std::optional<Sign> a0_a1_sign() const;
};

// Assertion and entry lists are sets in spirit; this sorts them into the
// canonical order so that structural equality means set equality.
void normalize(SentimentFrame& frame);
SentimentFrame normalized(SentimentFrame frame);

struct Violation {
    std::string code;    // machine-readable, e.g. "polarity.duplicate"
    std::string message;

    bool operator==(const Violation&) const = default;
    auto operator<=>(const Violation&) const = default;
};

// Checks every model invariant; the report is sorted and therefore
// independent of assertion/entry order. Empty report = valid frame.
std::vector<Violation> validate_frame(const SentimentFrame& frame);

} // namespace sentiframes
