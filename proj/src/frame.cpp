#include "sentiframes/frame.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sentiframes/text.hpp"

namespace sentiframes {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::string format_confidence(double c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

} // namespace

std::string_view to_string(Role role) {
    switch (role) {
        case Role::A0: return "A0";
        case Role::A1: return "A1";
        case Role::A2: return "A2";
        case Role::A3: return "A3";
        case Role::Author: return "author";
    }
    return "?";
}

std::string_view to_string(Sign sign) {
    return sign == Sign::Pos ? "pos" : "neg";
}

std::optional<Role> role_from_string(std::string_view text) {
    std::string lowered = to_lower_utf8(trim(text));
    if (lowered == "a0") return Role::A0;
    if (lowered == "a1") return Role::A1;
    if (lowered == "a2") return Role::A2;
    if (lowered == "a3") return Role::A3;
    if (lowered == "author") return Role::Author;
    return std::nullopt;
}

std::optional<Sign> sign_from_string(std::string_view text) {
    std::string lowered = to_lower_utf8(trim(text));
    if (lowered == "pos" || lowered == "+") return Sign::Pos;
    if (lowered == "neg" || lowered == "-" || lowered == "−" || lowered == "–")
        return Sign::Neg;
    return std::nullopt;
}

std::string_view to_string(EntryKind kind) {
    switch (kind) {
        case EntryKind::SingleWord: return "single_word";
        case EntryKind::Idiom: return "idiom";
        case EntryKind::LightVerb: return "light_verb";
        case EntryKind::WordWithPreposition: return "word_with_preposition";
        case EntryKind::Compositional: return "compositional";
        case EntryKind::Other: return "other";
    }
    return "?";
}

std::optional<EntryKind> entry_kind_from_string(std::string_view text) {
    std::string lowered = to_lower_utf8(trim(text));
    if (lowered == "single_word") return EntryKind::SingleWord;
    if (lowered == "idiom") return EntryKind::Idiom;
    if (lowered == "light_verb") return EntryKind::LightVerb;
    if (lowered == "word_with_preposition") return EntryKind::WordWithPreposition;
    if (lowered == "compositional") return EntryKind::Compositional;
    if (lowered == "other") return EntryKind::Other;
    return std::nullopt;
}

std::string_view to_string(WordClass wc) {
    switch (wc) {
        case WordClass::Verb: return "verb";
        case WordClass::Noun: return "noun";
        case WordClass::Phrase: return "phrase";
        case WordClass::Other: return "other";
    }
    return "?";
}

std::optional<WordClass> word_class_from_string(std::string_view text) {
    std::string lowered = to_lower_utf8(trim(text));
    if (lowered == "verb") return WordClass::Verb;
    if (lowered == "noun") return WordClass::Noun;
    if (lowered == "phrase") return WordClass::Phrase;
    if (lowered == "other") return WordClass::Other;
    return std::nullopt;
}

void normalize(SentimentFrame& frame) {
    std::sort(frame.polarity.begin(), frame.polarity.end(), [](const auto& a, const auto& b) {
        return std::tie(a.source, a.target, a.sign, a.confidence) <
               std::tie(b.source, b.target, b.sign, b.confidence);
    });
    std::sort(frame.effects.begin(), frame.effects.end(), [](const auto& a, const auto& b) {
        return std::tie(a.role, a.sign, a.confidence) < std::tie(b.role, b.sign, b.confidence);
    });
    std::sort(frame.states.begin(), frame.states.end(), [](const auto& a, const auto& b) {
        return std::tie(a.role, a.sign, a.confidence) < std::tie(b.role, b.sign, b.confidence);
    });
    std::sort(frame.entries.begin(), frame.entries.end(),
              [](const FrameEntry& a, const FrameEntry& b) {
                  return std::tie(a.tokens, a.kind, a.word_class) <
                         std::tie(b.tokens, b.kind, b.word_class);
              });
}

SentimentFrame normalized(SentimentFrame frame) {
    normalize(frame);
    return frame;
}

std::optional<Sign> SentimentFrame::a0_a1_sign() const {
    for (const PolarityAssertion& p : polarity) {
        if (p.source == Role::A0 && p.target == Role::A1) return p.sign;
    }
    return std::nullopt;
}

std::vector<Violation> validate_frame(const SentimentFrame& frame) {
    std::vector<Violation> report;
    auto add = [&](std::string code, std::string message) {
        report.push_back({std::move(code), std::move(message)});
    };

    if (frame.id.empty()) add("frame.empty_id", "frame id must be non-empty");

    if (frame.roles.count(Role::Author) > 0) {
        add("role.author_declared", "author is implicit and must not appear in the roles map");
    }

    auto check_confidence = [&](const char* what, double c) {
        if (!valid_confidence(c)) {
            add("confidence.invalid", std::string(what) + " confidence " + format_confidence(c) +
                                          " is not one of 1.0, 0.7");
        }
    };
    auto check_declared = [&](Role role) {
        if (role != Role::Author && frame.roles.count(role) == 0) {
            add("role.undeclared", std::string("role ") + std::string(to_string(role)) +
                                       " is referenced by an assertion but not declared");
        }
    };

    std::set<std::pair<Role, Role>> seen_pairs;
    for (const PolarityAssertion& p : frame.polarity) {
        std::string pair_name = std::string(to_string(p.source)) + "->" +
                                std::string(to_string(p.target));
        if (p.source == p.target) {
            add("polarity.self_directed", "polarity " + pair_name + " has source equal to target");
        }
        if (p.target == Role::Author) {
            add("polarity.author_target", "polarity " + pair_name + " targets the author");
        }
        if (!seen_pairs.insert({p.source, p.target}).second) {
            add("polarity.duplicate", "more than one polarity assertion for " + pair_name);
        }
        check_confidence("polarity", p.confidence);
        check_declared(p.source);
        check_declared(p.target);
    }

    std::set<Role> seen_effects;
    for (const EffectAssertion& e : frame.effects) {
        if (e.role == Role::Author) {
            add("effect.author_role", "effect assertions cannot apply to the author");
        }
        if (!seen_effects.insert(e.role).second) {
            add("effect.duplicate", std::string("more than one effect assertion for ") +
                                        std::string(to_string(e.role)));
        }
        check_confidence("effect", e.confidence);
        check_declared(e.role);
    }

    std::set<Role> seen_states;
    for (const StateAssertion& s : frame.states) {
        if (s.role == Role::Author) {
            add("state.author_role", "state assertions cannot apply to the author");
        }
        if (!seen_states.insert(s.role).second) {
            add("state.duplicate", std::string("more than one state assertion for ") +
                                       std::string(to_string(s.role)));
        }
        check_confidence("state", s.confidence);
        check_declared(s.role);
    }

    std::set<std::vector<std::string>> seen_entries;
    for (const FrameEntry& entry : frame.entries) {
        std::string joined;
        for (std::size_t i = 0; i < entry.tokens.size(); ++i) {
            if (i > 0) joined += ' ';
            joined += entry.tokens[i];
        }
        if (entry.tokens.empty()) {
            add("entry.no_tokens", "entry has no tokens");
            continue;
        }
        if (entry.kind == EntryKind::SingleWord && entry.tokens.size() != 1) {
            add("entry.arity", "single_word entry \"" + joined + "\" must have exactly one token");
        }
        if (entry.kind != EntryKind::SingleWord && entry.kind != EntryKind::Other &&
            entry.tokens.size() < 2) {
            add("entry.arity", std::string(to_string(entry.kind)) + " entry \"" + joined +
                                   "\" must have at least two tokens");
        }
        for (const std::string& tok : entry.tokens) {
            if (tok.find_first_of(" \t\n\r") != std::string::npos) {
                add("entry.whitespace", "entry token \"" + tok + "\" contains whitespace");
            }
            if (!is_lower_utf8(tok)) {
                add("entry.case", "entry token \"" + tok + "\" is not lowercase");
            }
        }
        if (!seen_entries.insert(entry.tokens).second) {
            add("entry.duplicate", "entry \"" + joined + "\" appears more than once");
        }
    }

    std::sort(report.begin(), report.end());
    return report;
}

} // namespace sentiframes
