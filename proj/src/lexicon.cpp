#include "sentiframes/lexicon.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sentiframes/errors.hpp"
#include "sentiframes/text.hpp"

namespace sentiframes {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

// nlohmann reports a byte offset; turn it into line/column for diagnostics.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_json(const std::string& document) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(document, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
}

std::string require_string(const json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

Role parse_role(const json& v, const std::string& where) {
    std::string text = require_string(v, where);
    auto role = role_from_string(text);
    if (!role) fail(where, "unknown role \"" + text + "\"");
    return *role;
}

Sign parse_sign(const json& v, const std::string& where) {
    std::string text = require_string(v, where);
    auto sign = sign_from_string(text);
    if (!sign) fail(where, "unknown sign \"" + text + "\"");
    return *sign;
}

double parse_confidence(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a numeric confidence");
    return v.get<double>();
}

std::vector<std::string> split_entry_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string lowered = to_lower_utf8(text);
    std::istringstream in(lowered);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

EntryKind default_kind(const std::vector<std::string>& tokens) {
    return tokens.size() == 1 ? EntryKind::SingleWord : EntryKind::Other;
}

FrameEntry parse_variant(const json& v, const std::string& where) {
    FrameEntry entry;
    if (v.is_string()) {
        entry.tokens = split_entry_tokens(v.get<std::string>());
        entry.kind = default_kind(entry.tokens);
        return entry;
    }
    if (!v.is_object()) fail(where, "expected a string or an object");
    if (!v.contains("text")) fail(where, "variant object lacks \"text\"");
    entry.tokens = split_entry_tokens(require_string(v.at("text"), where + ".text"));
    entry.kind = default_kind(entry.tokens);
    for (const auto& [key, value] : v.items()) {
        if (key == "text") continue;
        if (key == "kind") {
            std::string text = require_string(value, where + ".kind");
            auto kind = entry_kind_from_string(text);
            if (!kind) fail(where + ".kind", "unknown entry kind \"" + text + "\"");
            entry.kind = *kind;
        } else if (key == "class") {
            std::string text = require_string(value, where + ".class");
            auto wc = word_class_from_string(text);
            if (!wc) fail(where + ".class", "unknown word class \"" + text + "\"");
            entry.word_class = wc;
        } else {
            fail(where, "unknown variant field \"" + key + "\"");
        }
    }
    return entry;
}

SentimentFrame parse_canonical_frame(const json& v, const std::string& where) {
    if (!v.is_object()) fail(where, "expected a frame object");
    SentimentFrame frame;
    if (!v.contains("id")) fail(where, "frame lacks \"id\"");
    frame.id = require_string(v.at("id"), where + ".id");
    frame.title = frame.id;

    for (const auto& [key, value] : v.items()) {
        if (key == "id") {
            continue;
        } else if (key == "title") {
            frame.title = require_string(value, where + ".title");
        } else if (key == "roles") {
            if (!value.is_object()) fail(where + ".roles", "expected an object");
            for (const auto& [rk, rv] : value.items()) {
                auto role = role_from_string(rk);
                if (!role) fail(where + ".roles", "unknown role \"" + rk + "\"");
                frame.roles[*role] = require_string(rv, where + ".roles." + rk);
            }
        } else if (key == "polarity") {
            if (!value.is_array()) fail(where + ".polarity", "expected an array");
            std::size_t i = 0;
            for (const json& item : value) {
                std::string at = where + ".polarity[" + std::to_string(i++) + "]";
                if (!item.is_array() || item.size() != 4)
                    fail(at, "expected [source, target, sign, confidence]");
                frame.polarity.push_back({parse_role(item[0], at), parse_role(item[1], at),
                                          parse_sign(item[2], at),
                                          parse_confidence(item[3], at)});
            }
        } else if (key == "effect" || key == "state") {
            if (!value.is_array()) fail(where + "." + key, "expected an array");
            std::size_t i = 0;
            for (const json& item : value) {
                std::string at = where + "." + key + "[" + std::to_string(i++) + "]";
                if (!item.is_array() || item.size() != 3)
                    fail(at, "expected [role, sign, confidence]");
                if (key == "effect") {
                    frame.effects.push_back({parse_role(item[0], at), parse_sign(item[1], at),
                                             parse_confidence(item[2], at)});
                } else {
                    frame.states.push_back({parse_role(item[0], at), parse_sign(item[1], at),
                                            parse_confidence(item[2], at)});
                }
            }
        } else if (key == "variants") {
            if (!value.is_array()) fail(where + ".variants", "expected an array");
            std::size_t i = 0;
            for (const json& item : value) {
                frame.entries.push_back(
                    parse_variant(item, where + ".variants[" + std::to_string(i++) + "]"));
            }
        } else {
            fail(where, "unknown frame field \"" + key + "\"");
        }
    }
    return frame;
}

void validate_or_collect(const SentimentFrame& frame, std::vector<std::string>& problems) {
    for (const Violation& v : validate_frame(frame)) {
        problems.push_back("frame \"" + frame.id + "\": " + v.code + ": " + v.message);
    }
}

} // namespace

std::vector<std::pair<const FrameEntry*, const SentimentFrame*>> Lexicon::entry_memberships()
    const {
    std::vector<std::pair<const FrameEntry*, const SentimentFrame*>> out;
    for (const auto& [id, frame] : frames) {
        for (const FrameEntry& entry : frame.entries) out.push_back({&entry, &frame});
    }
    return out;
}

std::vector<std::string> Lexicon::frames_of_entry(const std::vector<std::string>& tokens) const {
    std::vector<std::string> ids;
    for (const auto& [id, frame] : frames) {
        for (const FrameEntry& entry : frame.entries) {
            if (entry.tokens == tokens) {
                ids.push_back(id);
                break;
            }
        }
    }
    return ids;
}

Lexicon load_lexicon(const std::string& document) {
    json root = parse_json(document);
    if (!root.is_object() || !root.contains("frames") || !root.at("frames").is_array()) {
        throw ParseError("top level: expected an object with a \"frames\" array");
    }

    Lexicon lexicon;
    std::vector<std::string> problems;
    std::size_t i = 0;
    for (const json& item : root.at("frames")) {
        SentimentFrame frame = parse_canonical_frame(item, "frames[" + std::to_string(i++) + "]");
        normalize(frame);
        validate_or_collect(frame, problems);
        if (!lexicon.frames.emplace(frame.id, frame).second) {
            problems.push_back("duplicate frame id \"" + frame.id + "\"");
        }
    }
    if (!problems.empty()) {
        throw ValidationError("lexicon validation failed: " + std::to_string(problems.size()) +
                                  " problem(s)",
                              problems);
    }
    return lexicon;
}

Lexicon load_lexicon(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_lexicon(buf.str());
}

Lexicon load_lexicon_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon: " + path);
    return load_lexicon(in);
}

std::string serialize_lexicon(const Lexicon& lexicon) {
    ordered_json root;
    root["frames"] = ordered_json::array();

    for (const auto& [id, original] : lexicon.frames) {
        const SentimentFrame frame = normalized(original);
        ordered_json f;
        f["id"] = frame.id;
        f["title"] = frame.title;

        ordered_json roles = ordered_json::object();
        for (const auto& [role, desc] : frame.roles) roles[std::string(to_string(role))] = desc;
        f["roles"] = std::move(roles);

        ordered_json pol = ordered_json::array();
        for (const PolarityAssertion& p : frame.polarity) {
            pol.push_back({std::string(to_string(p.source)), std::string(to_string(p.target)),
                           std::string(to_string(p.sign)), p.confidence});
        }
        f["polarity"] = std::move(pol);

        ordered_json eff = ordered_json::array();
        for (const EffectAssertion& e : frame.effects) {
            eff.push_back({std::string(to_string(e.role)), e.sign == Sign::Pos ? "+" : "-",
                           e.confidence});
        }
        f["effect"] = std::move(eff);

        ordered_json st = ordered_json::array();
        for (const StateAssertion& s : frame.states) {
            st.push_back({std::string(to_string(s.role)), std::string(to_string(s.sign)),
                          s.confidence});
        }
        f["state"] = std::move(st);

        ordered_json variants = ordered_json::array();
        for (const FrameEntry& entry : frame.entries) {
            std::string text;
            for (std::size_t k = 0; k < entry.tokens.size(); ++k) {
                if (k > 0) text += ' ';
                text += entry.tokens[k];
            }
            ordered_json v;
            v["text"] = text;
            v["kind"] = std::string(to_string(entry.kind));
            if (entry.word_class) v["class"] = std::string(to_string(*entry.word_class));
            variants.push_back(std::move(v));
        }
        f["variants"] = std::move(variants);

        root["frames"].push_back(std::move(f));
    }
    return root.dump(2) + "\n";
}

// --- import adapter -------------------------------------------------------

namespace {

void note_repair(ImportReport& report, const std::string& frame_id, const std::string& what) {
    report.repairs.push_back("frame \"" + frame_id + "\": " + what);
}

void import_assertions(const json& block, const std::string& frame_id, SentimentFrame& frame,
                       ImportReport& report) {
    auto parse_loose_role = [&](const json& v) -> std::optional<Role> {
        if (!v.is_string()) return std::nullopt;
        return role_from_string(v.get<std::string>());
    };
    auto parse_loose_sign = [&](const json& v) -> std::optional<Sign> {
        if (!v.is_string()) return std::nullopt;
        return sign_from_string(v.get<std::string>());
    };
    auto parse_loose_confidence = [&](const json& v) -> std::optional<double> {
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
            try {
                return std::stod(v.get<std::string>());
            } catch (...) {
                return std::nullopt;
            }
        }
        return std::nullopt;
    };

    for (const auto& [key, value] : block.items()) {
        if (key == "polarity") {
            if (!value.is_array()) {
                note_repair(report, frame_id, "polarity block is not an array; dropped");
                continue;
            }
            for (const json& item : value) {
                if (!item.is_array() || item.size() < 3) {
                    note_repair(report, frame_id, "malformed polarity tuple dropped");
                    continue;
                }
                auto src = parse_loose_role(item[0]);
                auto tgt = parse_loose_role(item[1]);
                auto sign = parse_loose_sign(item[2]);
                auto conf = item.size() > 3 ? parse_loose_confidence(item[3])
                                            : std::optional<double>(kConfidenceAlways);
                if (!src || !tgt || !sign || !conf) {
                    note_repair(report, frame_id, "unparseable polarity tuple dropped");
                    continue;
                }
                frame.polarity.push_back({*src, *tgt, *sign, *conf});
            }
        } else if (key == "effect" || key == "state") {
            if (!value.is_array()) {
                note_repair(report, frame_id, key + " block is not an array; dropped");
                continue;
            }
            for (const json& item : value) {
                if (!item.is_array() || item.size() < 2) {
                    note_repair(report, frame_id, "malformed " + key + " tuple dropped");
                    continue;
                }
                auto role = parse_loose_role(item[0]);
                auto sign = parse_loose_sign(item[1]);
                auto conf = item.size() > 2 ? parse_loose_confidence(item[2])
                                            : std::optional<double>(kConfidenceAlways);
                if (!role || !sign || !conf) {
                    note_repair(report, frame_id, "unparseable " + key + " tuple dropped");
                    continue;
                }
                if (key == "effect") {
                    frame.effects.push_back({*role, *sign, *conf});
                } else {
                    frame.states.push_back({*role, *sign, *conf});
                }
            }
        } else {
            report.unmapped_fields["frames." + key]++;
        }
    }
}

// Drops invalid assertions and declares missing roles so that the imported
// frame validates; every change is recorded in the report.
void repair_frame(SentimentFrame& frame, ImportReport& report) {
    const std::string& id = frame.id;

    frame.roles.erase(Role::Author);

    std::set<std::pair<Role, Role>> pairs;
    std::vector<PolarityAssertion> polarity;
    for (const PolarityAssertion& p : frame.polarity) {
        if (p.source == p.target) {
            note_repair(report, id, "self-directed polarity dropped");
            continue;
        }
        if (p.target == Role::Author) {
            note_repair(report, id, "polarity targeting the author dropped");
            continue;
        }
        if (!valid_confidence(p.confidence)) {
            note_repair(report, id, "polarity with invalid confidence dropped");
            continue;
        }
        if (!pairs.insert({p.source, p.target}).second) {
            note_repair(report, id, "duplicate polarity pair dropped (first kept)");
            continue;
        }
        polarity.push_back(p);
    }
    frame.polarity = std::move(polarity);

    auto repair_role_assertions = [&](auto& assertions, const char* what) {
        std::set<Role> roles;
        auto kept = assertions;
        kept.clear();
        for (const auto& a : assertions) {
            if (a.role == Role::Author) {
                note_repair(report, id, std::string(what) + " on the author dropped");
                continue;
            }
            if (!valid_confidence(a.confidence)) {
                note_repair(report, id, std::string(what) + " with invalid confidence dropped");
                continue;
            }
            if (!roles.insert(a.role).second) {
                note_repair(report, id, std::string("duplicate ") + what + " dropped (first kept)");
                continue;
            }
            kept.push_back(a);
        }
        assertions = std::move(kept);
    };
    repair_role_assertions(frame.effects, "effect");
    repair_role_assertions(frame.states, "state");

    auto declare = [&](Role role) {
        if (role != Role::Author && frame.roles.count(role) == 0) {
            frame.roles[role] = "";
            note_repair(report, id,
                        "role " + std::string(to_string(role)) + " declared (was referenced only)");
        }
    };
    for (const auto& p : frame.polarity) {
        declare(p.source);
        declare(p.target);
    }
    for (const auto& e : frame.effects) declare(e.role);
    for (const auto& s : frame.states) declare(s.role);

    std::set<std::vector<std::string>> seen;
    std::vector<FrameEntry> entries;
    for (FrameEntry& entry : frame.entries) {
        if (entry.tokens.empty()) {
            note_repair(report, id, "empty variant dropped");
            continue;
        }
        if (!seen.insert(entry.tokens).second) {
            note_repair(report, id, "duplicate variant dropped");
            continue;
        }
        entries.push_back(std::move(entry));
    }
    frame.entries = std::move(entries);
}

} // namespace

Lexicon import_rusentiframes(const std::string& document, ImportReport& report) {
    json root = parse_json(document);
    if (!root.is_object()) throw ParseError("top level: expected an object keyed by frame id");

    Lexicon lexicon;
    for (const auto& [frame_id, body] : root.items()) {
        if (!body.is_object()) {
            note_repair(report, frame_id, "frame body is not an object; skipped");
            continue;
        }
        SentimentFrame frame;
        frame.id = frame_id;
        frame.title = frame_id;

        for (const auto& [key, value] : body.items()) {
            if (key == "title") {
                if (value.is_string()) {
                    frame.title = value.get<std::string>();
                } else if (value.is_array() && !value.empty() && value[0].is_string()) {
                    frame.title = value[0].get<std::string>();
                } else {
                    note_repair(report, frame_id, "unusable title; frame id used instead");
                }
            } else if (key == "roles") {
                if (!value.is_object()) {
                    note_repair(report, frame_id, "roles block is not an object; dropped");
                    continue;
                }
                for (const auto& [rk, rv] : value.items()) {
                    auto role = role_from_string(rk);
                    if (!role || *role == Role::Author) {
                        note_repair(report, frame_id, "unknown role \"" + rk + "\" dropped");
                        continue;
                    }
                    frame.roles[*role] = rv.is_string() ? rv.get<std::string>() : "";
                }
            } else if (key == "frames") {
                if (!value.is_object()) {
                    note_repair(report, frame_id, "frames block is not an object; dropped");
                    continue;
                }
                import_assertions(value, frame_id, frame, report);
            } else if (key == "polarity" || key == "effect" || key == "state") {
                json block = json::object();
                block[key] = value;
                import_assertions(block, frame_id, frame, report);
            } else if (key == "variants" || key == "entries") {
                if (!value.is_array()) {
                    note_repair(report, frame_id, key + " block is not an array; dropped");
                    continue;
                }
                for (const json& item : value) {
                    FrameEntry entry;
                    if (item.is_string()) {
                        entry.tokens = split_entry_tokens(item.get<std::string>());
                    } else if (item.is_array()) {
                        std::string joined;
                        for (const json& part : item) {
                            if (!part.is_string()) continue;
                            if (!joined.empty()) joined += ' ';
                            joined += part.get<std::string>();
                        }
                        entry.tokens = split_entry_tokens(joined);
                    } else {
                        note_repair(report, frame_id, "unusable variant dropped");
                        continue;
                    }
                    entry.kind = default_kind(entry.tokens);
                    frame.entries.push_back(std::move(entry));
                }
            } else if (key == "comment" || key == "id") {
                // known, carries no model content
            } else {
                report.unmapped_fields[key]++;
            }
        }

        repair_frame(frame, report);
        normalize(frame);

        if (!validate_frame(frame).empty()) {
            note_repair(report, frame_id, "frame still invalid after repair; skipped");
            continue;
        }
        if (!lexicon.frames.emplace(frame.id, std::move(frame)).second) {
            note_repair(report, frame_id, "duplicate frame id; first kept");
            continue;
        }
        ++report.frames_imported;
    }
    return lexicon;
}

Lexicon import_rusentiframes(std::istream& in, ImportReport& report) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return import_rusentiframes(buf.str(), report);
}

Lexicon load_lexicon_any(const std::string& document, LexiconFormat format,
                         ImportReport& report) {
    if (format == LexiconFormat::Canonical) return load_lexicon(document);
    if (format == LexiconFormat::RuSentiFrames) return import_rusentiframes(document, report);

    json root = parse_json(document);
    if (root.is_object() && root.contains("frames") && root.at("frames").is_array()) {
        return load_lexicon(document);
    }
    return import_rusentiframes(document, report);
}

Lexicon load_lexicon_any_file(const std::string& path, LexiconFormat format,
                              ImportReport& report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_lexicon_any(buf.str(), format, report);
}

// --- statistics -----------------------------------------------------------

LexiconStats& LexiconStats::operator+=(const LexiconStats& other) {
    total_entries += other.total_entries;
    unique_entries += other.unique_entries;
    for (const auto& [wc, n] : other.class_total) class_total[wc] += n;
    for (const auto& [wc, n] : other.class_unique) class_unique[wc] += n;
    a0_a1_pos += other.a0_a1_pos;
    a0_a1_neg += other.a0_a1_neg;
    author_a0_pos += other.author_a0_pos;
    author_a0_neg += other.author_a0_neg;
    author_a1_pos += other.author_a1_pos;
    author_a1_neg += other.author_a1_neg;
    effect_a0_pos += other.effect_a0_pos;
    effect_a0_neg += other.effect_a0_neg;
    effect_a1_pos += other.effect_a1_pos;
    effect_a1_neg += other.effect_a1_neg;
    return *this;
}

LexiconStats lexicon_stats(const Lexicon& lexicon) {
    LexiconStats stats;
    for (WordClass wc : {WordClass::Verb, WordClass::Noun, WordClass::Phrase, WordClass::Other}) {
        stats.class_total[wc] = 0;
        stats.class_unique[wc] = 0;
    }

    std::set<std::vector<std::string>> seen_tokens;
    for (const auto& [id, frame] : lexicon.frames) {
        std::optional<Sign> a0_a1 = frame.a0_a1_sign();
        std::optional<Sign> author_a0, author_a1;
        for (const PolarityAssertion& p : frame.polarity) {
            if (p.source == Role::Author && p.target == Role::A0) author_a0 = p.sign;
            if (p.source == Role::Author && p.target == Role::A1) author_a1 = p.sign;
        }
        std::optional<Sign> effect_a0, effect_a1;
        for (const EffectAssertion& e : frame.effects) {
            if (e.role == Role::A0) effect_a0 = e.sign;
            if (e.role == Role::A1) effect_a1 = e.sign;
        }

        for (const FrameEntry& entry : frame.entries) {
            ++stats.total_entries;
            WordClass wc = entry.word_class.value_or(
                entry.tokens.size() > 1 ? WordClass::Phrase : WordClass::Other);
            ++stats.class_total[wc];
            if (seen_tokens.insert(entry.tokens).second) {
                ++stats.unique_entries;
                ++stats.class_unique[wc];
            }

            auto bump = [](std::optional<Sign> sign, std::uint64_t& pos, std::uint64_t& neg) {
                if (!sign) return;
                (*sign == Sign::Pos ? pos : neg) += 1;
            };
            bump(a0_a1, stats.a0_a1_pos, stats.a0_a1_neg);
            bump(author_a0, stats.author_a0_pos, stats.author_a0_neg);
            bump(author_a1, stats.author_a1_pos, stats.author_a1_neg);
            bump(effect_a0, stats.effect_a0_pos, stats.effect_a0_neg);
            bump(effect_a1, stats.effect_a1_pos, stats.effect_a1_neg);
        }
    }
    return stats;
}

std::string render_stats_tsv(const LexiconStats& stats) {
    std::ostringstream out;
    out << "dimension\tsign\tcount\n";
    out << "A0->A1\tpos\t" << stats.a0_a1_pos << "\n";
    out << "A0->A1\tneg\t" << stats.a0_a1_neg << "\n";
    out << "author->A0\tpos\t" << stats.author_a0_pos << "\n";
    out << "author->A0\tneg\t" << stats.author_a0_neg << "\n";
    out << "author->A1\tpos\t" << stats.author_a1_pos << "\n";
    out << "author->A1\tneg\t" << stats.author_a1_neg << "\n";
    out << "effect:A0\t+\t" << stats.effect_a0_pos << "\n";
    out << "effect:A0\t-\t" << stats.effect_a0_neg << "\n";
    out << "effect:A1\t+\t" << stats.effect_a1_pos << "\n";
    out << "effect:A1\t-\t" << stats.effect_a1_neg << "\n";
    out << "\n";
    out << "class\tunique\ttotal\n";
    for (WordClass wc : {WordClass::Verb, WordClass::Noun, WordClass::Phrase, WordClass::Other}) {
        auto unique_it = stats.class_unique.find(wc);
        auto total_it = stats.class_total.find(wc);
        out << to_string(wc) << "\t"
            << (unique_it != stats.class_unique.end() ? unique_it->second : 0) << "\t"
            << (total_it != stats.class_total.end() ? total_it->second : 0) << "\n";
    }
    out << "\n";
    out << "entries\tcount\n";
    out << "unique\t" << stats.unique_entries << "\n";
    out << "total\t" << stats.total_entries << "\n";
    return out.str();
}

std::vector<std::pair<std::string, std::uint64_t>> stats_cells(const LexiconStats& stats) {
    std::vector<std::pair<std::string, std::uint64_t>> cells;
    cells.emplace_back("unique_entries", stats.unique_entries);
    cells.emplace_back("total_entries", stats.total_entries);
    for (WordClass wc : {WordClass::Verb, WordClass::Noun, WordClass::Phrase, WordClass::Other}) {
        std::string name(to_string(wc));
        auto unique_it = stats.class_unique.find(wc);
        auto total_it = stats.class_total.find(wc);
        cells.emplace_back("class_" + name + "_unique",
                           unique_it != stats.class_unique.end() ? unique_it->second : 0);
        cells.emplace_back("class_" + name + "_total",
                           total_it != stats.class_total.end() ? total_it->second : 0);
    }
    cells.emplace_back("a0_a1_pos", stats.a0_a1_pos);
    cells.emplace_back("a0_a1_neg", stats.a0_a1_neg);
    cells.emplace_back("author_a0_pos", stats.author_a0_pos);
    cells.emplace_back("author_a0_neg", stats.author_a0_neg);
    cells.emplace_back("author_a1_pos", stats.author_a1_pos);
    cells.emplace_back("author_a1_neg", stats.author_a1_neg);
    cells.emplace_back("effect_a0_pos", stats.effect_a0_pos);
    cells.emplace_back("effect_a0_neg", stats.effect_a0_neg);
    cells.emplace_back("effect_a1_pos", stats.effect_a1_pos);
    cells.emplace_back("effect_a1_neg", stats.effect_a1_neg);
    return cells;
}

std::map<std::string, std::uint64_t> load_stats_reference(std::istream& in) {
    std::map<std::string, std::uint64_t> reference;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError("stats reference: line " + std::to_string(lineno) +
                             ": expected \"cell<TAB>count\"");
        }
        std::string cell = line.substr(0, tab);
        std::uint64_t count = 0;
        if (std::sscanf(line.c_str() + tab + 1, "%" SCNu64, &count) != 1) {
            throw ParseError("stats reference: line " + std::to_string(lineno) +
                             ": count is not a number");
        }
        reference[cell] = count;
    }
    return reference;
}

std::vector<StatsDiffRow> diff_stats(const LexiconStats& stats,
                                     const std::map<std::string, std::uint64_t>& reference) {
    std::vector<StatsDiffRow> rows;
    for (const auto& [cell, actual] : stats_cells(stats)) {
        auto it = reference.find(cell);
        if (it == reference.end()) continue;
        StatsDiffRow row;
        row.cell = cell;
        row.expected = it->second;
        row.actual = actual;
        if (row.expected == 0) {
            row.drift = actual == 0 ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
            double delta = static_cast<double>(actual) - static_cast<double>(row.expected);
            row.drift = std::abs(delta) / static_cast<double>(row.expected);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_stats_diff_tsv(const std::vector<StatsDiffRow>& rows) {
    std::ostringstream out;
    out << "cell\texpected\tactual\tdelta\tdrift_pct\n";
    for (const StatsDiffRow& row : rows) {
        std::int64_t delta =
            static_cast<std::int64_t>(row.actual) - static_cast<std::int64_t>(row.expected);
        char drift[32];
        std::snprintf(drift, sizeof(drift), "%.2f", row.drift * 100.0);
        out << row.cell << "\t" << row.expected << "\t" << row.actual << "\t" << delta << "\t"
            << drift << "\n";
    }
    return out.str();
}

} // namespace sentiframes
