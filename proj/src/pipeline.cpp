#include "sentiframes/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sentiframes/errors.hpp"

namespace sentiframes {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// --- corpus parsing ---------------------------------------------------------

CorpusDocument parse_corpus_record(const std::string& json_line) {
    json root;
    try {
        root = json::parse(json_line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("record is not an object");
    if (!root.contains("doc_id") || !root.at("doc_id").is_string()) {
        throw ParseError("record lacks a string \"doc_id\"");
    }

    CorpusDocument doc;
    doc.doc_id = root.at("doc_id").get<std::string>();

    if (root.contains("sentences")) {
        const json& sentences = root.at("sentences");
        if (!sentences.is_array()) throw ParseError("\"sentences\" is not an array");
        std::size_t i = 0;
        for (const json& s : sentences) {
            std::string at = "sentences[" + std::to_string(i++) + "]";
            if (!s.is_object()) throw ParseError(at + " is not an object");
            CorpusSentence sentence;
            if (!s.contains("id") || !s.at("id").is_string())
                throw ParseError(at + " lacks a string \"id\"");
            sentence.id = s.at("id").get<std::string>();
            if (!s.contains("text") || !s.at("text").is_string())
                throw ParseError(at + " lacks a string \"text\"");
            sentence.text = s.at("text").get<std::string>();

            if (s.contains("tokens")) {
                if (!s.at("tokens").is_array()) throw ParseError(at + ".tokens is not an array");
                for (const json& t : s.at("tokens")) {
                    if (!t.is_string()) throw ParseError(at + ".tokens holds a non-string");
                    sentence.tokens.push_back(t.get<std::string>());
                }
            }
            if (s.contains("entities")) {
                if (!s.at("entities").is_array())
                    throw ParseError(at + ".entities is not an array");
                std::size_t j = 0;
                for (const json& e : s.at("entities")) {
                    std::string eat = at + ".entities[" + std::to_string(j++) + "]";
                    if (!e.is_object()) throw ParseError(eat + " is not an object");
                    CorpusEntity entity;
                    if (!e.contains("start_char") || !e.at("start_char").is_number_unsigned())
                        throw ParseError(eat + " lacks an unsigned \"start_char\"");
                    if (!e.contains("end_char") || !e.at("end_char").is_number_unsigned())
                        throw ParseError(eat + " lacks an unsigned \"end_char\"");
                    entity.start_char = e.at("start_char").get<std::uint64_t>();
                    entity.end_char = e.at("end_char").get<std::uint64_t>();
                    if (e.contains("text") && e.at("text").is_string())
                        entity.text = e.at("text").get<std::string>();
                    if (e.contains("type") && e.at("type").is_string())
                        entity.type = e.at("type").get<std::string>();
                    sentence.entities.push_back(std::move(entity));
                }
            }
            doc.sentences.push_back(std::move(sentence));
        }
    }

    std::set<std::string> ids;
    for (const CorpusSentence& s : doc.sentences) {
        if (!ids.insert(s.id).second) throw ParseError("duplicate sentence id \"" + s.id + "\"");
    }
    return doc;
}

// --- aggregation ------------------------------------------------------------

void accumulate_attitude(PairStatsMap& stats, const std::string& source,
                         const std::string& target, Sign sentiment) {
    PairStats& row = stats[{source, target}];
    row.source = source;
    row.target = target;
    ++row.total;
    (sentiment == Sign::Pos ? row.positive : row.negative) += 1;
}

PairStatsMap aggregate_attitudes(const std::vector<PairAttitude>& attitudes) {
    PairStatsMap stats;
    for (const PairAttitude& a : attitudes) {
        accumulate_attitude(stats, a.source, a.target, a.sentiment);
    }
    return stats;
}

void merge_stats(PairStatsMap& into, const PairStatsMap& from) {
    for (const auto& [key, row] : from) {
        PairStats& dst = into[key];
        dst.source = row.source;
        dst.target = row.target;
        dst.total += row.total;
        dst.positive += row.positive;
        dst.negative += row.negative;
    }
}

std::vector<PairStats> rank_pairs(const PairStatsMap& stats, RankDirection direction,
                                  std::uint64_t min_total, std::size_t top_k) {
    std::vector<PairStats> rows;
    for (const auto& [key, row] : stats) {
        if (row.total >= min_total) rows.push_back(row);
    }
    auto count_of = [direction](const PairStats& row) {
        return direction == RankDirection::MostNegative ? row.negative : row.positive;
    };
    std::sort(rows.begin(), rows.end(), [&](const PairStats& a, const PairStats& b) {
        // share descending, compared exactly: a_cnt/a_total > b_cnt/b_total
        // <=> a_cnt * b_total > b_cnt * a_total (totals are >= 1 after the filter)
        unsigned __int128 lhs =
            static_cast<unsigned __int128>(count_of(a)) * static_cast<unsigned __int128>(b.total);
        unsigned __int128 rhs =
            static_cast<unsigned __int128>(count_of(b)) * static_cast<unsigned __int128>(a.total);
        if (lhs != rhs) return lhs > rhs;
        if (a.total != b.total) return a.total > b.total;
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    if (rows.size() > top_k) rows.resize(top_k);
    return rows;
}

// --- attitude records ---------------------------------------------------------

namespace {

json signs_to_json(const SignSet& signs) {
    json out = json::array();
    if (signs.neg) out.push_back("neg");
    if (signs.pos) out.push_back("pos");
    return out;
}

SignSet signs_from_json(const json& v, const char* where) {
    SignSet set;
    if (!v.is_array()) throw ParseError(std::string(where) + " is not an array");
    for (const json& item : v) {
        auto sign = item.is_string() ? sign_from_string(item.get<std::string>()) : std::nullopt;
        if (!sign) throw ParseError(std::string(where) + " holds an unknown sign");
        set.insert(*sign);
    }
    return set;
}

} // namespace

std::string render_attitude_record(const AttitudeRecord& record) {
    const PairAttitude& a = record.attitude;
    ordered_json out;
    out["doc_id"] = record.doc_id;
    out["sentence_id"] = a.sentence_id;
    out["source"] = a.source;
    out["target"] = a.target;
    out["sentiment"] = std::string(to_string(a.sentiment));
    ordered_json evidence = ordered_json::array();
    for (const EntryMatch& match : a.evidence) {
        ordered_json ev;
        ev["span"] = {match.begin, match.end};
        ev["frames"] = match.frame_ids;
        ev["negated"] = match.negated;
        ev["polarities"] = signs_to_json(match.effective_polarities);
        evidence.push_back(std::move(ev));
    }
    out["evidence"] = std::move(evidence);
    return out.dump();
}

AttitudeRecord parse_attitude_record(const std::string& json_line) {
    json root;
    try {
        root = json::parse(json_line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("attitude record is not an object");

    AttitudeRecord record;
    auto get_string = [&](const char* key) -> std::string {
        if (!root.contains(key) || !root.at(key).is_string())
            throw ParseError(std::string("attitude record lacks a string \"") + key + "\"");
        return root.at(key).get<std::string>();
    };
    record.doc_id = get_string("doc_id");
    record.attitude.sentence_id = get_string("sentence_id");
    record.attitude.source = get_string("source");
    record.attitude.target = get_string("target");
    auto sentiment = sign_from_string(get_string("sentiment"));
    if (!sentiment) throw ParseError("attitude record has an unknown sentiment");
    record.attitude.sentiment = *sentiment;

    try {
        if (root.contains("evidence")) {
            if (!root.at("evidence").is_array()) throw ParseError("\"evidence\" is not an array");
            for (const json& ev : root.at("evidence")) {
                EntryMatch match;
                if (!ev.is_object() || !ev.contains("span") || !ev.at("span").is_array() ||
                    ev.at("span").size() != 2) {
                    throw ParseError("evidence item lacks a [begin, end] span");
                }
                match.begin = ev.at("span")[0].get<std::size_t>();
                match.end = ev.at("span")[1].get<std::size_t>();
                if (ev.contains("frames")) {
                    for (const json& f : ev.at("frames")) {
                        match.frame_ids.push_back(f.get<std::string>());
                    }
                }
                if (ev.contains("negated")) match.negated = ev.at("negated").get<bool>();
                if (ev.contains("polarities")) {
                    match.effective_polarities =
                        signs_from_json(ev.at("polarities"), "polarities");
                    match.base_polarities = match.negated
                                                ? match.effective_polarities.inverted()
                                                : match.effective_polarities;
                }
                record.attitude.evidence.push_back(std::move(match));
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad evidence block: ") + e.what());
    }
    return record;
}

// --- pipeline ----------------------------------------------------------------

PipelineCounters& PipelineCounters::operator+=(const PipelineCounters& other) {
    documents += other.documents;
    sentences += other.sentences;
    attitude_records += other.attitude_records;
    malformed_records += other.malformed_records;
    skipped_sentences += other.skipped_sentences;
    expanded_mentions += other.expanded_mentions;
    unmapped_mentions += other.unmapped_mentions;
    overlapping_mentions += other.overlapping_mentions;
    return *this;
}

namespace {

// Aligns pre-tokenized surfaces against the sentence text to recover
// code-point spans. Returns nothing when the tokens do not re-compose.
std::optional<TokenStream> align_pretokenized(const std::string& text,
                                              const std::vector<std::string>& tokens) {
    TokenStream stream;
    std::size_t cp_cursor = 0;
    std::size_t byte_cursor = 0;
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };

    for (const std::string& surface : tokens) {
        while (byte_cursor < text.size() && is_ws(text[byte_cursor])) {
            byte_cursor += 1;
            cp_cursor += 1;
        }
        if (surface.empty() || text.compare(byte_cursor, surface.size(), surface) != 0) {
            return std::nullopt;
        }
        Token tok;
        tok.surface = surface;
        tok.lemma = to_lower_utf8(surface);
        tok.index = stream.tokens.size();
        tok.char_begin = cp_cursor;
        tok.char_end = cp_cursor + codepoint_count(surface);
        cp_cursor = tok.char_end;
        byte_cursor += surface.size();
        stream.tokens.push_back(std::move(tok));
    }
    return stream;
}

std::string substring_by_codepoints(const std::string& text, std::uint64_t begin,
                                    std::uint64_t end) {
    std::string out;
    std::size_t cp = 0;
    std::size_t i = 0;
    while (i < text.size() && cp < end) {
        unsigned char b = static_cast<unsigned char>(text[i]);
        std::size_t len = 1;
        if ((b & 0xE0) == 0xC0) len = 2;
        else if ((b & 0xF0) == 0xE0) len = 3;
        else if ((b & 0xF8) == 0xF0) len = 4;
        if (i + len > text.size()) len = 1;
        if (cp >= begin) out.append(text, i, len);
        i += len;
        ++cp;
    }
    return out;
}

struct MappedMentions {
    std::vector<EntityMention> mentions;
    std::uint64_t expanded = 0;
    std::uint64_t unmapped = 0;
    std::uint64_t overlapping = 0;
};

MappedMentions map_mentions(const TokenStream& stream, const std::string& text,
                            const std::vector<CorpusEntity>& entities,
                            const AliasTable* aliases) {
    MappedMentions out;
    std::vector<EntityMention> candidates;
    for (const CorpusEntity& entity : entities) {
        if (entity.end_char <= entity.start_char) {
            ++out.unmapped;
            continue;
        }
        std::size_t first = stream.size();
        std::size_t last = stream.size();
        for (std::size_t i = 0; i < stream.size(); ++i) {
            const Token& tok = stream.tokens[i];
            bool overlaps = tok.char_begin < entity.end_char && tok.char_end > entity.start_char;
            if (!overlaps) continue;
            if (first == stream.size()) first = i;
            last = i;
        }
        if (first == stream.size()) {
            ++out.unmapped;
            continue;
        }
        if (stream.tokens[first].char_begin != entity.start_char ||
            stream.tokens[last].char_end != entity.end_char) {
            ++out.expanded;
        }
        EntityMention mention;
        mention.begin = first;
        mention.end = last;
        mention.surface = !entity.text.empty()
                              ? entity.text
                              : substring_by_codepoints(text, entity.start_char, entity.end_char);
        mention.canonical = canonical_entity(mention.surface, aliases);
        mention.type = entity.type;
        candidates.push_back(std::move(mention));
    }

    // stable: ties keep the NER tool's order
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const EntityMention& a, const EntityMention& b) {
                         return std::tie(a.begin, a.end) < std::tie(b.begin, b.end);
                     });
    for (EntityMention& mention : candidates) {
        if (!out.mentions.empty() && mention.begin <= out.mentions.back().end) {
            ++out.overlapping;
            continue;
        }
        out.mentions.push_back(std::move(mention));
    }
    return out;
}

struct DocOutcome {
    bool malformed = false;
    std::string diagnostic;
    std::vector<AttitudeRecord> records;
    PipelineCounters counters;
};

DocOutcome process_line(const std::string& line, std::size_t lineno, const EntryIndex& index,
                        const PipelineConfig& config) {
    DocOutcome outcome;
    CorpusDocument doc;
    try {
        doc = parse_corpus_record(line);
    } catch (const std::exception& e) {
        // skip-and-count policy: a bad record must never take the run down
        outcome.malformed = true;
        outcome.counters.malformed_records = 1;
        outcome.diagnostic = "line " + std::to_string(lineno) + ": " + e.what();
        return outcome;
    }

    outcome.counters.documents = 1;
    for (const CorpusSentence& sentence : doc.sentences) {
        ++outcome.counters.sentences;

        TokenStream stream;
        if (!sentence.tokens.empty()) {
            auto aligned = align_pretokenized(sentence.text, sentence.tokens);
            if (!aligned) {
                ++outcome.counters.skipped_sentences;
                outcome.diagnostic += (outcome.diagnostic.empty() ? "" : "\n");
                outcome.diagnostic += "line " + std::to_string(lineno) + ": sentence \"" +
                                      sentence.id + "\": pre-tokenization does not match text";
                continue;
            }
            stream = std::move(*aligned);
        } else {
            stream = tokenize(sentence.text);
        }
        if (config.lemmas != nullptr) apply_lemma_table(stream, *config.lemmas);

        MappedMentions mapped = map_mentions(stream, sentence.text, sentence.entities,
                                             config.aliases);
        outcome.counters.expanded_mentions += mapped.expanded;
        outcome.counters.unmapped_mentions += mapped.unmapped;
        outcome.counters.overlapping_mentions += mapped.overlapping;
        if (mapped.mentions.size() < 2) continue;

        std::vector<EntryMatch> matches = find_matches(index, stream, config.negation);
        if (matches.empty()) continue;

        for (PairAttitude& attitude :
             extract_sentence_attitudes(mapped.mentions, matches, config.pairing, sentence.id)) {
            ++outcome.counters.attitude_records;
            outcome.records.push_back({doc.doc_id, std::move(attitude)});
        }
    }
    return outcome;
}

} // namespace

PipelineResult run_pipeline(const EntryIndex& index, std::istream& corpus,
                            std::ostream& attitudes_out, std::ostream* diagnostics,
                            const PipelineConfig& config) {
    PipelineResult result;
    const std::size_t workers = std::max<std::size_t>(1, config.workers);
    const std::size_t batch_size = std::max<std::size_t>(64, workers * 64);

    std::vector<std::pair<std::size_t, std::string>> batch;
    batch.reserve(batch_size);
    std::string line;
    std::size_t lineno = 0;
    bool eof = false;

    while (!eof) {
        batch.clear();
        while (batch.size() < batch_size) {
            if (!std::getline(corpus, line)) {
                eof = true;
                break;
            }
            ++lineno;
            if (line.empty()) continue;
            batch.emplace_back(lineno, line);
        }
        if (batch.empty()) continue;

        std::vector<DocOutcome> outcomes(batch.size());
        if (workers == 1 || batch.size() == 1) {
            for (std::size_t i = 0; i < batch.size(); ++i) {
                outcomes[i] = process_line(batch[i].second, batch[i].first, index, config);
            }
        } else {
            std::atomic<std::size_t> cursor{0};
            auto work = [&]() {
                for (std::size_t i; (i = cursor.fetch_add(1)) < batch.size();) {
                    outcomes[i] = process_line(batch[i].second, batch[i].first, index, config);
                }
            };
            std::vector<std::thread> threads;
            std::size_t n = std::min(workers, batch.size());
            threads.reserve(n);
            for (std::size_t t = 0; t < n; ++t) threads.emplace_back(work);
            for (std::thread& t : threads) t.join();
        }

        // Emit in corpus order: output bytes are identical for any worker count.
        for (DocOutcome& outcome : outcomes) {
            result.counters += outcome.counters;
            if (!outcome.diagnostic.empty() && diagnostics != nullptr) {
                *diagnostics << outcome.diagnostic << "\n";
            }
            for (const AttitudeRecord& record : outcome.records) {
                attitudes_out << render_attitude_record(record) << "\n";
                accumulate_attitude(result.stats, record.attitude.source, record.attitude.target,
                                    record.attitude.sentiment);
            }
        }
    }
    return result;
}

std::string render_pipeline_report(const PipelineResult& result, std::uint64_t min_total,
                                   std::size_t top_k) {
    const PipelineCounters& c = result.counters;
    std::ostringstream out;
    out << "attitude extraction report\n";
    out << "\n";
    out << "documents\t" << c.documents << "\n";
    out << "sentences\t" << c.sentences << "\n";
    out << "attitude_records\t" << c.attitude_records << "\n";
    out << "malformed_records\t" << c.malformed_records << "\n";
    out << "skipped_sentences\t" << c.skipped_sentences << "\n";
    out << "expanded_mentions\t" << c.expanded_mentions << "\n";
    out << "unmapped_mentions\t" << c.unmapped_mentions << "\n";
    out << "overlapping_mentions\t" << c.overlapping_mentions << "\n";
    out << "\n";
    out << "most negative (min_total=" << min_total << ", top=" << top_k << ")\n";
    out << render_pair_table_text(
        rank_pairs(result.stats, RankDirection::MostNegative, min_total, top_k));
    out << "\n";
    out << "most positive (min_total=" << min_total << ", top=" << top_k << ")\n";
    out << render_pair_table_text(
        rank_pairs(result.stats, RankDirection::MostPositive, min_total, top_k));
    return out.str();
}

std::string render_pair_counts_tsv(const PairStatsMap& stats) {
    std::ostringstream out;
    out << "source\ttarget\ttotal\tpositive\tnegative\n";
    for (const auto& [key, row] : stats) {
        out << row.source << "\t" << row.target << "\t" << row.total << "\t" << row.positive
            << "\t" << row.negative << "\n";
    }
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp);
        out << content;
        out.flush();
        if (!out) throw IoError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

} // namespace sentiframes
