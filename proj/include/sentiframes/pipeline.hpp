#pragma once

// Corpus-level attitude extraction: streams line-delimited annotated
// documents through the matcher and extractor, writes auditable attitude
// records, aggregates per-pair counts, and renders ranked reports.
// Documents are independent work units; aggregation is a commutative
// monoid, so shard results merge deterministically.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sentiframes/extractor.hpp"
#include "sentiframes/matcher.hpp"
#include "sentiframes/report.hpp"
#include "sentiframes/text.hpp"

namespace sentiframes {

struct CorpusEntity {
    std::uint64_t start_char = 0; // code-point offsets, end exclusive
    std::uint64_t end_char = 0;
    std::string text;
    std::string type;
};

struct CorpusSentence {
    std::string id;
    std::string text;
    std::vector<std::string> tokens; // optional pre-tokenization; empty = tokenize here
    std::vector<CorpusEntity> entities;
};

struct CorpusDocument {
    std::string doc_id;
    std::vector<CorpusSentence> sentences;
};

// One JSONL record. Throws ParseError on malformed input (bad JSON, missing
// required fields, duplicate sentence ids).
CorpusDocument parse_corpus_record(const std::string& json_line);

// --- aggregation ----------------------------------------------------------

struct PairKey {
    std::string source;
    std::string target;

    auto operator<=>(const PairKey&) const = default;
};

using PairStatsMap = std::map<PairKey, PairStats>;

void accumulate_attitude(PairStatsMap& stats, const std::string& source,
                         const std::string& target, Sign sentiment);
PairStatsMap aggregate_attitudes(const std::vector<PairAttitude>& attitudes);
void merge_stats(PairStatsMap& into, const PairStatsMap& from);

enum class RankDirection { MostPositive, MostNegative };

// Filters pairs with total >= min_total, sorts by share of the requested
// sign descending (exact rational comparison), ties by total descending,
// then by (source, target); returns at most top_k rows.
std::vector<PairStats> rank_pairs(const PairStatsMap& stats, RankDirection direction,
                                  std::uint64_t min_total, std::size_t top_k);

// --- attitude records -----------------------------------------------------

struct AttitudeRecord {
    std::string doc_id;
    PairAttitude attitude;
};

// Single-line JSON with deterministic field order.
std::string render_attitude_record(const AttitudeRecord& record);
AttitudeRecord parse_attitude_record(const std::string& json_line);

// --- pipeline -------------------------------------------------------------

struct PipelineConfig {
    NegationConfig negation;
    PairingMode pairing = PairingMode::AllPairs;
    std::size_t workers = 1;
    const LemmaTable* lemmas = nullptr;
    const AliasTable* aliases = nullptr;
};

struct PipelineCounters {
    std::uint64_t documents = 0;
    std::uint64_t sentences = 0;
    std::uint64_t attitude_records = 0;
    std::uint64_t malformed_records = 0;          // skipped JSONL lines
    std::uint64_t skipped_sentences = 0;          // unalignable pre-tokenization
    std::uint64_t expanded_mentions = 0;          // span widened to token boundaries
    std::uint64_t unmapped_mentions = 0;          // no covering tokens
    std::uint64_t overlapping_mentions = 0;       // dropped to keep spans disjoint

    PipelineCounters& operator+=(const PipelineCounters& other);
    bool operator==(const PipelineCounters&) const = default;
};

struct PipelineResult {
    PairStatsMap stats;
    PipelineCounters counters;
};

// Streams the corpus, writes one attitude record per line to attitudes_out
// (in corpus order regardless of worker count), and aggregates pair stats.
// Malformed records are skipped, counted, and reported to diagnostics.
PipelineResult run_pipeline(const EntryIndex& index, std::istream& corpus,
                            std::ostream& attitudes_out, std::ostream* diagnostics,
                            const PipelineConfig& config);

// Counters plus ranked tables in both directions.
std::string render_pipeline_report(const PipelineResult& result, std::uint64_t min_total,
                                   std::size_t top_k);

// Raw per-pair counts, sorted by key: source, target, total, positive, negative.
std::string render_pair_counts_tsv(const PairStatsMap& stats);

// Write-to-temp plus atomic rename; no partial files on failure.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace sentiframes
