#pragma once

// Frame lexicon: canonical on-disk JSON format, an import adapter for the
// upstream RuSentiFrames repository layout, and distribution statistics.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sentiframes/frame.hpp"

namespace sentiframes {

struct Lexicon {
    std::map<std::string, SentimentFrame> frames; // keyed by frame id

    bool empty() const { return frames.empty(); }
    std::size_t size() const { return frames.size(); }

    // Every (entry, frame-id) membership, in deterministic order.
    std::vector<std::pair<const FrameEntry*, const SentimentFrame*>> entry_memberships() const;

    // Frame ids owning an entry with exactly these tokens.
    std::vector<std::string> frames_of_entry(const std::vector<std::string>& tokens) const;
};

// Parses the canonical format. Every frame must validate cleanly; entry
// tokens are normalized to lowercase on load.
// Throws ParseError (malformed document, with position), ValidationError
// (per-frame violations or duplicate frame id).
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon(const std::string& document);
Lexicon load_lexicon_file(const std::string& path);

// Deterministic canonical serialization; load_lexicon(serialize_lexicon(L)) == L.
std::string serialize_lexicon(const Lexicon& lexicon);

// Import adapter for the upstream lexicon JSON (object keyed by frame id,
// assertions nested under "frames"). Unknown fields and repaired records are
// reported, never fatal.
struct ImportReport {
    std::map<std::string, std::size_t> unmapped_fields; // field name -> occurrences
    std::vector<std::string> repairs;                   // human-readable notes
    std::size_t frames_imported = 0;

    bool clean() const { return unmapped_fields.empty() && repairs.empty(); }
};

Lexicon import_rusentiframes(std::istream& in, ImportReport& report);
Lexicon import_rusentiframes(const std::string& document, ImportReport& report);

enum class LexiconFormat { Auto, Canonical, RuSentiFrames };

// Auto-detection: canonical documents carry a top-level "frames" array.
Lexicon load_lexicon_any(const std::string& document, LexiconFormat format, ImportReport& report);
Lexicon load_lexicon_any_file(const std::string& path, LexiconFormat format, ImportReport& report);

// Distribution statistics. Attitude/effect dimensions count (entry, frame)
// memberships: each entry of a frame carrying the assertion contributes one.
struct LexiconStats {
    std::uint64_t total_entries = 0;  // sum over frames of |entries|
    std::uint64_t unique_entries = 0; // distinct entry token sequences

    // Entry classes on both bases: per-membership and per-unique-entry.
    std::map<WordClass, std::uint64_t> class_total;
    std::map<WordClass, std::uint64_t> class_unique;

    std::uint64_t a0_a1_pos = 0, a0_a1_neg = 0;
    std::uint64_t author_a0_pos = 0, author_a0_neg = 0;
    std::uint64_t author_a1_pos = 0, author_a1_neg = 0;
    std::uint64_t effect_a0_pos = 0, effect_a0_neg = 0;
    std::uint64_t effect_a1_pos = 0, effect_a1_neg = 0;

    LexiconStats& operator+=(const LexiconStats& other);
    friend LexiconStats operator+(LexiconStats a, const LexiconStats& b) { return a += b; }
    bool operator==(const LexiconStats&) const = default;
};

LexiconStats lexicon_stats(const Lexicon& lexicon);

// TSV report: (dimension, sign, count) rows plus an entry-class summary block.
std::string render_stats_tsv(const LexiconStats& stats);

// Named stats cells, for reconciliation against reference counts.
std::vector<std::pair<std::string, std::uint64_t>> stats_cells(const LexiconStats& stats);

// Reference TSV: "cell<TAB>count" lines, '#' comments. Returns a per-cell
// diff table (cell, expected, actual, delta, drift%); cells absent from the
// reference are skipped.
struct StatsDiffRow {
    std::string cell;
    std::uint64_t expected = 0;
    std::uint64_t actual = 0;
    double drift = 0.0; // |actual - expected| / expected, 0 when expected == 0 and actual == 0
};

std::vector<StatsDiffRow> diff_stats(const LexiconStats& stats,
                                     const std::map<std::string, std::uint64_t>& reference);
std::map<std::string, std::uint64_t> load_stats_reference(std::istream& in);
std::string render_stats_diff_tsv(const std::vector<StatsDiffRow>& rows);

} // namespace sentiframes
