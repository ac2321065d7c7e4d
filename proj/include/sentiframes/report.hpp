#pragma once

// Ranked pair-attitude tables, rendered as TSV and as an aligned text table.
// Percentage shares use one decimal with half-up rounding.

#include <cstdint>
#include <string>
#include <vector>

namespace sentiframes {

struct PairStats {
    std::string source; // A0
    std::string target; // A1
    std::uint64_t total = 0;
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;

    bool operator==(const PairStats&) const = default;
};

// Tenths of a percent, half-up: share_tenths(19, 245) == 78 (7.8%).
// Exact integer arithmetic; total must be > 0.
std::int64_t share_tenths(std::uint64_t part, std::uint64_t total);

// "7.8", "92.2", "100.0"
std::string format_share(std::uint64_t part, std::uint64_t total);

// "19 (7.8%)"
std::string format_count_share(std::uint64_t part, std::uint64_t total);

// Columns: A0, A1, total, positive count+share, negative count+share.
std::string render_pair_table_tsv(const std::vector<PairStats>& rows);
std::string render_pair_table_text(const std::vector<PairStats>& rows);

} // namespace sentiframes
