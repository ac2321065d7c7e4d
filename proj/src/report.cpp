#include "sentiframes/report.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <sstream>

#include "sentiframes/text.hpp"

namespace sentiframes {

std::int64_t share_tenths(std::uint64_t part, std::uint64_t total) {
    assert(total > 0);
    // floor(part * 1000 / total + 1/2), kept in integers
    return static_cast<std::int64_t>((2000 * part + total) / (2 * total));
}

std::string format_share(std::uint64_t part, std::uint64_t total) {
    std::int64_t tenths = share_tenths(part, total);
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

std::string format_count_share(std::uint64_t part, std::uint64_t total) {
    return std::to_string(part) + " (" + format_share(part, total) + "%)";
}

namespace {

constexpr std::array<const char*, 5> kHeader = {"A0", "A1", "total", "positive", "negative"};

std::array<std::string, 5> render_cells(const PairStats& row) {
    return {row.source, row.target, std::to_string(row.total),
            format_count_share(row.positive, row.total),
            format_count_share(row.negative, row.total)};
}

} // namespace

std::string render_pair_table_tsv(const std::vector<PairStats>& rows) {
    std::ostringstream out;
    out << kHeader[0];
    for (std::size_t c = 1; c < kHeader.size(); ++c) out << '\t' << kHeader[c];
    out << '\n';
    for (const PairStats& row : rows) {
        auto cells = render_cells(row);
        out << cells[0];
        for (std::size_t c = 1; c < cells.size(); ++c) out << '\t' << cells[c];
        out << '\n';
    }
    return out.str();
}

std::string render_pair_table_text(const std::vector<PairStats>& rows) {
    std::vector<std::array<std::string, 5>> table;
    table.push_back({kHeader[0], kHeader[1], kHeader[2], kHeader[3], kHeader[4]});
    for (const PairStats& row : rows) table.push_back(render_cells(row));

    // Column widths in code points, not bytes (Cyrillic is multi-byte).
    std::array<std::size_t, 5> widths{};
    for (const auto& cells : table) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            widths[c] = std::max(widths[c], codepoint_count(cells[c]));
        }
    }

    std::ostringstream out;
    for (const auto& cells : table) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) out << "  ";
            out << cells[c];
            if (c + 1 < cells.size()) {
                for (std::size_t pad = codepoint_count(cells[c]); pad < widths[c]; ++pad)
                    out << ' ';
            }
        }
        out << '\n';
    }
    return out.str();
}

} // namespace sentiframes
