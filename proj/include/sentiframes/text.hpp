#pragma once

// UTF-8 text handling: lowercasing, whitespace/punctuation tokenization,
// lemma and alias lookup tables. Cyrillic and Latin are treated uniformly.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sentiframes {

// Lowercases ASCII A-Z and Cyrillic А-Я (incl. Ё). Other code points pass through.
std::string to_lower_utf8(std::string_view text);
bool is_lower_utf8(std::string_view text);

// Number of Unicode code points in a valid UTF-8 string.
std::size_t codepoint_count(std::string_view text);

struct Token {
    std::string surface;
    std::string lemma;        // lowercased surface until a lemma table is applied
    std::size_t index = 0;
    std::size_t char_begin = 0; // code-point offset into the source text
    std::size_t char_end = 0;   // exclusive

    bool operator==(const Token&) const = default;
};

struct TokenStream {
    std::vector<Token> tokens;

    bool empty() const { return tokens.empty(); }
    std::size_t size() const { return tokens.size(); }
};

// Splits on whitespace; leading/trailing punctuation of each chunk becomes
// separate tokens. Token indices are contiguous from 0.
TokenStream tokenize(std::string_view text);

// surface (lowercased) -> lemma
using LemmaTable = std::unordered_map<std::string, std::string>;

// Two-column TSV, one pair per line, '#' starts a comment line.
LemmaTable load_lemma_table(std::istream& in);
LemmaTable load_lemma_table_file(const std::string& path);

void apply_lemma_table(TokenStream& stream, const LemmaTable& table);
std::string lemma_of(std::string_view token, const LemmaTable* table);

// surface (canonicalized) -> canonical entity string
using AliasTable = std::unordered_map<std::string, std::string>;

AliasTable load_alias_table(std::istream& in);
AliasTable load_alias_table_file(const std::string& path);

std::string collapse_whitespace(std::string_view text);

// Lowercase + collapse internal whitespace, then map through the alias table.
std::string canonical_entity(std::string_view surface, const AliasTable* aliases = nullptr);

} // namespace sentiframes
