#include "sentiframes/text.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "sentiframes/errors.hpp"

namespace sentiframes {

namespace {

// Decodes one code point starting at byte i; advances i past it.
// Invalid sequences are consumed one byte at a time.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return b0;
    }
    if (i + len > s.size()) {
        ++i;
        return b0;
    }
    for (std::size_t k = 1; k < len; ++k) {
        unsigned char bk = static_cast<unsigned char>(s[i + k]);
        if ((bk & 0xC0) != 0x80) {
            ++i;
            return b0;
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    i += len;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

char32_t lower_codepoint(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20; // А-Я -> а-я
    if (cp == 0x0401) return 0x0451;                    // Ё -> ё
    return cp;
}

bool is_space_cp(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
           cp == U'\v' || cp == 0x00A0;
}

bool is_punct_cp(char32_t cp) {
    if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
    switch (cp) {
        case 0x00AB: // «
        case 0x00BB: // »
        case 0x00B7: // ·
        case 0x2018: // '
        case 0x2019: // '
        case 0x201C: // "
        case 0x201D: // "
        case 0x201E: // „
        case 0x2013: // –
        case 0x2014: // —
        case 0x2015: // ―
        case 0x2026: // …
        case 0x2212: // −
            return true;
        default:
            return false;
    }
}

struct Codepoint {
    char32_t cp;
    std::size_t byte_begin;
    std::size_t byte_end;
};

std::vector<Codepoint> decode(std::string_view s) {
    std::vector<Codepoint> cps;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t begin = i;
        char32_t cp = next_codepoint(s, i);
        cps.push_back({cp, begin, i});
    }
    return cps;
}

} // namespace

std::string to_lower_utf8(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        append_utf8(out, lower_codepoint(next_codepoint(text, i)));
    }
    return out;
}

bool is_lower_utf8(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = next_codepoint(text, i);
        if (lower_codepoint(cp) != cp) return false;
    }
    return true;
}

std::size_t codepoint_count(std::string_view text) {
    std::size_t i = 0;
    std::size_t n = 0;
    while (i < text.size()) {
        next_codepoint(text, i);
        ++n;
    }
    return n;
}

TokenStream tokenize(std::string_view text) {
    TokenStream stream;
    const std::vector<Codepoint> cps = decode(text);

    auto emit = [&](std::size_t cp_begin, std::size_t cp_end) {
        std::string surface;
        for (std::size_t k = cp_begin; k < cp_end; ++k) {
            surface.append(text.substr(cps[k].byte_begin, cps[k].byte_end - cps[k].byte_begin));
        }
        Token tok;
        tok.lemma = to_lower_utf8(surface);
        tok.surface = std::move(surface);
        tok.index = stream.tokens.size();
        tok.char_begin = cp_begin;
        tok.char_end = cp_end;
        stream.tokens.push_back(std::move(tok));
    };

    std::size_t i = 0;
    const std::size_t n = cps.size();
    while (i < n) {
        if (is_space_cp(cps[i].cp)) {
            ++i;
            continue;
        }
        std::size_t chunk_end = i;
        while (chunk_end < n && !is_space_cp(cps[chunk_end].cp)) ++chunk_end;

        std::size_t core_begin = i;
        while (core_begin < chunk_end && is_punct_cp(cps[core_begin].cp)) ++core_begin;
        std::size_t core_end = chunk_end;
        while (core_end > core_begin && is_punct_cp(cps[core_end - 1].cp)) --core_end;

        for (std::size_t k = i; k < core_begin; ++k) emit(k, k + 1);
        if (core_begin < core_end) emit(core_begin, core_end);
        for (std::size_t k = core_end; k < chunk_end; ++k) emit(k, k + 1);

        i = chunk_end;
    }
    return stream;
}

namespace {

std::unordered_map<std::string, std::string> load_two_column_tsv(std::istream& in,
                                                                 const char* what) {
    std::unordered_map<std::string, std::string> table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw ParseError(std::string(what) + ": line " + std::to_string(lineno) +
                             ": expected two tab-separated columns");
        }
        std::string key = to_lower_utf8(std::string_view(line).substr(0, tab));
        std::string value = to_lower_utf8(std::string_view(line).substr(tab + 1));
        table[std::move(key)] = std::move(value);
    }
    return table;
}

} // namespace

LemmaTable load_lemma_table(std::istream& in) {
    return load_two_column_tsv(in, "lemma table");
}

LemmaTable load_lemma_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lemma table: " + path);
    return load_lemma_table(in);
}

void apply_lemma_table(TokenStream& stream, const LemmaTable& table) {
    for (Token& tok : stream.tokens) {
        auto it = table.find(tok.lemma);
        if (it != table.end()) tok.lemma = it->second;
    }
}

std::string lemma_of(std::string_view token, const LemmaTable* table) {
    std::string lowered = to_lower_utf8(token);
    if (table != nullptr) {
        auto it = table->find(lowered);
        if (it != table->end()) return it->second;
    }
    return lowered;
}

AliasTable load_alias_table(std::istream& in) {
    AliasTable raw = load_two_column_tsv(in, "alias table");
    // Keys are matched against canonicalized surfaces, so canonicalize them too.
    AliasTable table;
    for (auto& [k, v] : raw) table[collapse_whitespace(k)] = collapse_whitespace(v);
    return table;
}

AliasTable load_alias_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open alias table: " + path);
    return load_alias_table(in);
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    bool pending_space = false;
    bool seen_any = false;
    while (i < text.size()) {
        std::size_t begin = i;
        char32_t cp = next_codepoint(text, i);
        if (is_space_cp(cp)) {
            pending_space = seen_any;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.append(text.substr(begin, i - begin));
        seen_any = true;
    }
    return out;
}

std::string canonical_entity(std::string_view surface, const AliasTable* aliases) {
    std::string canon = collapse_whitespace(to_lower_utf8(surface));
    if (aliases != nullptr) {
        auto it = aliases->find(canon);
        if (it != aliases->end()) return it->second;
    }
    return canon;
}

} // namespace sentiframes
