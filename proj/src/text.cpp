#include "fundmob/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace fundmob::text {

namespace {

UChar32 ascii_substitute(UChar32 c) {
    switch (c) {
    case 0x2018: case 0x2019: case 0x201B: case 0x2032: return '\'';
    case 0x201C: case 0x201D: case 0x201F: case 0x2033: return '"';
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2212: return '-';
    case 0x0131: return 'i';  // dotless i has no decomposition
    case 0x0142: return 'l';
    case 0x0141: return 'L';
    case 0x00F8: return 'o';
    case 0x00D8: return 'O';
    case 0x0111: return 'd';
    case 0x0110: return 'D';
    default: return c;
    }
}

bool is_token_break(char c) {
    switch (c) {
    case ' ': case ',': case ';': case ':': case '(': case ')': case '[': case ']':
    case '{': case '}': case '"': case '!': case '?': case '/':
        return true;
    default:
        return false;
    }
}

void finish_token(std::string& tok, std::vector<std::string>& out) {
    std::size_t b = 0, e = tok.size();
    while (b < e && tok[b] == '.') ++b;
    while (e > b && tok[e - 1] == '.') --e;
    std::string t = tok.substr(b, e - b);
    if (t.size() > 2 && t.compare(t.size() - 2, 2, "'s") == 0) t.resize(t.size() - 2);
    while (!t.empty() && t.back() == '\'') t.pop_back();
    while (!t.empty() && t.front() == '\'') t.erase(t.begin());
    // a period can be exposed again after quote stripping
    while (!t.empty() && t.back() == '.') t.pop_back();
    if (!t.empty()) out.push_back(std::move(t));
    tok.clear();
}

}  // namespace

std::string normalize(std::string_view utf8) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkd = icu::Normalizer2::getNFKDInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFKD normalizer unavailable");

    icu::UnicodeString src = icu::UnicodeString::fromUTF8(
        icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    icu::UnicodeString mapped;
    for (int32_t i = 0; i < src.length();) {
        UChar32 c = src.char32At(i);
        mapped.append(ascii_substitute(c));
        i += U16_LENGTH(c);
    }
    icu::UnicodeString decomposed = nfkd->normalize(mapped, status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");

    icu::UnicodeString stripped;
    for (int32_t i = 0; i < decomposed.length();) {
        UChar32 c = decomposed.char32At(i);
        i += U16_LENGTH(c);
        if (u_charType(c) == U_NON_SPACING_MARK) continue;
        stripped.append(u_isUWhiteSpace(c) ? UChar32{' '} : c);
    }
    stripped.foldCase();

    std::string folded;
    stripped.toUTF8String(folded);

    std::string out;
    out.reserve(folded.size());
    bool pending_space = false;
    for (char c : folded) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

std::vector<std::string> tokens_of_normalized(std::string_view normalized) {
    std::vector<std::string> out;
    std::string tok;
    for (char c : normalized) {
        if (is_token_break(c)) {
            finish_token(tok, out);
        } else {
            tok.push_back(c);
        }
    }
    finish_token(tok, out);
    return out;
}

std::vector<std::string> comparison_tokens(std::string_view utf8) {
    return tokens_of_normalized(normalize(utf8));
}

bool contains_token_run(const std::vector<std::string>& haystack,
                        const std::vector<std::string>& needle) {
    if (needle.empty()) return false;
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
           haystack.end();
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace fundmob::text
