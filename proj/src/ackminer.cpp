#include "fundmob/ackminer.hpp"

#include "fundmob/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <stdexcept>

namespace fundmob {

namespace {

bool is_word_byte(char c) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }

// End offset of `variant` matched at `pos`, or npos.
std::size_t match_variant_at(std::string_view text, std::size_t pos, std::string_view variant) {
    std::size_t i = pos;
    for (std::size_t k = 0; k < variant.size(); ++k) {
        if (is_space(variant[k])) {
            while (k + 1 < variant.size() && is_space(variant[k + 1])) ++k;
            if (i >= text.size() || !is_space(text[i])) return std::string_view::npos;
            while (i < text.size() && is_space(text[i])) ++i;
            continue;
        }
        if (i >= text.size()) return std::string_view::npos;
        if (std::tolower(static_cast<unsigned char>(text[i])) !=
            std::tolower(static_cast<unsigned char>(variant[k]))) {
            return std::string_view::npos;
        }
        ++i;
    }
    if (is_word_byte(variant.back()) && i < text.size() && is_word_byte(text[i])) {
        return std::string_view::npos;
    }
    return i;
}

// Tokens that end with '.' but do not end a sentence.
const std::set<std::string>& abbreviations() {
    static const std::set<std::string> kAbbrev = {
        "al",   "approx", "ca",  "cf",   "co",  "corp", "dept", "dr",   "e.g", "eq",  "eqs",
        "fig",  "figs",   "i.e", "inc",  "jr",  "ltd",  "mr",   "mrs",  "ms",  "no",  "nos",
        "nr",   "ph.d",   "pp",  "prof", "ref", "refs", "resp", "sr",   "st",  "univ", "vol",
        "vs",   "viz"};
    return kAbbrev;
}

// "L", "F.L" (the text before the final period).
bool is_dotted_initials(std::string_view word) {
    if (word.empty()) return false;
    bool expect_letter = true;
    for (char c : word) {
        if (expect_letter) {
            if (!std::isalpha(static_cast<unsigned char>(c))) return false;
            expect_letter = false;
        } else if (c == '.') {
            expect_letter = true;
        } else {
            return false;
        }
    }
    return true;
}

// Also accepts hyphenated initials such as "Z.-C".
bool is_initials_word(std::string_view word) {
    std::string w;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] == '-' && i > 0 && word[i - 1] == '.') continue;
        w.push_back(word[i]);
    }
    return is_dotted_initials(w);
}

std::string_view word_before(std::string_view text, std::size_t period) {
    std::size_t b = period;
    while (b > 0 && !is_space(text[b - 1])) --b;
    std::string_view w = text.substr(b, period - b);
    while (!w.empty() && (w.front() == '(' || w.front() == '[' || w.front() == '"' || w.front() == '\'')) {
        w.remove_prefix(1);
    }
    return w;
}

// Next whitespace-delimited word starting at or after `pos`.
std::string_view next_word(std::string_view text, std::size_t pos, std::size_t* end_out = nullptr) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    std::size_t e = pos;
    while (e < text.size() && !is_space(text[e])) ++e;
    if (end_out) *end_out = e;
    return text.substr(pos, e - pos);
}

std::string_view strip_open_punct(std::string_view w) {
    while (!w.empty() && (w.front() == '(' || w.front() == '[' || w.front() == '"' || w.front() == '\'')) {
        w.remove_prefix(1);
    }
    return w;
}

// A lone capital letter ("L", "L.", "L,") other than the words "A" and "I".
bool is_lone_capital(std::string_view w) {
    while (!w.empty() && (w.back() == '.' || w.back() == ',')) w.remove_suffix(1);
    return w.size() == 1 && is_upper(w[0]) && w[0] != 'A' && w[0] != 'I';
}

bool starts_upper(std::string_view w) {
    w = strip_open_punct(w);
    return !w.empty() && is_upper(w[0]);
}

// The period at `period` is followed by whitespace and an uppercase/digit.
// Decide whether the word before it is an abbreviation or initial.
bool period_is_guarded(std::string_view text, std::size_t period) {
    std::string_view before = word_before(text, period);
    if (before.empty()) return false;
    if (abbreviations().count(text::ascii_lower(before))) return true;

    std::size_t after_end = 0;
    std::string_view next = next_word(text, period + 1, &after_end);

    // "Chen. L is ...": surname, period, lone initial. A dotted initial
    // ("Chen. L. is") only counts when a lower-case word follows it;
    // otherwise it opens a name ("(CSC). L. Chen thanks").
    if (is_lone_capital(next)) {
        if (next.back() != '.') return true;
        std::string_view third = next_word(text, after_end);
        if (!third.empty() && !starts_upper(third)) return true;
    }

    if (is_initials_word(before)) {
        // initial followed by another initial: "A. B. Smith"
        std::string_view n = strip_open_punct(next);
        if (n.size() >= 2 && n.back() == '.' && is_initials_word(n.substr(0, n.size() - 1))) return true;
        // initial followed by a single capitalized surname: "L. Chen is"
        std::string_view third = next_word(text, after_end);
        return !third.empty() && !starts_upper(third);
    }
    return false;
}

bool opens_sentence(char c) { return is_upper(c) || std::isdigit(static_cast<unsigned char>(c)); }

std::string fold_for_dedup(std::string_view s) { return text::ascii_lower(text::trim(s)); }

}  // namespace

// ---------------------------------------------------------------- lexicon

FunderLexicon::FunderLexicon(std::vector<std::string> variants) : variants_(std::move(variants)) {
    if (variants_.empty()) throw std::invalid_argument("funder lexicon is empty");
    std::set<std::string> seen;
    for (auto& v : variants_) {
        v = text::trim(v);
        if (v.empty()) throw std::invalid_argument("funder lexicon contains an empty variant");
        if (!seen.insert(fold_for_dedup(v)).second) {
            throw std::invalid_argument("duplicate funder variant \"" + v + "\"");
        }
    }
}

FunderLexicon FunderLexicon::load(std::istream& in) {
    std::vector<std::string> variants;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = text::trim(line);
        if (!t.empty()) variants.push_back(std::move(t));
    }
    return FunderLexicon(std::move(variants));
}

FunderLexicon FunderLexicon::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open funder lexicon: " + path.string());
    return load(in);
}

// ---------------------------------------------------------------- detection

std::vector<FunderMention> detect_funder_mention(std::string_view text, const FunderLexicon& lexicon) {
    std::vector<const std::string*> ordered;
    for (const auto& v : lexicon.variants()) ordered.push_back(&v);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const std::string* a, const std::string* b) { return a->size() > b->size(); });

    std::vector<FunderMention> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const bool at_boundary = i == 0 || !is_word_byte(text[i - 1]);
        bool matched = false;
        for (const std::string* v : ordered) {
            if (is_word_byte(v->front()) && !at_boundary) continue;
            std::size_t end = match_variant_at(text, i, *v);
            if (end == std::string_view::npos) continue;
            out.push_back({*v, {i, end}});
            i = end;
            matched = true;
            break;
        }
        if (!matched) ++i;
    }
    return out;
}

bool acknowledges_funder(const PublicationRecord& record, const FunderLexicon& lexicon) {
    for (const auto& org : record.funding_orgs) {
        if (!detect_funder_mention(org, lexicon).empty()) return true;
    }
    return record.acknowledgment_text && !detect_funder_mention(*record.acknowledgment_text, lexicon).empty();
}

// ---------------------------------------------------------------- sentences

std::vector<TextSpan> split_sentences(std::string_view text) {
    std::vector<TextSpan> out;
    auto emit = [&](std::size_t b, std::size_t e) {
        while (b < e && is_space(text[b])) ++b;
        while (e > b && is_space(text[e - 1])) --e;
        if (b < e) out.push_back({b, e});
    };

    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            std::size_t j = i + 1;
            while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
            if (j < text.size() && text[j] == '\n') {
                emit(start, i);
                start = j;
                i = j;
                continue;
            }
        }
        if (c == '.' || c == '!' || c == '?') {
            std::size_t close = i + 1;
            while (close < text.size() && (text[close] == ')' || text[close] == ']' || text[close] == '"' ||
                                           text[close] == '\'')) {
                ++close;
            }
            std::size_t j = close;
            if (j < text.size() && is_space(text[j])) {
                while (j < text.size() && is_space(text[j])) ++j;
                std::size_t k = j;
                while (k < text.size() && (text[k] == '(' || text[k] == '[' || text[k] == '"' || text[k] == '\'')) {
                    ++k;
                }
                if (k < text.size() && opens_sentence(text[k]) && !(c == '.' && period_is_guarded(text, i))) {
                    emit(start, close);
                    start = j;
                    i = j;
                    continue;
                }
            }
        }
        ++i;
    }
    emit(start, text.size());
    return out;
}

std::vector<FundingSentence> extract_funding_sentences(std::string_view pub_id, std::string_view ack_text,
                                                       const FunderLexicon& lexicon) {
    std::vector<FundingSentence> out;
    for (const TextSpan& span : split_sentences(ack_text)) {
        std::string_view sentence = ack_text.substr(span.start, span.end - span.start);
        if (detect_funder_mention(sentence, lexicon).empty()) continue;
        out.push_back({std::string(pub_id), std::string(sentence), span});
    }
    return out;
}

// ---------------------------------------------------------------- name variants

std::string_view ordinal_word(int n) {
    static constexpr std::array<std::string_view, 10> kWords = {
        "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth"};
    if (n < 1 || n > 10) return {};
    return kWords[static_cast<std::size_t>(n - 1)];
}

std::string ordinal_numeric(int n) {
    const int mod100 = n % 100;
    const char* suffix = "th";
    if (mod100 < 11 || mod100 > 13) {
        switch (n % 10) {
        case 1: suffix = "st"; break;
        case 2: suffix = "nd"; break;
        case 3: suffix = "rd"; break;
        default: break;
        }
    }
    return std::to_string(n) + suffix;
}

namespace {

// Two-letter acronyms that are common English words are never generated
// undotted.
bool is_stopword_acronym(const std::string& s) {
    static const std::set<std::string> kStop = {
        "a",  "i",  "al", "am", "an", "as",  "at",  "be",  "by",  "do",  "go",  "he",  "if",  "in",
        "is", "it", "me", "my", "no", "of",  "on",  "or",  "so",  "to",  "up",  "us",  "we",  "and",
        "are", "but", "can", "did", "for", "had", "has", "her", "him", "his", "its", "not", "our",
        "she", "the", "was", "who", "you"};
    return kStop.count(s) > 0;
}

std::vector<std::string> split_given_parts(const std::string& normalized) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : normalized) {
        if (c == '-' || c == ' ' || c == '.') {
            if (!cur.empty()) parts.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) parts.push_back(std::move(cur));
    return parts;
}

// First code point of a UTF-8 string.
std::string first_char(const std::string& s) {
    if (s.empty()) return {};
    std::size_t n = 1;
    while (n < s.size() && (static_cast<unsigned char>(s[n]) & 0xC0) == 0x80) ++n;
    return s.substr(0, n);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep, std::string_view suffix = {}) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
        out += suffix;
    }
    return out;
}

}  // namespace

NameVariantSet generate_name_variants(const Authorship& author, int position) {
    NameVariantSet set;
    set.author_position = position;

    const std::string last = text::normalize(author.last_name);
    std::vector<std::string> inits;
    bool hyphenated = false;

    if (author.first_name) {
        const std::string given = text::normalize(*author.first_name);
        const auto parts = split_given_parts(given);
        hyphenated = given.find('-') != std::string::npos;
        if (!parts.empty()) {
            std::set<std::string> given_forms = {join(parts, ""), join(parts, " ")};
            if (hyphenated) given_forms.insert(join(parts, "-"));
            for (const auto& g : given_forms) {
                set.variants.insert(g + " " + last);
                set.variants.insert(last + " " + g);
                set.variants.insert(last + ", " + g);
            }
            for (const auto& p : parts) inits.push_back(first_char(p));
        }
    } else if (author.initials) {
        const std::string raw = text::normalize(*author.initials);
        hyphenated = raw.find('-') != std::string::npos;
        for (const auto& piece : split_given_parts(raw)) {
            for (std::size_t i = 0; i < piece.size();) {
                std::string ch = first_char(piece.substr(i));
                inits.push_back(ch);
                i += ch.size();
            }
        }
    }

    if (!last.empty() && !inits.empty()) {
        const std::string joined = join(inits, "");
        const std::string dotted = join(inits, ".", "") + ".";
        set.variants.insert(last + " " + joined);   // "chen l", "li xh"
        set.variants.insert(last + ", " + joined);  // "chen, l"
        set.variants.insert(last + ". " + joined);  // "chen. l"
        set.variants.insert(last + " " + dotted);   // "chen l."
        set.variants.insert(last + ", " + dotted);
        set.variants.insert(dotted + " " + last);   // "l. chen", "x.h. li"
        set.variants.insert(joined + " " + last);   // "l chen"
        if (inits.size() > 1) {
            const std::string hyph = join(inits, "-");
            set.variants.insert(last + " " + hyph);        // "li x-h"
            set.variants.insert(last + ", " + hyph);
            set.variants.insert(hyph + " " + last);
            set.variants.insert(join(inits, " ", ".") + " " + last);  // "x. h. li"
            if (hyphenated) {
                const std::string dot_hyph = join(inits, ".-") + ".";  // "z.-c."
                set.variants.insert(dot_hyph + " " + last);
                set.variants.insert(last + ", " + dot_hyph);
                set.variants.insert(last + " " + dot_hyph);
            }
        }

        const std::string s = first_char(last);
        set.variants.insert(s + "." + dotted);   // "c.l."
        set.variants.insert(dotted + s + ".");   // "l.c."
        const std::string acronym = s + joined;  // "cl"
        if (!is_stopword_acronym(acronym)) set.variants.insert(acronym);
    }

    if (auto word = ordinal_word(position); !word.empty()) {
        set.ordinal_phrases.insert("the " + std::string(word) + " author");
    }
    set.ordinal_phrases.insert("the " + ordinal_numeric(position) + " author");
    return set;
}

std::string_view to_string(MatchKind kind) {
    return kind == MatchKind::NameMatch ? "NameMatch" : "OrdinalMatch";
}

// ---------------------------------------------------------------- matching

std::vector<FundedAuthorship> match_funded_authors(const PublicationRecord& record,
                                                   const std::vector<FundingSentence>& sentences) {
    std::vector<std::vector<std::string>> sentence_tokens;
    sentence_tokens.reserve(sentences.size());
    for (const auto& s : sentences) sentence_tokens.push_back(text::comparison_tokens(s.text));

    auto better = [](const std::string& candidate, const std::string& incumbent) {
        if (incumbent.empty()) return true;
        if (candidate.size() != incumbent.size()) return candidate.size() > incumbent.size();
        return candidate < incumbent;
    };

    std::vector<FundedAuthorship> out;
    for (const auto& author : record.authors) {
        const NameVariantSet names = generate_name_variants(author, author.position);

        std::string best;
        std::size_t best_sentence = 0;
        MatchKind kind = MatchKind::NameMatch;

        auto scan = [&](const std::set<std::string>& forms) {
            for (const auto& form : forms) {
                const auto needle = text::tokens_of_normalized(form);
                for (std::size_t si = 0; si < sentences.size(); ++si) {
                    if (!text::contains_token_run(sentence_tokens[si], needle)) continue;
                    if (better(form, best)) {
                        best = form;
                        best_sentence = si;
                    }
                    break;  // first sentence holding this form
                }
            }
        };

        scan(names.variants);
        if (best.empty()) {
            kind = MatchKind::OrdinalMatch;
            scan(names.ordinal_phrases);
        }
        if (best.empty()) continue;
        out.push_back({record.pub_id, author.position, best, sentences[best_sentence].span, kind});
    }
    return out;
}

}  // namespace fundmob
