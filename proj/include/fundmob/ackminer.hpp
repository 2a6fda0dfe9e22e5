#pragma once

#include "fundmob/corpus.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fundmob {

/// Half-open byte range [start, end) into the acknowledgment text.
struct TextSpan {
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const TextSpan&) const = default;
};

/// Surface forms of the target funder's name. The canonical name is always
/// the first variant.
class FunderLexicon {
public:
    /// Throws std::invalid_argument on an empty list, an empty variant or a
    /// case-insensitive duplicate.
    explicit FunderLexicon(std::vector<std::string> variants);

    /// First non-blank line is canonical; every non-blank line is a variant.
    static FunderLexicon load(std::istream& in);
    static FunderLexicon load_file(const std::filesystem::path& path);

    const std::string& canonical_name() const { return variants_.front(); }
    const std::vector<std::string>& variants() const { return variants_; }

private:
    std::vector<std::string> variants_;
};

struct FunderMention {
    std::string variant;  // lexicon spelling
    TextSpan span;

    bool operator==(const FunderMention&) const = default;
};

/// Case-insensitive, word-bounded occurrences of lexicon variants, scanned
/// left to right. Where variants overlap at one position the longest wins
/// and scanning resumes after it. Whitespace inside a variant matches any
/// whitespace run.
std::vector<FunderMention> detect_funder_mention(std::string_view text, const FunderLexicon& lexicon);

/// Record-level acknowledgment test: a funding_orgs entry or the
/// acknowledgment text mentions the funder.
bool acknowledges_funder(const PublicationRecord& record, const FunderLexicon& lexicon);

/// Sentence boundaries as half-open spans, whitespace-trimmed.
std::vector<TextSpan> split_sentences(std::string_view text);

struct FundingSentence {
    std::string pub_id;
    std::string text;
    TextSpan span;

    bool operator==(const FundingSentence&) const = default;
};

std::vector<FundingSentence> extract_funding_sentences(std::string_view pub_id, std::string_view ack_text,
                                                       const FunderLexicon& lexicon);

struct NameVariantSet {
    int author_position = 0;
    std::set<std::string> variants;         // normalized name forms
    std::set<std::string> ordinal_phrases;  // "the second author", "the 2nd author"
};

/// "first" ... "tenth"; empty beyond ten.
std::string_view ordinal_word(int n);
/// "1st", "2nd", "3rd", "11th", "22nd", ...
std::string ordinal_numeric(int n);

NameVariantSet generate_name_variants(const Authorship& author, int position);

enum class MatchKind { NameMatch, OrdinalMatch };
std::string_view to_string(MatchKind kind);

struct FundedAuthorship {
    std::string pub_id;
    int author_position = 0;
    std::string evidence;  // matched variant or ordinal phrase
    TextSpan sentence_span;
    MatchKind match_kind = MatchKind::NameMatch;

    bool operator==(const FundedAuthorship&) const = default;
};

/// One entry per author whose name variant or ordinal phrase occurs in a
/// funding sentence, sorted by position. Name evidence beats ordinal
/// evidence; among names the longest variant wins, ties broken
/// lexicographically; the span is that of the first sentence holding it.
std::vector<FundedAuthorship> match_funded_authors(const PublicationRecord& record,
                                                   const std::vector<FundingSentence>& sentences);

}  // namespace fundmob
