#pragma once

#include "fundmob/country.hpp"

#include <chrono>
#include <compare>
#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fundmob {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD).
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);

enum class DocType { Article, Review, Other };

std::optional<DocType> parse_doc_type(std::string_view text);
std::string_view to_string(DocType type);

struct Affiliation {
    std::string org_name;
    Country country;

    bool operator==(const Affiliation&) const = default;
};

struct Authorship {
    int position = 0;  // 1-based
    std::string full_name;
    std::string last_name;
    std::optional<std::string> first_name;
    std::optional<std::string> initials;
    std::optional<std::string> email;
    std::vector<Affiliation> affiliations;

    bool operator==(const Authorship&) const = default;
};

struct FieldWeight {
    std::string field_id;
    double weight = 0.0;

    bool operator==(const FieldWeight&) const = default;
};

struct PublicationRecord {
    std::string pub_id;
    std::string title;
    int pub_year = 0;
    DocType doc_type = DocType::Article;
    std::optional<std::string> doi;
    std::optional<Date> doi_created_date;
    std::optional<std::string> acknowledgment_text;
    std::vector<std::string> funding_orgs;
    std::vector<Authorship> authors;
    std::vector<FieldWeight> field_weights;
    // Optional extensions to the base schema.
    std::optional<std::string> index_tag;       // e.g. "SCIE", "SSCI"
    std::vector<std::string> cited_pub_ids;     // feeds the self-citation feature

    bool operator==(const PublicationRecord&) const = default;

    const Authorship* author_at(int position) const;
};

/// Thrown by validate_record; message names the violated invariant.
class RecordError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checks every record invariant. Authors must already be in position order.
void validate_record(const PublicationRecord& record);

struct ParseError {
    std::size_t line = 0;  // 1-based
    std::string message;
};

struct ParseResult {
    std::vector<PublicationRecord> records;
    std::vector<ParseError> errors;
};

/// Reads one JSON record per line. Blank lines are skipped; malformed lines
/// are reported with their line number. Use `require_records` to enforce the
/// "fatal only if zero records parse" rule.
ParseResult parse_corpus(std::istream& in, const CountryTable& countries);

/// Throws std::runtime_error when every non-blank line failed.
void require_records(const ParseResult& result);

/// Single-line JSON serialization using the same schema parse_corpus reads.
std::string serialize_record(const PublicationRecord& record);

/// Keeps Article and Review records in input order.
std::vector<PublicationRecord> filter_documents(const std::vector<PublicationRecord>& records);

enum class DateSource { DoiCreated, YearFallback };
std::string_view to_string(DateSource source);

struct PubDate {
    Date date;
    DateSource source = DateSource::YearFallback;

    bool operator==(const PubDate&) const = default;
};

/// DOI created date when present, otherwise July 1 of pub_year.
PubDate resolve_pub_date(const PublicationRecord& record);

}  // namespace fundmob
