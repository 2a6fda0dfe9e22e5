#include "fundmob/corpus.hpp"

#include "fundmob/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fundmob {

using nlohmann::json;

namespace {

constexpr double kWeightSumTolerance = 1e-9;

std::optional<std::string> optional_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw RecordError(std::string("\"") + key + "\" must be a string");
    std::string value = it->get<std::string>();
    if (text::trim(value).empty()) return std::nullopt;
    return value;
}

std::string required_string(const json& obj, const char* key) {
    auto value = optional_string(obj, key);
    if (!value) throw RecordError(std::string("missing \"") + key + "\"");
    return *value;
}

json optional_to_json(const std::optional<std::string>& value) {
    return value ? json(*value) : json(nullptr);
}

Authorship parse_author(const json& obj, const CountryTable& countries) {
    if (!obj.is_object()) throw RecordError("author entry is not an object");
    Authorship a;
    auto pos = obj.find("position");
    if (pos == obj.end() || !pos->is_number_integer()) {
        throw RecordError("author missing integer \"position\"");
    }
    a.position = pos->get<int>();
    a.last_name = required_string(obj, "last_name");
    a.first_name = optional_string(obj, "first_name");
    a.initials = optional_string(obj, "initials");
    a.email = optional_string(obj, "email");
    if (auto full = optional_string(obj, "full_name")) {
        a.full_name = *full;
    } else {
        a.full_name = a.last_name;
        if (a.first_name) {
            a.full_name += ", " + *a.first_name;
        } else if (a.initials) {
            a.full_name += ", " + *a.initials;
        }
    }
    if (auto affs = obj.find("affiliations"); affs != obj.end() && !affs->is_null()) {
        if (!affs->is_array()) throw RecordError("\"affiliations\" must be an array");
        for (const auto& af : *affs) {
            if (!af.is_object()) throw RecordError("affiliation entry is not an object");
            Affiliation aff;
            aff.org_name = optional_string(af, "org_name").value_or("");
            if (auto raw = optional_string(af, "country")) aff.country = countries.normalize(*raw);
            a.affiliations.push_back(std::move(aff));
        }
    }
    return a;
}

PublicationRecord parse_record(const json& obj, const CountryTable& countries) {
    if (!obj.is_object()) throw RecordError("line is not a JSON object");
    PublicationRecord r;
    r.pub_id = required_string(obj, "pub_id");
    r.title = optional_string(obj, "title").value_or("");

    auto year = obj.find("pub_year");
    if (year == obj.end() || !year->is_number_integer()) throw RecordError("missing integer \"pub_year\"");
    r.pub_year = year->get<int>();

    auto doc = optional_string(obj, "doc_type");
    if (!doc) throw RecordError("missing \"doc_type\"");
    auto type = parse_doc_type(*doc);
    if (!type) throw RecordError("unknown doc_type \"" + *doc + "\"");
    r.doc_type = *type;

    r.doi = optional_string(obj, "doi");
    if (auto d = optional_string(obj, "doi_created_date")) {
        r.doi_created_date = parse_iso_date(*d);
        if (!r.doi_created_date) throw RecordError("invalid doi_created_date \"" + *d + "\"");
    }
    r.acknowledgment_text = optional_string(obj, "acknowledgment_text");
    r.index_tag = optional_string(obj, "index_tag");

    auto string_array = [&](const char* key, std::vector<std::string>& out) {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) return;
        if (!it->is_array()) throw RecordError(std::string("\"") + key + "\" must be an array");
        for (const auto& v : *it) {
            if (!v.is_string()) throw RecordError(std::string("\"") + key + "\" entries must be strings");
            out.push_back(v.get<std::string>());
        }
    };
    string_array("funding_orgs", r.funding_orgs);
    string_array("cited_pub_ids", r.cited_pub_ids);

    auto authors = obj.find("authors");
    if (authors == obj.end() || authors->is_null()) throw RecordError("missing \"authors\"");
    if (!authors->is_array()) throw RecordError("\"authors\" must be an array");
    for (const auto& a : *authors) r.authors.push_back(parse_author(a, countries));
    std::stable_sort(r.authors.begin(), r.authors.end(),
                     [](const Authorship& x, const Authorship& y) { return x.position < y.position; });

    if (auto fw = obj.find("field_weights"); fw != obj.end() && !fw->is_null()) {
        if (!fw->is_array()) throw RecordError("\"field_weights\" must be an array");
        for (const auto& w : *fw) {
            if (!w.is_object()) throw RecordError("field weight entry is not an object");
            FieldWeight f;
            f.field_id = required_string(w, "field_id");
            auto wv = w.find("weight");
            if (wv == w.end() || !wv->is_number()) throw RecordError("field weight missing numeric \"weight\"");
            f.weight = wv->get<double>();
            r.field_weights.push_back(std::move(f));
        }
    }

    validate_record(r);
    return r;
}

}  // namespace

std::optional<Date> parse_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
    }
    auto num = [&](std::size_t b, std::size_t n) {
        int v = 0;
        for (std::size_t i = b; i < b + n; ++i) v = v * 10 + (s[i] - '0');
        return v;
    };
    Date d{std::chrono::year{num(0, 4)}, std::chrono::month{static_cast<unsigned>(num(5, 2))},
           std::chrono::day{static_cast<unsigned>(num(8, 2))}};
    if (!d.ok()) return std::nullopt;
    return d;
}

std::string format_iso_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

std::optional<DocType> parse_doc_type(std::string_view s) {
    std::string t = text::ascii_lower(text::trim(s));
    if (t == "article") return DocType::Article;
    if (t == "review") return DocType::Review;
    if (t == "other") return DocType::Other;
    return std::nullopt;
}

std::string_view to_string(DocType type) {
    switch (type) {
    case DocType::Article: return "Article";
    case DocType::Review: return "Review";
    case DocType::Other: return "Other";
    }
    return "Other";
}

std::string_view to_string(DateSource source) {
    return source == DateSource::DoiCreated ? "DoiCreated" : "YearFallback";
}

const Authorship* PublicationRecord::author_at(int position) const {
    if (position < 1 || position > static_cast<int>(authors.size())) return nullptr;
    return &authors[static_cast<std::size_t>(position - 1)];
}

void validate_record(const PublicationRecord& r) {
    if (text::trim(r.pub_id).empty()) throw RecordError("empty pub_id");
    if (r.pub_year < 1900 || r.pub_year > 2100) {
        throw RecordError("implausible pub_year " + std::to_string(r.pub_year));
    }
    if (r.authors.empty()) throw RecordError("empty authors");
    for (std::size_t i = 0; i < r.authors.size(); ++i) {
        const int expected = static_cast<int>(i) + 1;
        const int got = r.authors[i].position;
        if (got < expected) {
            throw RecordError("duplicate or non-positive author position " + std::to_string(got));
        }
        if (got > expected) {
            throw RecordError("position gap: expected author position " + std::to_string(expected) +
                              ", found " + std::to_string(got));
        }
        if (text::normalize(r.authors[i].last_name).empty()) {
            throw RecordError("empty last_name for author position " + std::to_string(got));
        }
    }
    if (!r.field_weights.empty()) {
        double sum = 0.0;
        for (const auto& fw : r.field_weights) {
            if (!(fw.weight > 0.0 && fw.weight <= 1.0)) {
                throw RecordError("field weight for \"" + fw.field_id + "\" outside (0,1]");
            }
            sum += fw.weight;
        }
        if (std::abs(sum - 1.0) > kWeightSumTolerance) {
            throw RecordError("field weights sum to " + std::to_string(sum) + ", expected 1");
        }
    }
}

ParseResult parse_corpus(std::istream& in, const CountryTable& countries) {
    ParseResult result;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            result.records.push_back(parse_record(json::parse(line), countries));
        } catch (const json::exception& e) {
            result.errors.push_back({lineno, std::string("invalid JSON: ") + e.what()});
        } catch (const RecordError& e) {
            result.errors.push_back({lineno, e.what()});
        }
    }
    return result;
}

void require_records(const ParseResult& result) {
    if (result.records.empty() && !result.errors.empty()) {
        throw std::runtime_error("no record parsed; first error at line " +
                                 std::to_string(result.errors.front().line) + ": " +
                                 result.errors.front().message);
    }
}

std::string serialize_record(const PublicationRecord& r) {
    json authors = json::array();
    for (const auto& a : r.authors) {
        json affs = json::array();
        for (const auto& af : a.affiliations) {
            affs.push_back({{"org_name", af.org_name},
                            {"country", af.country.is_unknown() ? json(nullptr) : json(af.country.code())}});
        }
        authors.push_back({{"position", a.position},
                           {"full_name", a.full_name},
                           {"last_name", a.last_name},
                           {"first_name", optional_to_json(a.first_name)},
                           {"initials", optional_to_json(a.initials)},
                           {"email", optional_to_json(a.email)},
                           {"affiliations", std::move(affs)}});
    }
    json weights = json::array();
    for (const auto& fw : r.field_weights) weights.push_back({{"field_id", fw.field_id}, {"weight", fw.weight}});

    json obj = {
        {"pub_id", r.pub_id},
        {"title", r.title},
        {"pub_year", r.pub_year},
        {"doc_type", std::string(to_string(r.doc_type))},
        {"doi", optional_to_json(r.doi)},
        {"doi_created_date", r.doi_created_date ? json(format_iso_date(*r.doi_created_date)) : json(nullptr)},
        {"acknowledgment_text", optional_to_json(r.acknowledgment_text)},
        {"funding_orgs", r.funding_orgs},
        {"authors", std::move(authors)},
        {"field_weights", std::move(weights)},
    };
    if (r.index_tag) obj["index_tag"] = *r.index_tag;
    if (!r.cited_pub_ids.empty()) obj["cited_pub_ids"] = r.cited_pub_ids;
    return obj.dump();
}

std::vector<PublicationRecord> filter_documents(const std::vector<PublicationRecord>& records) {
    std::vector<PublicationRecord> out;
    std::copy_if(records.begin(), records.end(), std::back_inserter(out), [](const PublicationRecord& r) {
        return r.doc_type == DocType::Article || r.doc_type == DocType::Review;
    });
    return out;
}

PubDate resolve_pub_date(const PublicationRecord& r) {
    if (r.doi_created_date) return {*r.doi_created_date, DateSource::DoiCreated};
    using namespace std::chrono;
    return {Date{year{r.pub_year}, July, day{1}}, DateSource::YearFallback};
}

}  // namespace fundmob
