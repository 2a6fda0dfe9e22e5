#pragma once

#include "fundmob/corpus.hpp"
#include "fundmob/pipeline.hpp"

#include <filesystem>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fixture {

inline fundmob::Authorship author(int position, std::string last, std::optional<std::string> first = std::nullopt,
                                  std::optional<std::string> initials = std::nullopt) {
    fundmob::Authorship a;
    a.position = position;
    a.last_name = std::move(last);
    a.first_name = std::move(first);
    a.initials = std::move(initials);
    a.full_name = a.last_name + ", " + (a.first_name ? *a.first_name : a.initials.value_or(""));
    return a;
}

inline fundmob::Authorship& affiliate(fundmob::Authorship& a, std::string org, std::string code) {
    a.affiliations.push_back({std::move(org), fundmob::Country{std::move(code)}});
    return a;
}

inline fundmob::PublicationRecord record(std::string pub_id, std::vector<fundmob::Authorship> authors,
                                         int year = 2015) {
    fundmob::PublicationRecord r;
    r.pub_id = std::move(pub_id);
    r.title = "Title of " + r.pub_id;
    r.pub_year = year;
    r.authors = std::move(authors);
    return r;
}

/// One author per listed country; every author gets a distinct surname.
inline fundmob::PublicationRecord with_countries(std::string pub_id, std::initializer_list<const char*> codes) {
    std::vector<fundmob::Authorship> authors;
    int pos = 1;
    for (const char* c : codes) {
        auto a = author(pos, "Author" + std::to_string(pos), "Given");
        if (*c) affiliate(a, "Org " + std::to_string(pos), c);
        authors.push_back(std::move(a));
        ++pos;
    }
    if (authors.empty()) authors.push_back(author(1, "Solo", "Given"));
    return record(std::move(pub_id), std::move(authors));
}

/// Random single-block corpus: every record has one "Wang W." plus a
/// random co-author; features drawn from small pools so links are common.
inline std::vector<fundmob::PublicationRecord> random_block_corpus(std::mt19937& rng, int n) {
    static const std::vector<std::optional<std::string>> firsts = {"Wei", "Wei", std::nullopt, "Wen"};
    std::vector<fundmob::PublicationRecord> corpus;
    for (int i = 0; i < n; ++i) {
        auto a = author(1, "Wang", firsts[rng() % firsts.size()], "W");
        if (rng() % 3 == 0) a.email = (rng() % 2) ? "w@a.org" : "w@b.org";
        if (rng() % 2) affiliate(a, (rng() % 2) ? "Org A" : "Org B", "CN");
        auto co = author(2, (rng() % 2) ? "Zhou" : "Sun", "Ming");
        auto r = record("R" + std::to_string(100 + i), {a, co});
        if (rng() % 2) r.funding_orgs = {"China Scholarship Council"};
        if (i > 0 && rng() % 4 == 0) r.cited_pub_ids = {"R" + std::to_string(100 + static_cast<int>(rng() % i))};
        corpus.push_back(r);
    }
    return corpus;
}

inline std::filesystem::path data_dir() { return FUNDMOB_DATA_DIR; }

inline fundmob::PipelineConfig demo_config(const std::filesystem::path& out_dir) {
    fundmob::PipelineConfig c;
    c.input = data_dir() / "demo" / "demo_corpus.jsonl";
    c.lexicon = data_dir() / "csc_lexicon.txt";
    c.surnames = data_dir() / "surnames.txt";
    c.field_map = data_dir() / "field_map.tsv";
    c.country_aliases = data_dir() / "country_aliases.tsv";
    c.disambig_config = data_dir() / "disambig.conf";
    c.out_dir = out_dir;
    return c;
}

/// Fresh, empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("fundmob_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace fixture
