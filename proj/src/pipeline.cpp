#include "fundmob/pipeline.hpp"

#include "fundmob/parallel.hpp"

#include <json.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

namespace fundmob {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------- config checks

void check_file(const fs::path& path, const char* flag, std::vector<std::string>& problems) {
    std::error_code ec;
    if (path.empty()) {
        problems.push_back(std::string(flag) + ": path not set");
    } else if (!fs::exists(path, ec)) {
        problems.push_back(std::string(flag) + ": file not found: " + path.string());
    } else if (!fs::is_regular_file(path, ec)) {
        problems.push_back(std::string(flag) + ": not a regular file: " + path.string());
    }
}

bool directory_writable(const fs::path& dir) {
    std::error_code ec;
    return fs::is_directory(dir, ec) && ::access(dir.c_str(), W_OK | X_OK) == 0;
}

// ---------------------------------------------------------------- table output

class TsvWriter {
public:
    TsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
        out_ << "# delimiter=TAB\n";
        row(header);
    }

    void comment(const std::string& text) { out_ << "# " << text << '\n'; }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << '\t';
            for (char c : fields[i]) out_ << ((c == '\t' || c == '\n' || c == '\r') ? ' ' : c);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string join_countries(const std::set<Country>& s) {
    std::string out;
    for (const auto& c : s) {
        if (!out.empty()) out += ';';
        out += c.code();
    }
    return out;
}

json proportion_json(const Proportion& p) {
    auto v = p.value();
    return {{"numerator", p.numerator}, {"denominator", p.denominator}, {"proportion", v ? json(*v) : json(nullptr)}};
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::vector<std::string> artifact_names() {
    return {"funded_scholars.tsv", "clusters.tsv",       "mobility_assignments.tsv", "mobility_flows.tsv",
            "top_destinations.tsv", "period_labels.tsv", "indicators.json",          "pp_ic.tsv",
            "field_distribution.tsv", "temporal.tsv",    "manifest.json"};
}

}  // namespace

// ---------------------------------------------------------------- validation

std::vector<std::string> validate_config(const PipelineConfig& c) {
    std::vector<std::string> problems;
    check_file(c.input, "--input", problems);
    check_file(c.lexicon, "--lexicon", problems);
    check_file(c.surnames, "--surnames", problems);
    check_file(c.field_map, "--field-map", problems);
    check_file(c.country_aliases, "--country-aliases", problems);
    check_file(c.disambig_config, "--disambig-config", problems);
    if (c.overrides) check_file(*c.overrides, "--overrides", problems);

    if (c.out_dir.empty()) {
        problems.push_back("--out-dir: path not set");
    } else {
        std::error_code ec;
        if (fs::exists(c.out_dir, ec)) {
            if (!directory_writable(c.out_dir)) {
                problems.push_back("--out-dir: not a writable directory: " + c.out_dir.string());
            }
        } else {
            fs::path parent = fs::absolute(c.out_dir, ec).parent_path();
            while (!parent.empty() && !fs::exists(parent, ec) && parent != parent.root_path()) {
                parent = parent.parent_path();
            }
            if (!directory_writable(parent)) {
                problems.push_back("--out-dir: cannot be created (no writable parent directory): " +
                                   c.out_dir.string());
            }
        }
    }
    if (c.top_k == 0) problems.push_back("--top-k: must be at least 1");
    return problems;
}

// ---------------------------------------------------------------- computation

PipelineOutputs compute_pipeline(const PipelineInputs& in) {
    PipelineOutputs out;
    StageCounts& counts = out.counts;
    counts.records_in = in.parsed.records.size();
    counts.parse_errors = in.parsed.errors.size();
    for (const auto& e : in.parsed.errors) {
        out.warnings.push_back("input line " + std::to_string(e.line) + ": " + e.message);
    }

    out.corpus = filter_documents(in.parsed.records);
    const auto& corpus = out.corpus;
    counts.records_article_review = corpus.size();
    const AuthorshipIndex index(corpus);

    // Acknowledgment mining, one task per record.
    std::vector<char> acknowledged(corpus.size(), 0);
    std::vector<std::vector<FundingSentence>> sentences(corpus.size());
    std::vector<std::vector<FundedAuthorship>> matches(corpus.size());
    parallel_for(corpus.size(), in.threads, [&](std::size_t i) {
        const PublicationRecord& r = corpus[i];
        acknowledged[i] = acknowledges_funder(r, in.lexicon);
        if (!acknowledged[i] || !r.acknowledgment_text) return;
        sentences[i] = extract_funding_sentences(r.pub_id, *r.acknowledgment_text, in.lexicon);
        matches[i] = match_funded_authors(r, sentences[i]);
    });

    std::map<std::string, bool> ack_by_id;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        ack_by_id[corpus[i].pub_id] = acknowledged[i] != 0;
        if (!acknowledged[i]) continue;
        out.funded_record_indices.push_back(i);
        counts.authorships_of_funded_records += corpus[i].authors.size();
        counts.funding_sentences += sentences[i].size();
        if (!matches[i].empty()) ++counts.funded_records_identified;
        for (auto& m : matches[i]) {
            ++(m.match_kind == MatchKind::NameMatch ? counts.identified_by_name : counts.identified_by_ordinal);
            out.funded_authorships.push_back(std::move(m));
        }
    }
    counts.funded_records = out.funded_record_indices.size();
    counts.identified_authorships = out.funded_authorships.size();
    if (counts.funded_records == 0) out.warnings.push_back("no funder-acknowledging records; downstream artifacts are empty");

    // Disambiguation over the whole filtered corpus.
    const auto blocks = block_authorships(corpus);
    counts.blocks = blocks.size();
    out.clusters = cluster_corpus(index, blocks, in.weights, in.overrides, in.threads);
    counts.clusters = out.clusters.size();
    std::map<std::string, const ResearcherCluster*> cluster_by_id;
    for (const auto& c : out.clusters) {
        cluster_by_id[c.cluster_id] = &c;
        for (const auto& m : c.members) out.cluster_of[m] = c.cluster_id;
    }
    for (const auto& fa : out.funded_authorships) {
        out.funded_cluster_ids.insert(out.cluster_of.at({fa.pub_id, fa.author_position}));
    }
    counts.funded_clusters = out.funded_cluster_ids.size();

    // Sponsorship periods.
    struct ScholarView {
        std::string cluster_id;
        SponsorshipWindow window;
        std::vector<DatedPublication> pubs;
        std::vector<PeriodLabel> labels;
    };
    std::vector<std::string> funded_ids(out.funded_cluster_ids.begin(), out.funded_cluster_ids.end());
    std::vector<ScholarView> views(funded_ids.size());
    parallel_for(funded_ids.size(), in.threads, [&](std::size_t i) {
        ScholarView& v = views[i];
        v.cluster_id = funded_ids[i];
        std::set<std::string> seen;
        for (const auto& m : cluster_by_id.at(v.cluster_id)->members) {
            if (!seen.insert(m.pub_id).second) continue;
            const PublicationRecord& r = index.record(m);
            v.pubs.push_back({r.pub_id, resolve_pub_date(r), ack_by_id.at(r.pub_id)});
        }
        v.window = compute_window(v.cluster_id, v.pubs);
        for (const auto& p : v.pubs) v.labels.push_back(classify_publication(p, v.window));
    });

    std::map<std::string, std::vector<PeriodLabel>> per_record;
    for (const auto& v : views) {
        for (std::size_t j = 0; j < v.pubs.size(); ++j) per_record[v.pubs[j].pub_id].push_back(v.labels[j]);
    }
    for (const auto& [pub_id, labels] : per_record) {
        out.record_labels[pub_id] = reconcile_multi_scholar(ack_by_id.at(pub_id), labels);
        ++counts.records_by_label[std::string(to_string(out.record_labels[pub_id]))];
    }
    std::map<std::string, std::set<std::string>> during_by_cluster;
    for (const auto& v : views) {
        for (const auto& p : v.pubs) {
            const PeriodLabel label = out.record_labels.at(p.pub_id);
            out.period_rows.push_back({p.pub_id, v.cluster_id, label, v.window.first_funded, v.window.last_funded,
                                       p.date.source});
            ++counts.labels_by_class[std::string(to_string(label))];
            if (label == PeriodLabel::During) during_by_cluster[v.cluster_id].insert(p.pub_id);
        }
    }
    std::sort(out.period_rows.begin(), out.period_rows.end(), [](const PeriodRow& a, const PeriodRow& b) {
        return std::tie(a.pub_id, a.cluster_id) < std::tie(b.pub_id, b.cluster_id);
    });

    // Mobility of mainland-Chinese funded scholars.
    for (const auto& id : funded_ids) {
        if (is_mainland_chinese_scholar(*cluster_by_id.at(id), index, in.surnames)) out.chinese_cluster_ids.insert(id);
    }
    counts.chinese_clusters = out.chinese_cluster_ids.size();
    std::vector<std::string> chinese(out.chinese_cluster_ids.begin(), out.chinese_cluster_ids.end());
    out.assignments.resize(chinese.size());
    std::vector<std::map<std::string, double>> profile_list(chinese.size());
    parallel_for(chinese.size(), in.threads, [&](std::size_t i) {
        const ResearcherCluster& c = *cluster_by_id.at(chinese[i]);
        const std::set<std::string>& during = during_by_cluster[chinese[i]];
        AssignmentRow& row = out.assignments[i];
        auto own = collect_countries(c, index, during, CountryRole::Own);
        auto co = collect_countries(c, index, during, CountryRole::Coauthor);
        row.own = {own.begin(), own.end()};
        row.coauthor = {co.begin(), co.end()};
        row.display_name = c.display_name;
        row.assignment = {c.cluster_id, infer_destination(row.own, row.coauthor)};
        std::vector<const PublicationRecord*> during_records;
        for (const auto& pub : during) during_records.push_back(index.find_record(pub));
        profile_list[i] = scholar_field_profile(during_records, in.field_map);
    });
    std::vector<MobilityAssignment> assignments;
    std::map<std::string, std::map<std::string, double>> profiles;
    for (std::size_t i = 0; i < chinese.size(); ++i) {
        assignments.push_back(out.assignments[i].assignment);
        profiles[chinese[i]] = profile_list[i];
        ++counts.assignments_by_rule[std::string(to_string(out.assignments[i].assignment.inference.rule))];
    }
    counts.assignments = assignments.size();
    out.flows = aggregate_flows(assignments);
    out.top_destinations = top_destinations_by_field(assignments, profiles, in.top_k);

    // Indicators.
    std::vector<LabeledRecord> labeled;
    for (const auto& [pub_id, label] : out.record_labels) labeled.push_back({index.find_record(pub_id), label});
    out.pp_ic = pp_ic(labeled, in.field_map, in.counting);

    std::vector<const PublicationRecord*> funded_records;
    std::vector<bool> identified;
    std::set<std::string> identified_ids;
    for (const auto& fa : out.funded_authorships) identified_ids.insert(fa.pub_id);
    for (std::size_t i : out.funded_record_indices) {
        funded_records.push_back(&corpus[i]);
        identified.push_back(identified_ids.count(corpus[i].pub_id) > 0);
    }
    out.field_distribution = field_distribution(funded_records, identified, in.field_map);
    out.temporal = temporal_distribution(funded_records);
    return out;
}

// ---------------------------------------------------------------- artifacts

std::string sha256_file_hex(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 unavailable");
    }
    char buf[1 << 15];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return hex.str();
}

void write_artifacts(const PipelineOutputs& o, const PipelineConfig& config, const std::string& input_sha256) {
    const fs::path dir = config.out_dir;
    fs::create_directories(dir);
    const AuthorshipIndex index(o.corpus);

    {
        TsvWriter t(dir / "funded_scholars.tsv", {"pub_id", "author_position", "full_name", "cluster_id", "match_kind",
                                                 "evidence", "sentence_start", "sentence_end"});
        for (const auto& fa : o.funded_authorships) {
            const AuthorshipKey key{fa.pub_id, fa.author_position};
            t.row({fa.pub_id, std::to_string(fa.author_position), index.author(key).full_name, o.cluster_of.at(key),
                   std::string(to_string(fa.match_kind)), fa.evidence, std::to_string(fa.sentence_span.start),
                   std::to_string(fa.sentence_span.end)});
        }
    }
    {
        TsvWriter t(dir / "clusters.tsv", {"cluster_id", "display_name", "size", "funded", "mainland_chinese", "members"});
        for (const auto& c : o.clusters) {
            std::string members;
            for (const auto& m : c.members) members += (members.empty() ? "" : ";") + m.to_string();
            t.row({c.cluster_id, c.display_name, std::to_string(c.members.size()),
                   o.funded_cluster_ids.count(c.cluster_id) ? "1" : "0",
                   o.chinese_cluster_ids.count(c.cluster_id) ? "1" : "0", members});
        }
    }
    {
        TsvWriter t(dir / "mobility_assignments.tsv", {"cluster_id", "display_name", "outcome", "destination", "rule",
                                                      "own_countries", "coauthor_countries"});
        for (const auto& a : o.assignments) {
            const auto& inf = a.assignment.inference;
            t.row({a.assignment.cluster_id, a.display_name, std::string(to_string(inf.outcome)),
                   inf.destination ? inf.destination->code() : "", std::string(to_string(inf.rule)),
                   join_countries(a.own), join_countries(a.coauthor)});
        }
    }
    {
        TsvWriter t(dir / "mobility_flows.tsv", {"kind", "key", "scholars"});
        for (const auto& [country, n] : o.flows.destinations) t.row({"destination", country.code(), std::to_string(n)});
        for (const auto& [outcome, n] : o.flows.unidentified) {
            t.row({"unidentified", std::string(to_string(outcome)), std::to_string(n)});
        }
    }
    {
        TsvWriter t(dir / "top_destinations.tsv", {"field", "rank", "destination", "scholars"});
        for (const auto& [field, ranked] : o.top_destinations.by_field) {
            for (std::size_t i = 0; i < ranked.size(); ++i) {
                t.row({field, std::to_string(i + 1), ranked[i].country, fixed6(ranked[i].scholars)});
            }
        }
        t.comment("scholars_counted=" + std::to_string(o.top_destinations.scholars_counted));
        t.comment("excluded_unidentified=" + std::to_string(o.top_destinations.excluded_unidentified));
        t.comment("excluded_no_field_weights=" + std::to_string(o.top_destinations.excluded_no_weights));
    }
    {
        TsvWriter t(dir / "period_labels.tsv",
                    {"pub_id", "cluster_id", "label", "window_start", "window_end", "date_source"});
        for (const auto& r : o.period_rows) {
            t.row({r.pub_id, r.cluster_id, std::string(to_string(r.label)), format_iso_date(r.window_start.date),
                   format_iso_date(r.window_end.date), std::string(to_string(r.date_source))});
        }
    }

    json ppic = json::object();
    for (const auto& [key, p] : o.pp_ic.groups) ppic[key.first][key.second] = proportion_json(p);
    json fields = json::object();
    for (const auto& [field, share] : o.field_distribution.fields) {
        fields[field] = {{"identified", share.identified}, {"unidentified", share.unidentified}, {"total", share.total()}};
    }
    json temporal = json::object();
    for (const auto& [year, tags] : o.temporal.by_year) {
        json row = json::object();
        for (const auto& [tag, n] : tags) row[tag] = n;
        temporal[std::to_string(year)] = {{"by_tag", row}, {"total", o.temporal.totals.at(year)}};
    }
    write_json(dir / "indicators.json",
               {{"pp_ic", ppic},
                {"pp_ic_counting", config.whole_count ? "whole" : "fractional"},
                {"pp_ic_coverage",
                 {{"records_counted", o.pp_ic.records_counted},
                  {"records_without_countries", o.pp_ic.records_without_countries}}},
                {"field_distribution",
                 {{"fields", fields},
                  {"total_weight", o.field_distribution.total_weight},
                  {"records_without_weights", o.field_distribution.records_without_weights}}},
                {"temporal", temporal}});

    {
        TsvWriter t(dir / "pp_ic.tsv", {"period", "field", "numerator", "denominator", "proportion"});
        for (const auto& [key, p] : o.pp_ic.groups) {
            auto v = p.value();
            t.row({key.first, key.second, fixed6(p.numerator), fixed6(p.denominator), v ? fixed6(*v) : "NA"});
        }
        t.comment("records_without_countries=" + std::to_string(o.pp_ic.records_without_countries));
    }
    {
        TsvWriter t(dir / "field_distribution.tsv", {"field", "identified", "unidentified", "total"});
        for (const auto& [field, s] : o.field_distribution.fields) {
            t.row({field, fixed6(s.identified), fixed6(s.unidentified), fixed6(s.total())});
        }
        t.comment("records_without_weights=" + std::to_string(o.field_distribution.records_without_weights));
    }
    {
        TsvWriter t(dir / "temporal.tsv", {"year", "index_tag", "papers"});
        for (const auto& [year, tags] : o.temporal.by_year) {
            for (const auto& [tag, n] : tags) t.row({std::to_string(year), tag, std::to_string(n)});
            t.row({std::to_string(year), "TOTAL", std::to_string(o.temporal.totals.at(year))});
        }
    }

    const StageCounts& c = o.counts;
    json counts = {
        {"records_in", c.records_in},
        {"parse_errors", c.parse_errors},
        {"records_article_review", c.records_article_review},
        {"funded_records", c.funded_records},
        {"funded_records_identified", c.funded_records_identified},
        {"funding_sentences", c.funding_sentences},
        {"authorships_of_funded_records", c.authorships_of_funded_records},
        {"identified_authorships", c.identified_authorships},
        {"identified_by_name", c.identified_by_name},
        {"identified_by_ordinal", c.identified_by_ordinal},
        {"blocks", c.blocks},
        {"clusters", c.clusters},
        {"funded_clusters", c.funded_clusters},
        {"chinese_clusters", c.chinese_clusters},
        {"assignments", c.assignments},
        {"assignments_by_rule", c.assignments_by_rule},
        {"labels_by_class", c.labels_by_class},
        {"records_by_label", c.records_by_label},
    };
    json echo = {
        {"input", config.input.string()},
        {"lexicon", config.lexicon.string()},
        {"surnames", config.surnames.string()},
        {"field_map", config.field_map.string()},
        {"country_aliases", config.country_aliases.string()},
        {"disambig_config", config.disambig_config.string()},
        {"overrides", config.overrides ? json(config.overrides->string()) : json(nullptr)},
        {"whole_count", config.whole_count},
        {"top_k", config.top_k},
    };
    write_json(dir / "manifest.json", {{"version", kVersion},
                                       {"input_sha256", input_sha256},
                                       {"config", echo},
                                       {"counts", counts},
                                       {"warnings", o.warnings},
                                       {"artifacts", artifact_names()}});
}

RunResult run_pipeline(const PipelineConfig& config) {
    RunResult result;
    result.diagnostics = validate_config(config);
    if (!result.diagnostics.empty()) {
        result.exit_code = 2;
        return result;
    }
    try {
        const CountryTable countries = CountryTable::load_file(config.country_aliases);
        std::ifstream in(config.input, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open input: " + config.input.string());
        ParseResult parsed = parse_corpus(in, countries);
        require_records(parsed);

        PipelineInputs inputs{
            std::move(parsed),
            FunderLexicon::load_file(config.lexicon),
            SurnameList::load_file(config.surnames),
            FieldMap::load_file(config.field_map),
            ScoringWeights::load_file(config.disambig_config),
            config.overrides ? load_overrides_file(*config.overrides) : std::vector<ManualOverride>{},
            config.whole_count ? FieldCounting::Whole : FieldCounting::Fractional,
            config.top_k,
            config.threads,
        };
        const PipelineOutputs outputs = compute_pipeline(inputs);
        write_artifacts(outputs, config, sha256_file_hex(config.input));
        result.diagnostics = outputs.warnings;
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.diagnostics.push_back(e.what());
    }
    return result;
}

}  // namespace fundmob
