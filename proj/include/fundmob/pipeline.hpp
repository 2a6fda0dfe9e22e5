#pragma once

#include "fundmob/ackminer.hpp"
#include "fundmob/corpus.hpp"
#include "fundmob/disambig.hpp"
#include "fundmob/indicators.hpp"
#include "fundmob/mobility.hpp"
#include "fundmob/periods.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fundmob {

inline constexpr const char* kVersion = "1.0.0";

struct PipelineConfig {
    std::filesystem::path input;
    std::filesystem::path lexicon;
    std::filesystem::path surnames;
    std::filesystem::path field_map;
    std::filesystem::path country_aliases;
    std::filesystem::path disambig_config;
    std::optional<std::filesystem::path> overrides;
    std::filesystem::path out_dir;
    bool whole_count = false;
    std::size_t top_k = 10;
    unsigned threads = 1;
};

/// Every problem with the configuration, not just the first.
std::vector<std::string> validate_config(const PipelineConfig& config);

/// Everything the computation needs, already loaded.
struct PipelineInputs {
    ParseResult parsed;
    FunderLexicon lexicon;
    SurnameList surnames;
    FieldMap field_map;
    ScoringWeights weights;
    std::vector<ManualOverride> overrides;
    FieldCounting counting = FieldCounting::Fractional;
    std::size_t top_k = 10;
    unsigned threads = 1;
};

struct PeriodRow {
    std::string pub_id;
    std::string cluster_id;
    PeriodLabel label = PeriodLabel::During;
    PubDate window_start;
    PubDate window_end;
    DateSource date_source = DateSource::YearFallback;
};

struct AssignmentRow {
    MobilityAssignment assignment;
    std::string display_name;
    std::set<Country> own;
    std::set<Country> coauthor;
};

struct StageCounts {
    std::size_t records_in = 0;
    std::size_t parse_errors = 0;
    std::size_t records_article_review = 0;
    std::size_t funded_records = 0;
    std::size_t funded_records_identified = 0;
    std::size_t funding_sentences = 0;
    std::size_t authorships_of_funded_records = 0;
    std::size_t identified_authorships = 0;
    std::size_t identified_by_name = 0;
    std::size_t identified_by_ordinal = 0;
    std::size_t blocks = 0;
    std::size_t clusters = 0;
    std::size_t funded_clusters = 0;
    std::size_t chinese_clusters = 0;
    std::size_t assignments = 0;
    std::map<std::string, std::size_t> assignments_by_rule;
    std::map<std::string, std::size_t> labels_by_class;         // scholar-publication pairs
    std::map<std::string, std::size_t> records_by_label;        // distinct records
};

struct PipelineOutputs {
    std::vector<PublicationRecord> corpus;  // Article/Review only
    std::vector<std::size_t> funded_record_indices;
    std::vector<FundedAuthorship> funded_authorships;
    std::vector<ResearcherCluster> clusters;
    std::map<AuthorshipKey, std::string> cluster_of;
    std::set<std::string> funded_cluster_ids;
    std::set<std::string> chinese_cluster_ids;
    std::vector<PeriodRow> period_rows;
    std::map<std::string, PeriodLabel> record_labels;  // reconciled, per pub_id
    std::vector<AssignmentRow> assignments;
    FlowTable flows;
    TopDestinations top_destinations;
    PpIcReport pp_ic;
    FieldDistribution field_distribution;
    TemporalDistribution temporal;
    StageCounts counts;
    std::vector<std::string> warnings;
};

/// Runs every stage on loaded inputs. Deterministic for any thread count.
PipelineOutputs compute_pipeline(const PipelineInputs& inputs);

struct RunResult {
    int exit_code = 0;
    std::vector<std::string> diagnostics;
};

/// Validates, loads, computes and writes all artifacts into config.out_dir.
RunResult run_pipeline(const PipelineConfig& config);

/// Writes the artifact files for computed outputs.
void write_artifacts(const PipelineOutputs& outputs, const PipelineConfig& config, const std::string& input_sha256);

std::string sha256_file_hex(const std::filesystem::path& path);

}  // namespace fundmob
