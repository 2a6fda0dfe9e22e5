// fundmob: funded-scholar mining, mobility inference and collaboration
// indicators over a line-delimited bibliographic corpus.

#include "fundmob/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <thread>

int main(int argc, char** argv) {
    CLI::App app{"Mine funding acknowledgments, infer scholar mobility and compute collaboration indicators"};
    app.set_version_flag("--version", std::string("fundmob ") + fundmob::kVersion);

    fundmob::PipelineConfig config;
    std::string overrides;
    config.threads = std::max(1u, std::thread::hardware_concurrency());

    app.add_option("--input", config.input, "Line-delimited JSON corpus")->required();
    app.add_option("--lexicon", config.lexicon, "Funder lexicon (first line canonical)")->required();
    app.add_option("--surnames", config.surnames, "Mainland-Chinese surname list")->required();
    app.add_option("--field-map", config.field_map, "field_id<TAB>top-level field")->required();
    app.add_option("--country-aliases", config.country_aliases, "raw_name<TAB>country code")->required();
    app.add_option("--disambig-config", config.disambig_config, "Disambiguation weights (key = value)")->required();
    app.add_option("--overrides", overrides, "Manual MERGE/SPLIT overrides");
    app.add_option("--out-dir", config.out_dir, "Output directory")->required();
    app.add_flag("--whole-count", config.whole_count, "Whole counting for field-grouped PP(IC)");
    app.add_option("--top-k", config.top_k, "Destinations per field")->capture_default_str();
    app.add_option("--threads", config.threads, "Worker threads (output does not depend on it)");

    CLI11_PARSE(app, argc, argv);
    if (!overrides.empty()) config.overrides = overrides;

    const fundmob::RunResult result = fundmob::run_pipeline(config);
    for (const auto& d : result.diagnostics) {
        std::cerr << (result.exit_code == 0 ? "warning: " : "error: ") << d << '\n';
    }
    if (result.exit_code == 0) std::cerr << "artifacts written to " << config.out_dir.string() << '\n';
    return result.exit_code;
}
