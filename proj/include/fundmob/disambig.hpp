#pragma once

#include "fundmob/corpus.hpp"

#include <compare>
#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fundmob {

struct AuthorshipKey {
    std::string pub_id;
    int position = 0;

    auto operator<=>(const AuthorshipKey&) const = default;
    std::string to_string() const { return pub_id + "#" + std::to_string(position); }
};

/// Normalized surname plus first given-name initial ("" when unknown).
struct BlockKey {
    std::string last_name;
    std::string first_initial;

    auto operator<=>(const BlockKey&) const = default;
};

struct Block {
    BlockKey key;
    std::vector<AuthorshipKey> members;  // sorted
};

/// Pairwise evidence weights and the linkage threshold.
struct ScoringWeights {
    double email = 10.0;
    double affiliation = 2.0;
    double coauthor = 4.0;
    double funder = 1.0;
    double first_name = 3.0;
    double self_citation = 2.0;
    double threshold = 5.0;

    /// Throws std::invalid_argument if a weight is negative or threshold <= 0.
    void validate() const;

    /// "key = value" lines; '#' starts a comment. Unlisted keys keep their
    /// defaults, unknown keys are an error.
    static ScoringWeights load(std::istream& in);
    static ScoringWeights load_file(const std::filesystem::path& path);
};

enum class OverrideAction { Merge, Split };

struct ManualOverride {
    AuthorshipKey first;
    AuthorshipKey second;
    OverrideAction action = OverrideAction::Merge;
};

/// Tab-delimited "pub_id position pub_id position MERGE|SPLIT" lines.
std::vector<ManualOverride> load_overrides(std::istream& in);
std::vector<ManualOverride> load_overrides_file(const std::filesystem::path& path);

/// Resolves authorship keys back to their records.
class AuthorshipIndex {
public:
    explicit AuthorshipIndex(const std::vector<PublicationRecord>& corpus);

    const PublicationRecord& record(const AuthorshipKey& key) const;
    const Authorship& author(const AuthorshipKey& key) const;
    bool contains(const AuthorshipKey& key) const;
    const PublicationRecord* find_record(const std::string& pub_id) const;

private:
    const std::vector<PublicationRecord>* corpus_;
    std::map<std::string, std::size_t> by_id_;
};

BlockKey block_key(const Authorship& author);

std::vector<Block> block_authorships(const std::vector<PublicationRecord>& corpus);

/// Sum of the triggered evidence weights. Returns 0 when the two authorships
/// sit on the same record or their given names conflict.
double score_pair(const AuthorshipIndex& index, const AuthorshipKey& a, const AuthorshipKey& b,
                  const ScoringWeights& weights);

struct ResearcherCluster {
    std::string cluster_id;              // smallest member key
    std::vector<AuthorshipKey> members;  // sorted
    std::string display_name;            // most frequent full_name

    bool operator==(const ResearcherCluster&) const = default;
};

/// Single-linkage clustering over edges with score >= threshold, i.e. the
/// connected components of the threshold graph. MERGE overrides add edges;
/// SPLIT overrides veto any union that would join the pair. Clusters are
/// returned sorted by cluster_id.
std::vector<ResearcherCluster> cluster_block(const AuthorshipIndex& index, const Block& block,
                                             const ScoringWeights& weights,
                                             std::span<const ManualOverride> overrides = {});

/// Clusters every block (in parallel when threads > 1), then applies
/// MERGE overrides that span blocks. Sorted by cluster_id.
std::vector<ResearcherCluster> cluster_corpus(const AuthorshipIndex& index, const std::vector<Block>& blocks,
                                              const ScoringWeights& weights,
                                              std::span<const ManualOverride> overrides = {},
                                              unsigned threads = 1);

}  // namespace fundmob
