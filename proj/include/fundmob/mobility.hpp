#pragma once

#include "fundmob/corpus.hpp"
#include "fundmob/disambig.hpp"

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fundmob {

/// Normalized romanized mainland-Chinese surnames.
class SurnameList {
public:
    /// Throws std::invalid_argument when empty.
    explicit SurnameList(const std::vector<std::string>& surnames);
    static SurnameList load(std::istream& in);
    static SurnameList load_file(const std::filesystem::path& path);

    bool contains(const std::string& surname) const;
    std::size_t size() const { return names_.size(); }

private:
    std::set<std::string> names_;
};

/// field_id -> top-level field name. Unmapped ids map to themselves.
class FieldMap {
public:
    FieldMap() = default;
    static FieldMap load(std::istream& in);
    static FieldMap load_file(const std::filesystem::path& path);

    void add(std::string field_id, std::string top_level);
    const std::string& top_level(const std::string& field_id) const;

private:
    std::map<std::string, std::string> map_;
};

/// Normalized modal last_name of a cluster; ties go to the lexicographically
/// smallest normalized surname.
std::string modal_surname(const ResearcherCluster& cluster, const AuthorshipIndex& index);

bool is_mainland_chinese_scholar(const ResearcherCluster& cluster, const AuthorshipIndex& index,
                                 const SurnameList& surnames);

enum class CountryRole { Own, Coauthor };

/// Affiliation countries on the given records (the cluster's
/// during-sponsorship authorships). Own: the cluster's own affiliations;
/// Coauthor: every other author on those records. Unknown is dropped; the
/// result is a sorted multiset.
std::vector<Country> collect_countries(const ResearcherCluster& cluster, const AuthorshipIndex& index,
                                       const std::set<std::string>& during_pub_ids, CountryRole role);

enum class MobilityOutcome { Destination, UnidentifiedMultiForeign, UnidentifiedChinaOnly };
enum class MobilityRule { OwnSingleForeign, OwnChinaPlusOne, CoauthorSingleForeign, MultiForeignOwn, NoForeignSignal };

std::string_view to_string(MobilityOutcome outcome);
std::string_view to_string(MobilityRule rule);

struct MobilityInference {
    MobilityOutcome outcome = MobilityOutcome::UnidentifiedChinaOnly;
    std::optional<Country> destination;  // set iff outcome == Destination
    MobilityRule rule = MobilityRule::NoForeignSignal;

    bool operator==(const MobilityInference&) const = default;
};

/// The five destination rules, applied in order to distinct country sets:
///  1. own = {X}, X != CN                      -> X  (OwnSingleForeign)
///  2. own = {CN, X}                           -> X  (OwnChinaPlusOne)
///  3. own within {CN}, coauthor \ {CN} = {X}  -> X  (CoauthorSingleForeign)
///  4. own has >= 2 non-CN countries           -> UnidentifiedMultiForeign
///  5. otherwise                               -> UnidentifiedChinaOnly
MobilityInference infer_destination(const std::set<Country>& own, const std::set<Country>& coauthor);

struct MobilityAssignment {
    std::string cluster_id;
    MobilityInference inference;

    bool operator==(const MobilityAssignment&) const = default;
};

struct FlowTable {
    std::vector<std::pair<Country, std::size_t>> destinations;           // count desc, code asc
    std::vector<std::pair<MobilityOutcome, std::size_t>> unidentified;   // nonzero rows only
};

FlowTable aggregate_flows(const std::vector<MobilityAssignment>& assignments);

/// Fractional field profile of one scholar: the mean of the field-weight
/// vectors of its weighted during-sponsorship records, keyed by top-level
/// field. Empty when none of those records carries weights.
std::map<std::string, double> scholar_field_profile(const std::vector<const PublicationRecord*>& during_records,
                                                    const FieldMap& field_map);

struct FieldDestinationMatrix {
    // field -> destination code -> fractional scholar count
    std::map<std::string, std::map<std::string, double>> cells;
    std::size_t scholars_counted = 0;
    std::size_t excluded_unidentified = 0;   // no destination
    std::size_t excluded_no_weights = 0;     // destination but no field weights
};

/// `profiles` maps cluster_id to its field profile; assignments without a
/// profile entry (or with an empty one) are excluded and counted.
FieldDestinationMatrix field_destination_matrix(const std::vector<MobilityAssignment>& assignments,
                                                const std::map<std::string, std::map<std::string, double>>& profiles);

struct RankedDestination {
    std::string country;
    double scholars = 0.0;
};

/// Top `k` destinations per top-level field, by fractional count desc then
/// code asc, with the coverage counters of the underlying matrix.
struct TopDestinations {
    std::map<std::string, std::vector<RankedDestination>> by_field;
    std::size_t scholars_counted = 0;
    std::size_t excluded_unidentified = 0;
    std::size_t excluded_no_weights = 0;
};

TopDestinations top_destinations_by_field(const std::vector<MobilityAssignment>& assignments,
                                          const std::map<std::string, std::map<std::string, double>>& profiles,
                                          std::size_t k);

}  // namespace fundmob
