#pragma once

#include "fundmob/corpus.hpp"
#include "fundmob/mobility.hpp"
#include "fundmob/periods.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fundmob {

/// Distinct known affiliation countries across all authors.
std::set<Country> known_countries(const PublicationRecord& record);

/// At least two distinct known countries.
bool is_international_collab(const PublicationRecord& record);

struct Proportion {
    double numerator = 0.0;
    double denominator = 0.0;

    /// Undefined (nullopt) for an empty group, never 0.
    std::optional<double> value() const {
        if (denominator == 0.0) return std::nullopt;
        return numerator / denominator;
    }
};

enum class FieldCounting { Fractional, Whole };

struct LabeledRecord {
    const PublicationRecord* record = nullptr;
    PeriodLabel label = PeriodLabel::During;
};

inline constexpr const char* kTotalField = "Total";
inline constexpr const char* kAllPeriods = "All";

struct PpIcReport {
    /// (period, field) -> proportion. Periods are Before/During/After/All,
    /// fields are the top-level fields seen plus "Total". Every combination
    /// is present, empty ones with a zero denominator.
    std::map<std::pair<std::string, std::string>, Proportion> groups;
    std::size_t records_counted = 0;
    std::size_t records_without_countries = 0;
};

/// Share of internationally co-authored papers per period and field.
/// Excluded labels are left out. Field groups use fractional weights in
/// numerator and denominator, or one unit per field in Whole mode.
PpIcReport pp_ic(std::span<const LabeledRecord> records, const FieldMap& field_map,
                 FieldCounting counting = FieldCounting::Fractional);

struct FieldShare {
    double identified = 0.0;
    double unidentified = 0.0;
    double total() const { return identified + unidentified; }
};

struct FieldDistribution {
    std::map<std::string, FieldShare> fields;
    double total_weight = 0.0;  // equals the number of weighted records
    std::size_t records_without_weights = 0;
};

/// Fractional paper counts per top-level field, split by whether the
/// record has an identified funded scholar. `identified` runs parallel to
/// `records`.
FieldDistribution field_distribution(std::span<const PublicationRecord* const> records,
                                     const std::vector<bool>& identified, const FieldMap& field_map);

inline constexpr const char* kUntagged = "untagged";

struct TemporalDistribution {
    std::map<int, std::map<std::string, std::size_t>> by_year;  // year -> tag -> count
    std::map<int, std::size_t> totals;
};

/// Paper counts per publication year and index tag ("untagged" when absent).
TemporalDistribution temporal_distribution(std::span<const PublicationRecord* const> records);

}  // namespace fundmob
