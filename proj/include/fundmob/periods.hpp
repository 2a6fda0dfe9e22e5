#pragma once

#include "fundmob/corpus.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fundmob {

enum class PeriodLabel { Before, During, After, ExcludedConflict, ExcludedWindowGap };

std::string_view to_string(PeriodLabel label);
inline bool is_excluded(PeriodLabel label) {
    return label == PeriodLabel::ExcludedConflict || label == PeriodLabel::ExcludedWindowGap;
}

/// First and last funder-acknowledging publication dates of one scholar.
struct SponsorshipWindow {
    std::string cluster_id;
    PubDate first_funded;
    PubDate last_funded;
};

/// The cluster reached window computation without any funder-acknowledging
/// publication.
class NoFundedPapers : public std::runtime_error {
public:
    explicit NoFundedPapers(const std::string& cluster_id)
        : std::runtime_error("cluster " + cluster_id + " has no funder-acknowledging publication") {}
};

/// A scholar's publication as seen by the period classifier.
struct DatedPublication {
    std::string pub_id;
    PubDate date;
    bool acknowledges_funder = false;
};

/// Min and max resolved date over the acknowledging publications.
SponsorshipWindow compute_window(const std::string& cluster_id, std::span<const DatedPublication> publications);

/// Single-scholar view: acknowledged -> During; strictly before the window
/// -> Before; strictly after -> After; otherwise (inside the closed window)
/// -> ExcludedWindowGap.
PeriodLabel classify_publication(const DatedPublication& publication, const SponsorshipWindow& window);

/// Joins the per-scholar labels of one record: acknowledged -> During;
/// unanimous labels stand; any disagreement -> ExcludedConflict.
PeriodLabel reconcile_multi_scholar(bool acknowledges_funder, std::span<const PeriodLabel> per_scholar);

}  // namespace fundmob
