#include "fundmob/periods.hpp"

#include <algorithm>

namespace fundmob {

std::string_view to_string(PeriodLabel label) {
    switch (label) {
    case PeriodLabel::Before: return "Before";
    case PeriodLabel::During: return "During";
    case PeriodLabel::After: return "After";
    case PeriodLabel::ExcludedConflict: return "ExcludedConflict";
    case PeriodLabel::ExcludedWindowGap: return "ExcludedWindowGap";
    }
    return "ExcludedConflict";
}

SponsorshipWindow compute_window(const std::string& cluster_id, std::span<const DatedPublication> publications) {
    const DatedPublication* first = nullptr;
    const DatedPublication* last = nullptr;
    for (const auto& p : publications) {
        if (!p.acknowledges_funder) continue;
        if (!first || p.date.date < first->date.date) first = &p;
        if (!last || p.date.date > last->date.date) last = &p;
    }
    if (!first) throw NoFundedPapers(cluster_id);
    return {cluster_id, first->date, last->date};
}

PeriodLabel classify_publication(const DatedPublication& publication, const SponsorshipWindow& window) {
    if (publication.acknowledges_funder) return PeriodLabel::During;
    if (publication.date.date < window.first_funded.date) return PeriodLabel::Before;
    if (publication.date.date > window.last_funded.date) return PeriodLabel::After;
    return PeriodLabel::ExcludedWindowGap;
}

PeriodLabel reconcile_multi_scholar(bool acknowledges_funder, std::span<const PeriodLabel> per_scholar) {
    if (acknowledges_funder) return PeriodLabel::During;
    if (per_scholar.empty()) return PeriodLabel::ExcludedConflict;
    const PeriodLabel first = per_scholar.front();
    const bool unanimous =
        std::all_of(per_scholar.begin(), per_scholar.end(), [&](PeriodLabel l) { return l == first; });
    return unanimous ? first : PeriodLabel::ExcludedConflict;
}

}  // namespace fundmob
