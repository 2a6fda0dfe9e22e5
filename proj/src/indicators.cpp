#include "fundmob/indicators.hpp"

namespace fundmob {

std::set<Country> known_countries(const PublicationRecord& record) {
    std::set<Country> out;
    for (const auto& a : record.authors) {
        for (const auto& af : a.affiliations) {
            if (!af.country.is_unknown()) out.insert(af.country);
        }
    }
    return out;
}

bool is_international_collab(const PublicationRecord& record) { return known_countries(record).size() >= 2; }

PpIcReport pp_ic(std::span<const LabeledRecord> records, const FieldMap& field_map, FieldCounting counting) {
    PpIcReport report;
    std::set<std::string> fields = {kTotalField};
    const std::vector<std::string> periods = {std::string(to_string(PeriodLabel::Before)),
                                              std::string(to_string(PeriodLabel::During)),
                                              std::string(to_string(PeriodLabel::After)), kAllPeriods};

    auto add = [&](const std::string& period, const std::string& field, double weight, bool international) {
        Proportion& p = report.groups[{period, field}];
        p.denominator += weight;
        if (international) p.numerator += weight;
    };

    for (const auto& lr : records) {
        if (is_excluded(lr.label)) continue;
        const PublicationRecord& r = *lr.record;
        ++report.records_counted;
        const auto countries = known_countries(r);
        if (countries.empty()) ++report.records_without_countries;
        const bool intl = countries.size() >= 2;
        const std::string period(to_string(lr.label));

        std::map<std::string, double> weights;
        for (const auto& fw : r.field_weights) weights[field_map.top_level(fw.field_id)] += fw.weight;

        for (const std::string* p : {&period, &periods.back()}) {
            add(*p, kTotalField, 1.0, intl);
            for (const auto& [field, w] : weights) {
                fields.insert(field);
                add(*p, field, counting == FieldCounting::Fractional ? w : 1.0, intl);
            }
        }
    }
    for (const auto& p : periods) {
        for (const auto& f : fields) report.groups.try_emplace({p, f});
    }
    return report;
}

FieldDistribution field_distribution(std::span<const PublicationRecord* const> records,
                                     const std::vector<bool>& identified, const FieldMap& field_map) {
    FieldDistribution out;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const PublicationRecord& r = *records[i];
        if (r.field_weights.empty()) {
            ++out.records_without_weights;
            continue;
        }
        const bool ident = i < identified.size() && identified[i];
        for (const auto& fw : r.field_weights) {
            FieldShare& share = out.fields[field_map.top_level(fw.field_id)];
            (ident ? share.identified : share.unidentified) += fw.weight;
            out.total_weight += fw.weight;
        }
    }
    return out;
}

TemporalDistribution temporal_distribution(std::span<const PublicationRecord* const> records) {
    TemporalDistribution out;
    for (const PublicationRecord* r : records) {
        ++out.by_year[r->pub_year][r->index_tag.value_or(kUntagged)];
        ++out.totals[r->pub_year];
    }
    return out;
}

}  // namespace fundmob
