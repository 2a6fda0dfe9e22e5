#include "fundmob/mobility.hpp"

#include "fundmob/text.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace fundmob {

SurnameList::SurnameList(const std::vector<std::string>& surnames) {
    for (const auto& s : surnames) {
        std::string n = text::normalize(s);
        if (!n.empty()) names_.insert(std::move(n));
    }
    if (names_.empty()) throw std::invalid_argument("surname list is empty");
}

SurnameList SurnameList::load(std::istream& in) {
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = text::trim(line);
        if (!t.empty() && t[0] != '#') names.push_back(std::move(t));
    }
    return SurnameList(names);
}

SurnameList SurnameList::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open surname list: " + path.string());
    return load(in);
}

bool SurnameList::contains(const std::string& surname) const { return names_.count(text::normalize(surname)) > 0; }

FieldMap FieldMap::load(std::istream& in) {
    FieldMap m;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = text::trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto f = text::split(t, '\t');
        if (f.size() != 2 || text::trim(f[0]).empty() || text::trim(f[1]).empty()) {
            throw std::runtime_error("field map line " + std::to_string(lineno) + ": expected field_id<TAB>field");
        }
        m.add(text::trim(f[0]), text::trim(f[1]));
    }
    return m;
}

FieldMap FieldMap::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field map: " + path.string());
    return load(in);
}

void FieldMap::add(std::string field_id, std::string top_level) { map_[std::move(field_id)] = std::move(top_level); }

const std::string& FieldMap::top_level(const std::string& field_id) const {
    auto it = map_.find(field_id);
    return it == map_.end() ? field_id : it->second;
}

std::string modal_surname(const ResearcherCluster& cluster, const AuthorshipIndex& index) {
    std::map<std::string, int> counts;
    for (const auto& k : cluster.members) ++counts[text::normalize(index.author(k).last_name)];
    std::string best;
    int best_count = 0;
    for (const auto& [name, count] : counts) {
        if (count > best_count) {
            best = name;
            best_count = count;
        }
    }
    return best;
}

bool is_mainland_chinese_scholar(const ResearcherCluster& cluster, const AuthorshipIndex& index,
                                 const SurnameList& surnames) {
    return surnames.contains(modal_surname(cluster, index));
}

std::vector<Country> collect_countries(const ResearcherCluster& cluster, const AuthorshipIndex& index,
                                       const std::set<std::string>& during_pub_ids, CountryRole role) {
    std::vector<Country> out;
    for (const auto& key : cluster.members) {
        if (!during_pub_ids.count(key.pub_id)) continue;
        const PublicationRecord& r = index.record(key);
        for (const auto& a : r.authors) {
            const bool own = a.position == key.position;
            if (own != (role == CountryRole::Own)) continue;
            for (const auto& af : a.affiliations) {
                if (!af.country.is_unknown()) out.push_back(af.country);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string_view to_string(MobilityOutcome outcome) {
    switch (outcome) {
    case MobilityOutcome::Destination: return "Destination";
    case MobilityOutcome::UnidentifiedMultiForeign: return "UnidentifiedMultiForeign";
    case MobilityOutcome::UnidentifiedChinaOnly: return "UnidentifiedChinaOnly";
    }
    return "UnidentifiedChinaOnly";
}

std::string_view to_string(MobilityRule rule) {
    switch (rule) {
    case MobilityRule::OwnSingleForeign: return "OwnSingleForeign";
    case MobilityRule::OwnChinaPlusOne: return "OwnChinaPlusOne";
    case MobilityRule::CoauthorSingleForeign: return "CoauthorSingleForeign";
    case MobilityRule::MultiForeignOwn: return "MultiForeignOwn";
    case MobilityRule::NoForeignSignal: return "NoForeignSignal";
    }
    return "NoForeignSignal";
}

MobilityInference infer_destination(const std::set<Country>& own_in, const std::set<Country>& coauthor_in) {
    auto known = [](const std::set<Country>& s) {
        std::set<Country> out;
        for (const auto& c : s) {
            if (!c.is_unknown()) out.insert(c);
        }
        return out;
    };
    const std::set<Country> own = known(own_in);
    const std::set<Country> coauthor = known(coauthor_in);
    const bool own_has_china = own.count(Country::mainland_china()) > 0;

    std::vector<Country> own_foreign;
    for (const auto& c : own) {
        if (!c.is_mainland_china()) own_foreign.push_back(c);
    }

    if (own.size() == 1 && own_foreign.size() == 1) {
        return {MobilityOutcome::Destination, own_foreign.front(), MobilityRule::OwnSingleForeign};
    }
    if (own.size() == 2 && own_has_china) {
        return {MobilityOutcome::Destination, own_foreign.front(), MobilityRule::OwnChinaPlusOne};
    }
    if (own_foreign.empty()) {
        std::vector<Country> co_foreign;
        for (const auto& c : coauthor) {
            if (!c.is_mainland_china()) co_foreign.push_back(c);
        }
        if (co_foreign.size() == 1) {
            return {MobilityOutcome::Destination, co_foreign.front(), MobilityRule::CoauthorSingleForeign};
        }
        return {MobilityOutcome::UnidentifiedChinaOnly, std::nullopt, MobilityRule::NoForeignSignal};
    }
    return {MobilityOutcome::UnidentifiedMultiForeign, std::nullopt, MobilityRule::MultiForeignOwn};
}

FlowTable aggregate_flows(const std::vector<MobilityAssignment>& assignments) {
    std::map<Country, std::size_t> dest;
    std::map<MobilityOutcome, std::size_t> unident;
    for (const auto& a : assignments) {
        if (a.inference.outcome == MobilityOutcome::Destination) {
            ++dest[*a.inference.destination];
        } else {
            ++unident[a.inference.outcome];
        }
    }
    FlowTable t;
    t.destinations.assign(dest.begin(), dest.end());
    std::stable_sort(t.destinations.begin(), t.destinations.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    t.unidentified.assign(unident.begin(), unident.end());
    return t;
}

std::map<std::string, double> scholar_field_profile(const std::vector<const PublicationRecord*>& during_records,
                                                    const FieldMap& field_map) {
    std::map<std::string, double> profile;
    std::size_t weighted = 0;
    for (const PublicationRecord* r : during_records) {
        if (r->field_weights.empty()) continue;
        ++weighted;
        for (const auto& fw : r->field_weights) profile[field_map.top_level(fw.field_id)] += fw.weight;
    }
    for (auto& [field, w] : profile) w /= static_cast<double>(weighted);
    return profile;
}

FieldDestinationMatrix field_destination_matrix(const std::vector<MobilityAssignment>& assignments,
                                                const std::map<std::string, std::map<std::string, double>>& profiles) {
    std::vector<const MobilityAssignment*> ordered;
    for (const auto& a : assignments) ordered.push_back(&a);
    std::sort(ordered.begin(), ordered.end(),
              [](const MobilityAssignment* x, const MobilityAssignment* y) { return x->cluster_id < y->cluster_id; });

    FieldDestinationMatrix m;
    for (const MobilityAssignment* a : ordered) {
        if (a->inference.outcome != MobilityOutcome::Destination) {
            ++m.excluded_unidentified;
            continue;
        }
        auto it = profiles.find(a->cluster_id);
        if (it == profiles.end() || it->second.empty()) {
            ++m.excluded_no_weights;
            continue;
        }
        ++m.scholars_counted;
        const std::string& code = a->inference.destination->code();
        for (const auto& [field, w] : it->second) m.cells[field][code] += w;
    }
    return m;
}

TopDestinations top_destinations_by_field(const std::vector<MobilityAssignment>& assignments,
                                          const std::map<std::string, std::map<std::string, double>>& profiles,
                                          std::size_t k) {
    const FieldDestinationMatrix m = field_destination_matrix(assignments, profiles);
    TopDestinations out;
    out.scholars_counted = m.scholars_counted;
    out.excluded_unidentified = m.excluded_unidentified;
    out.excluded_no_weights = m.excluded_no_weights;
    for (const auto& [field, row] : m.cells) {
        std::vector<RankedDestination> ranked;
        for (const auto& [code, w] : row) ranked.push_back({code, w});
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const RankedDestination& a, const RankedDestination& b) { return a.scholars > b.scholars; });
        if (ranked.size() > k) ranked.resize(k);
        out.by_field[field] = std::move(ranked);
    }
    return out;
}

}  // namespace fundmob
