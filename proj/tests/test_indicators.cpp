#include "fixtures.hpp"

#include "fundmob/indicators.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace fundmob;

namespace {

using L = PeriodLabel;

PublicationRecord paper(std::string id, std::initializer_list<const char*> codes, std::vector<FieldWeight> weights) {
    auto r = fixture::with_countries(std::move(id), codes);
    r.field_weights = std::move(weights);
    return r;
}

double value(const PpIcReport& r, const char* period, const char* field) {
    return r.groups.at({period, field}).value().value();
}

FieldMap two_fields() {
    FieldMap fm;
    fm.add("f1", "A");
    fm.add("f2", "B");
    return fm;
}

}  // namespace

TEST_CASE("is_international_collab") {
    CHECK(is_international_collab(fixture::with_countries("P", {"CN", "DE"})));
    CHECK_FALSE(is_international_collab(fixture::with_countries("P", {"CN"})));
    CHECK_FALSE(is_international_collab(fixture::with_countries("P", {"CN", "CN", ""})));
    CHECK_FALSE(is_international_collab(fixture::with_countries("P", {"", ""})));
    CHECK(is_international_collab(fixture::with_countries("P", {"CN", "HK"})));
}

TEST_CASE("property: international flag ignores author order and duplicate affiliations") {
    std::mt19937 rng(41);
    const std::vector<const char*> pool = {"CN", "US", "", "DE", "CN"};
    for (int round = 0; round < 200; ++round) {
        auto r = fixture::with_countries("P", {pool[rng() % 5], pool[rng() % 5], pool[rng() % 5]});
        const bool base = is_international_collab(r);
        auto shuffled = r;
        std::shuffle(shuffled.authors.begin(), shuffled.authors.end(), rng);
        CHECK(is_international_collab(shuffled) == base);
        auto dup = r;
        for (auto& a : dup.authors) {
            auto copy = a.affiliations;
            a.affiliations.insert(a.affiliations.end(), copy.begin(), copy.end());
        }
        CHECK(is_international_collab(dup) == base);
    }
}

TEST_CASE("pp_ic basics") {
    const FieldMap fm;
    const auto a = fixture::with_countries("a", {"CN", "US"});
    const auto b = fixture::with_countries("b", {"CN", "DE"});
    const auto c = fixture::with_countries("c", {"CN"});
    const std::vector<LabeledRecord> rs = {{&a, L::During}, {&b, L::During}, {&c, L::During}};
    const auto r = pp_ic(rs, fm);
    CHECK(value(r, "During", kTotalField) == doctest::Approx(2.0 / 3.0));
    CHECK_FALSE(r.groups.at({"Before", kTotalField}).value().has_value());
    CHECK(r.groups.at({"Before", kTotalField}).denominator == 0.0);
}

TEST_CASE("pp_ic: ten-paper weighted fixture") {
    const FieldMap fm = two_fields();
    // id  label      weights          countries
    const std::vector<PublicationRecord> p = {
        paper("1", {"CN", "US"}, {{"f1", 1.0}}),                // During   intl
        paper("2", {""}, {{"f1", 0.5}, {"f2", 0.5}}),           // During   no countries
        paper("3", {"CN", "DE"}, {{"f2", 1.0}}),                // During   intl
        paper("4", {"CN"}, {{"f1", 1.0}}),                      // Before
        paper("5", {"CN", "GB"}, {{"f1", 0.25}, {"f2", 0.75}}), // Before   intl
        paper("6", {"CN"}, {{"f2", 1.0}}),                      // After
        paper("7", {"NL", "CN"}, {{"f1", 1.0}}),                // After    intl
        paper("8", {"CN", "US"}, {{"f1", 1.0}}),                // conflict intl
        paper("9", {"CN", "FR"}, {}),                           // During   intl, no weights
        paper("10", {"CN"}, {{"f2", 1.0}}),                     // gap
    };
    const std::vector<L> labels = {L::During, L::During, L::During, L::Before, L::Before,
                                   L::After,  L::After,  L::ExcludedConflict, L::During, L::ExcludedWindowGap};
    std::vector<LabeledRecord> rs;
    for (std::size_t i = 0; i < p.size(); ++i) rs.push_back({&p[i], labels[i]});

    const auto r = pp_ic(rs, fm);
    CHECK(r.records_counted == 8);
    CHECK(r.records_without_countries == 1);
    CHECK(r.groups.size() == 4 * 3);

    // hand-computed
    CHECK(value(r, "During", "Total") == doctest::Approx(3.0 / 4.0));
    CHECK(value(r, "During", "A") == doctest::Approx(1.0 / 1.5));
    CHECK(value(r, "During", "B") == doctest::Approx(1.0 / 1.5));
    CHECK(value(r, "Before", "Total") == doctest::Approx(1.0 / 2.0));
    CHECK(value(r, "Before", "A") == doctest::Approx(0.25 / 1.25));
    CHECK(value(r, "Before", "B") == doctest::Approx(1.0));
    CHECK(value(r, "After", "Total") == doctest::Approx(1.0 / 2.0));
    CHECK(value(r, "After", "A") == doctest::Approx(1.0));
    CHECK(value(r, "After", "B") == doctest::Approx(0.0));
    CHECK(value(r, "All", "Total") == doctest::Approx(5.0 / 8.0));
    CHECK(value(r, "All", "A") == doctest::Approx(2.25 / 3.75));
    CHECK(value(r, "All", "B") == doctest::Approx(1.75 / 3.25));

    const auto whole = pp_ic(rs, fm, FieldCounting::Whole);
    CHECK(value(whole, "During", "A") == doctest::Approx(1.0 / 2.0));
    CHECK(value(whole, "During", "B") == doctest::Approx(1.0 / 2.0));
    CHECK(value(whole, "Before", "A") == doctest::Approx(1.0 / 2.0));
    CHECK(value(whole, "During", "Total") == doctest::Approx(3.0 / 4.0));
}

TEST_CASE("field_distribution") {
    const FieldMap fm = two_fields();
    const auto half = paper("h", {"CN"}, {{"f1", 0.5}, {"f2", 0.5}});
    const std::vector<const PublicationRecord*> one = {&half};
    auto d = field_distribution(one, {false}, fm);
    CHECK(d.fields.at("A").total() == doctest::Approx(0.5));
    CHECK(d.fields.at("B").total() == doctest::Approx(0.5));

    CHECK(field_distribution({}, {}, fm).fields.empty());

    // four papers, two with an identified scholar
    const auto p1 = paper("1", {"CN"}, {{"f1", 1.0}});
    const auto p2 = paper("2", {"CN"}, {{"f1", 0.3}, {"f2", 0.7}});
    const auto p3 = paper("3", {"CN"}, {{"f2", 1.0}});
    const auto p4 = paper("4", {"CN"}, {{"f1", 0.6}, {"f3", 0.4}});
    const std::vector<const PublicationRecord*> four = {&p1, &p2, &p3, &p4};
    d = field_distribution(four, {true, false, true, false}, fm);
    CHECK(d.fields.at("A").identified == doctest::Approx(1.0));
    CHECK(d.fields.at("A").unidentified == doctest::Approx(0.9));
    CHECK(d.fields.at("B").identified == doctest::Approx(1.0));
    CHECK(d.fields.at("B").unidentified == doctest::Approx(0.7));
    CHECK(d.fields.at("f3").unidentified == doctest::Approx(0.4));
    CHECK(d.total_weight == doctest::Approx(4.0));
    double identified = 0.0;
    for (const auto& [f, s] : d.fields) identified += s.identified;
    CHECK(identified / d.total_weight == doctest::Approx(0.5));
}

TEST_CASE("temporal_distribution") {
    CHECK(temporal_distribution({}).totals.empty());
    auto a = fixture::record("a", {fixture::author(1, "X")}, 2009);
    auto b = fixture::record("b", {fixture::author(1, "X")}, 2009);
    auto c = fixture::record("c", {fixture::author(1, "X")}, 2010);
    a.index_tag = "SCIE";
    b.index_tag = "SSCI";
    const std::vector<const PublicationRecord*> rs = {&a, &b, &c};
    const auto t = temporal_distribution(rs);
    CHECK(t.totals == std::map<int, std::size_t>{{2009, 2}, {2010, 1}});
    CHECK(t.by_year.at(2009).at("SCIE") == 1);
    CHECK(t.by_year.at(2009).at("SSCI") == 1);
    CHECK(t.by_year.at(2010).at(kUntagged) == 1);
}

TEST_CASE("property: indicator conservation on random corpora") {
    std::mt19937 rng(43);
    const FieldMap fm = two_fields();
    const std::vector<const char*> pool = {"CN", "US", "", "DE"};
    const std::vector<L> all_labels = {L::Before, L::During, L::After, L::ExcludedConflict, L::ExcludedWindowGap};
    for (int round = 0; round < 40; ++round) {
        const int n = static_cast<int>(rng() % 200);
        std::vector<PublicationRecord> corpus;
        for (int i = 0; i < n; ++i) {
            auto r = paper(std::to_string(i), {pool[rng() % 4], pool[rng() % 4]}, {});
            const int k = static_cast<int>(rng() % 3);
            if (k == 1) r.field_weights = {{"f1", 1.0}};
            if (k == 2) {
                const double w = 0.1 * static_cast<double>(1 + rng() % 9);
                r.field_weights = {{"f1", w}, {"f2", 1.0 - w}};
            }
            r.pub_year = 2005 + static_cast<int>(rng() % 10);
            if (rng() % 2) r.index_tag = (rng() % 2) ? "SCIE" : "SSCI";
            corpus.push_back(r);
        }
        std::vector<LabeledRecord> labeled;
        std::vector<const PublicationRecord*> ptrs;
        std::vector<bool> ident;
        for (const auto& r : corpus) {
            labeled.push_back({&r, all_labels[rng() % all_labels.size()]});
            ptrs.push_back(&r);
            ident.push_back(rng() % 2 == 0);
        }

        const auto fd = field_distribution(ptrs, ident, fm);
        double total = 0.0;
        for (const auto& [f, s] : fd.fields) total += s.total();
        const auto weighted = std::count_if(corpus.begin(), corpus.end(),
                                            [](const PublicationRecord& r) { return !r.field_weights.empty(); });
        CHECK(std::abs(total - fd.total_weight) < 1e-9);
        CHECK(std::abs(fd.total_weight - static_cast<double>(weighted)) < 1e-9);
        CHECK(fd.records_without_weights + static_cast<std::size_t>(weighted) == corpus.size());

        const auto pp = pp_ic(labeled, fm);
        for (const char* field : {"Total", "A", "B"}) {
            double num = 0.0, den = 0.0;
            for (const char* period : {"Before", "During", "After"}) {
                const auto it = pp.groups.find({period, field});
                if (it == pp.groups.end()) continue;
                num += it->second.numerator;
                den += it->second.denominator;
                if (auto v = it->second.value()) {
                    CHECK(*v >= 0.0);
                    CHECK(*v <= 1.0 + 1e-12);
                }
            }
            const auto all = pp.groups.find({"All", field});
            if (all == pp.groups.end()) continue;
            CHECK(std::abs(all->second.denominator - den) < 1e-9);
            if (auto v = all->second.value()) CHECK(std::abs(*v - num / den) < 1e-9);
        }

        const auto t = temporal_distribution(ptrs);
        std::size_t grand = 0;
        for (const auto& [year, tags] : t.by_year) {
            std::size_t s = 0;
            for (const auto& [tag, c] : tags) s += c;
            CHECK(s == t.totals.at(year));
            grand += s;
        }
        CHECK(grand == corpus.size());
    }
}

TEST_CASE("property: rescaling one paper's weights leaves the others' shares alone") {
    const FieldMap fm = two_fields();
    auto a = paper("a", {"CN"}, {{"f1", 0.2}, {"f2", 0.8}});
    const auto b = paper("b", {"CN"}, {{"f1", 1.0}});
    const std::vector<const PublicationRecord*> rs = {&a, &b};
    const auto before = field_distribution(rs, {false, true}, fm);
    // scale a's weights by 3 and renormalize: same vector
    double s = 0.0;
    for (auto& fw : a.field_weights) s += fw.weight * 3.0;
    for (auto& fw : a.field_weights) fw.weight = fw.weight * 3.0 / s;
    const auto after = field_distribution(rs, {false, true}, fm);
    CHECK(after.fields.at("A").identified == doctest::Approx(before.fields.at("A").identified));
    CHECK(after.fields.at("A").unidentified == doctest::Approx(before.fields.at("A").unidentified));
    CHECK(after.total_weight == doctest::Approx(before.total_weight));
}
