#pragma once

// Independent reference implementations used only by the tests. None of
// these call into the code paths they check.

#include "fundmob/corpus.hpp"
#include "fundmob/mobility.hpp"
#include "fundmob/periods.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------- mobility

struct Decision {
    std::string outcome;  // "dest", "multi", "china"
    std::string destination;
    std::string rule;
};

/// Decision table over country-code strings, written from the textual rules:
/// count the foreign codes first, then branch.
inline Decision mobility_decision(const std::set<std::string>& own, const std::set<std::string>& coauthor) {
    int own_foreign = 0;
    std::string own_foreign_code;
    for (const auto& c : own) {
        if (c != "CN") {
            ++own_foreign;
            own_foreign_code = c;
        }
    }
    const bool own_cn = own.count("CN") == 1;
    int co_foreign = 0;
    std::string co_foreign_code;
    for (const auto& c : coauthor) {
        if (c != "CN") {
            ++co_foreign;
            co_foreign_code = c;
        }
    }
    // Table rows: (own_foreign, own_cn) -> decision.
    if (own_foreign == 1 && !own_cn) return {"dest", own_foreign_code, "OwnSingleForeign"};
    if (own_foreign == 1 && own_cn) return {"dest", own_foreign_code, "OwnChinaPlusOne"};
    if (own_foreign >= 2) return {"multi", "", "MultiForeignOwn"};
    if (co_foreign == 1) return {"dest", co_foreign_code, "CoauthorSingleForeign"};
    return {"china", "", "NoForeignSignal"};
}

/// How many of the five textual rule predicates hold, evaluated
/// independently (without the precedence order). Must always be 1.
inline int rules_holding(const std::set<std::string>& own, const std::set<std::string>& coauthor) {
    std::set<std::string> own_nf, co_nf;
    for (const auto& c : own) if (c != "CN") own_nf.insert(c);
    for (const auto& c : coauthor) if (c != "CN") co_nf.insert(c);
    const bool own_within_cn = own_nf.empty();
    int n = 0;
    n += (own.size() == 1 && own_nf.size() == 1);                    // only one country, not China
    n += (own.size() == 2 && own.count("CN") && own_nf.size() == 1);  // two countries, one is China
    n += (own_within_cn && co_nf.size() == 1);                        // China/none, co-authors one other
    n += (own_nf.size() >= 2);                                        // more than one country except China
    n += (own_within_cn && co_nf.size() != 1);                        // China/none, co-authors China or >1
    return n;
}

// ---------------------------------------------------------------- clustering

/// Connected components by breadth-first search over an adjacency matrix;
/// each component listed as sorted member indices, components sorted by
/// smallest member.
inline std::vector<std::vector<std::size_t>> connected_components(const std::vector<std::vector<bool>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<std::size_t> members;
        std::queue<std::size_t> q;
        q.push(s);
        comp[s] = static_cast<int>(out.size());
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            members.push_back(u);
            for (std::size_t v = 0; v < n; ++v) {
                if (adj[u][v] && comp[v] == -1) {
                    comp[v] = static_cast<int>(out.size());
                    q.push(v);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

// ---------------------------------------------------------------- periods

struct ToyPaper {
    int day = 0;          // days since an arbitrary epoch
    bool funded = false;  // acknowledges the funder
    std::vector<int> scholars;
};

/// Direct transcription of the period rules over integer days. Returns the
/// final label name of every paper.
inline std::vector<std::string> classify_toy(const std::vector<ToyPaper>& papers, int scholar_count) {
    std::vector<std::optional<int>> first(static_cast<std::size_t>(scholar_count));
    std::vector<std::optional<int>> last(static_cast<std::size_t>(scholar_count));
    for (const auto& p : papers) {
        if (!p.funded) continue;
        for (int s : p.scholars) {
            auto& f = first[static_cast<std::size_t>(s)];
            auto& l = last[static_cast<std::size_t>(s)];
            if (!f || p.day < *f) f = p.day;
            if (!l || p.day > *l) l = p.day;
        }
    }
    std::vector<std::string> out;
    for (const auto& p : papers) {
        if (p.funded) {
            out.push_back("During");
            continue;
        }
        bool all_before = true, all_after = true, any_gap = false;
        for (int s : p.scholars) {
            const int f = *first[static_cast<std::size_t>(s)];
            const int l = *last[static_cast<std::size_t>(s)];
            const bool earlier = p.day < f;
            const bool later = p.day > l;
            all_before = all_before && earlier;
            all_after = all_after && later;
            any_gap = any_gap || (!earlier && !later);
        }
        if (all_before) {
            out.push_back("Before");
        } else if (all_after) {
            out.push_back("After");
        } else if (any_gap && p.scholars.size() == 1) {
            out.push_back("ExcludedWindowGap");
        } else if (any_gap && std::all_of(p.scholars.begin(), p.scholars.end(), [&](int s) {
                       return p.day >= *first[static_cast<std::size_t>(s)] &&
                              p.day <= *last[static_cast<std::size_t>(s)];
                   })) {
            out.push_back("ExcludedWindowGap");
        } else {
            out.push_back("ExcludedConflict");
        }
    }
    return out;
}

// ---------------------------------------------------------------- helpers

inline fundmob::Date day_to_date(int day) {
    using namespace std::chrono;
    return year_month_day{sys_days{year{2010} / January / 1} + days{day}};
}

}  // namespace oracle
