#include "fundmob/disambig.hpp"

#include "fundmob/parallel.hpp"
#include "fundmob/text.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fundmob {

namespace {

std::string first_code_point(const std::string& s) {
    if (s.empty()) return {};
    std::size_t n = 1;
    while (n < s.size() && (static_cast<unsigned char>(s[n]) & 0xC0) == 0x80) ++n;
    return s.substr(0, n);
}

// Given-name initials as a letter sequence: "Zhi-Chao" -> "zc", "X.H." -> "xh".
std::string initial_sequence(const Authorship& a) {
    std::string out;
    if (a.first_name) {
        std::string cur;
        for (char c : text::normalize(*a.first_name) + " ") {
            if (c == '-' || c == ' ' || c == '.') {
                if (!cur.empty()) out += first_code_point(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
    } else if (a.initials) {
        for (char c : text::normalize(*a.initials)) {
            if (c != '-' && c != ' ' && c != '.') out.push_back(c);
        }
    }
    return out;
}

std::string compact_first_name(const Authorship& a) {
    std::string out;
    for (char c : text::normalize(*a.first_name)) {
        if (c != '-' && c != ' ' && c != '.') out.push_back(c);
    }
    return out;
}

// Full first names (longer than an initial) on both sides that differ, or
// initial sequences where neither is a prefix of the other.
bool names_conflict(const Authorship& a, const Authorship& b) {
    if (a.first_name && b.first_name) {
        const std::string fa = compact_first_name(a);
        const std::string fb = compact_first_name(b);
        if (fa.size() > 1 && fb.size() > 1 && fa != fb) return true;
    }
    const std::string ia = initial_sequence(a);
    const std::string ib = initial_sequence(b);
    const std::size_t n = std::min(ia.size(), ib.size());
    return ia.compare(0, n, ib, 0, n) != 0;
}

std::set<std::string> org_set(const Authorship& a) {
    std::set<std::string> out;
    for (const auto& af : a.affiliations) {
        std::string o = text::normalize(af.org_name);
        if (!o.empty()) out.insert(std::move(o));
    }
    return out;
}

std::set<std::string> coauthor_keys(const PublicationRecord& r, int self_position) {
    std::set<std::string> out;
    for (const auto& a : r.authors) {
        if (a.position == self_position) continue;
        BlockKey k = block_key(a);
        out.insert(k.last_name + " " + k.first_initial);
    }
    return out;
}

std::set<std::string> funder_set(const PublicationRecord& r) {
    std::set<std::string> out;
    for (const auto& f : r.funding_orgs) {
        std::string n = text::normalize(f);
        if (!n.empty()) out.insert(std::move(n));
    }
    return out;
}

template <typename T>
bool intersects(const std::set<T>& a, const std::set<T>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            return true;
        }
    }
    return false;
}

bool cites(const PublicationRecord& from, const std::string& to) {
    return std::find(from.cited_pub_ids.begin(), from.cited_pub_ids.end(), to) != from.cited_pub_ids.end();
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Root is always the smaller index so results are order-independent.
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

std::string modal_full_name(const AuthorshipIndex& index, const std::vector<AuthorshipKey>& members) {
    std::map<std::string, int> counts;
    for (const auto& k : members) ++counts[index.author(k).full_name];
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

std::vector<ResearcherCluster> build_clusters(const AuthorshipIndex& index,
                                              const std::vector<AuthorshipKey>& keys, DisjointSets& sets) {
    std::map<std::size_t, std::vector<AuthorshipKey>> groups;
    for (std::size_t i = 0; i < keys.size(); ++i) groups[sets.find(i)].push_back(keys[i]);
    std::vector<ResearcherCluster> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        ResearcherCluster c;
        c.cluster_id = members.front().to_string();
        c.display_name = modal_full_name(index, members);
        c.members = std::move(members);
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const ResearcherCluster& a, const ResearcherCluster& b) { return a.members.front() < b.members.front(); });
    return out;
}

}  // namespace

// ---------------------------------------------------------------- config

void ScoringWeights::validate() const {
    for (double w : {email, affiliation, coauthor, funder, first_name, self_citation}) {
        if (!(w >= 0.0)) throw std::invalid_argument("disambiguation weights must be >= 0");
    }
    if (!(threshold > 0.0)) throw std::invalid_argument("disambiguation threshold must be > 0");
}

ScoringWeights ScoringWeights::load(std::istream& in) {
    ScoringWeights w;
    const std::map<std::string, double ScoringWeights::*> fields = {
        {"email", &ScoringWeights::email},
        {"affiliation", &ScoringWeights::affiliation},
        {"coauthor", &ScoringWeights::coauthor},
        {"funder", &ScoringWeights::funder},
        {"first_name", &ScoringWeights::first_name},
        {"self_citation", &ScoringWeights::self_citation},
        {"threshold", &ScoringWeights::threshold},
    };
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::string t = text::trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("disambiguation config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = text::trim(t.substr(0, eq));
        std::string value = text::trim(t.substr(eq + 1));
        auto it = fields.find(key);
        if (it == fields.end()) {
            throw std::runtime_error("disambiguation config line " + std::to_string(lineno) + ": unknown key \"" + key + "\"");
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size() || value.empty()) {
            throw std::runtime_error("disambiguation config line " + std::to_string(lineno) + ": bad number \"" + value + "\"");
        }
        w.*(it->second) = v;
    }
    w.validate();
    return w;
}

ScoringWeights ScoringWeights::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open disambiguation config: " + path.string());
    return load(in);
}

std::vector<ManualOverride> load_overrides(std::istream& in) {
    std::vector<ManualOverride> out;
    std::string line;
    std::size_t lineno = 0;
    auto position = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || v < 1) {
            throw std::runtime_error("overrides line " + std::to_string(lineno) + ": bad position \"" + s + "\"");
        }
        return v;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = text::trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto f = text::split(t, '\t');
        if (f.size() != 5) {
            throw std::runtime_error("overrides line " + std::to_string(lineno) + ": expected 5 tab-separated fields");
        }
        for (auto& x : f) x = text::trim(x);
        ManualOverride o;
        o.first = {f[0], position(f[1])};
        o.second = {f[2], position(f[3])};
        if (f[4] == "MERGE") {
            o.action = OverrideAction::Merge;
        } else if (f[4] == "SPLIT") {
            o.action = OverrideAction::Split;
        } else {
            throw std::runtime_error("overrides line " + std::to_string(lineno) + ": action must be MERGE or SPLIT");
        }
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<ManualOverride> load_overrides_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open overrides file: " + path.string());
    return load_overrides(in);
}

// ---------------------------------------------------------------- index

AuthorshipIndex::AuthorshipIndex(const std::vector<PublicationRecord>& corpus) : corpus_(&corpus) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!by_id_.emplace(corpus[i].pub_id, i).second) {
            throw std::invalid_argument("duplicate pub_id \"" + corpus[i].pub_id + "\"");
        }
    }
}

const PublicationRecord* AuthorshipIndex::find_record(const std::string& pub_id) const {
    auto it = by_id_.find(pub_id);
    return it == by_id_.end() ? nullptr : &(*corpus_)[it->second];
}

bool AuthorshipIndex::contains(const AuthorshipKey& key) const {
    const PublicationRecord* r = find_record(key.pub_id);
    return r && r->author_at(key.position);
}

const PublicationRecord& AuthorshipIndex::record(const AuthorshipKey& key) const {
    const PublicationRecord* r = find_record(key.pub_id);
    if (!r) throw std::out_of_range("unknown pub_id \"" + key.pub_id + "\"");
    return *r;
}

const Authorship& AuthorshipIndex::author(const AuthorshipKey& key) const {
    const Authorship* a = record(key).author_at(key.position);
    if (!a) throw std::out_of_range("no author " + key.to_string());
    return *a;
}

// ---------------------------------------------------------------- blocking & scoring

BlockKey block_key(const Authorship& author) {
    BlockKey k;
    k.last_name = text::normalize(author.last_name);
    k.first_initial = first_code_point(initial_sequence(author));
    return k;
}

std::vector<Block> block_authorships(const std::vector<PublicationRecord>& corpus) {
    std::map<BlockKey, std::vector<AuthorshipKey>> blocks;
    for (const auto& r : corpus) {
        for (const auto& a : r.authors) blocks[block_key(a)].push_back({r.pub_id, a.position});
    }
    std::vector<Block> out;
    out.reserve(blocks.size());
    for (auto& [key, members] : blocks) {
        std::sort(members.begin(), members.end());
        out.push_back({key, std::move(members)});
    }
    return out;
}

double score_pair(const AuthorshipIndex& index, const AuthorshipKey& a, const AuthorshipKey& b,
                  const ScoringWeights& weights) {
    if (a.pub_id == b.pub_id) return 0.0;
    const PublicationRecord& ra = index.record(a);
    const PublicationRecord& rb = index.record(b);
    const Authorship& aa = index.author(a);
    const Authorship& ab = index.author(b);
    if (names_conflict(aa, ab)) return 0.0;

    double score = 0.0;
    if (aa.email && ab.email && text::ascii_lower(text::trim(*aa.email)) == text::ascii_lower(text::trim(*ab.email))) {
        score += weights.email;
    }
    if (intersects(org_set(aa), org_set(ab))) score += weights.affiliation;
    if (intersects(coauthor_keys(ra, a.position), coauthor_keys(rb, b.position))) score += weights.coauthor;
    if (intersects(funder_set(ra), funder_set(rb))) score += weights.funder;
    if (aa.first_name && ab.first_name && compact_first_name(aa).size() > 1 &&
        compact_first_name(aa) == compact_first_name(ab)) {
        score += weights.first_name;
    }
    if (cites(ra, rb.pub_id) || cites(rb, ra.pub_id)) score += weights.self_citation;
    return score;
}

// ---------------------------------------------------------------- clustering

std::vector<ResearcherCluster> cluster_block(const AuthorshipIndex& index, const Block& block,
                                             const ScoringWeights& weights,
                                             std::span<const ManualOverride> overrides) {
    const auto& keys = block.members;
    const std::size_t n = keys.size();
    auto slot = [&](const AuthorshipKey& k) -> std::size_t {
        auto it = std::lower_bound(keys.begin(), keys.end(), k);
        return (it != keys.end() && *it == k) ? static_cast<std::size_t>(it - keys.begin()) : n;
    };

    std::vector<std::pair<std::size_t, std::size_t>> forced;
    std::vector<std::pair<std::size_t, std::size_t>> cannot_link;
    for (const auto& o : overrides) {
        std::size_t i = slot(o.first), j = slot(o.second);
        if (i == n || j == n || i == j) continue;
        (o.action == OverrideAction::Merge ? forced : cannot_link).emplace_back(i, j);
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges = forced;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool vetoed = std::any_of(cannot_link.begin(), cannot_link.end(), [&](auto p) {
                return (p.first == i && p.second == j) || (p.first == j && p.second == i);
            });
            if (!vetoed && score_pair(index, keys[i], keys[j], weights) >= weights.threshold) edges.emplace_back(i, j);
        }
    }

    DisjointSets sets(n);
    for (auto [i, j] : edges) {
        const std::size_t ri = sets.find(i), rj = sets.find(j);
        if (ri == rj) continue;
        bool blocked = std::any_of(cannot_link.begin(), cannot_link.end(), [&](auto p) {
            const std::size_t a = sets.find(p.first), b = sets.find(p.second);
            return (a == ri && b == rj) || (a == rj && b == ri);
        });
        if (!blocked) sets.unite(ri, rj);
    }
    return build_clusters(index, keys, sets);
}

std::vector<ResearcherCluster> cluster_corpus(const AuthorshipIndex& index, const std::vector<Block>& blocks,
                                              const ScoringWeights& weights,
                                              std::span<const ManualOverride> overrides, unsigned threads) {
    std::vector<std::vector<ResearcherCluster>> per_block(blocks.size());
    parallel_for(blocks.size(), threads,
                 [&](std::size_t i) { per_block[i] = cluster_block(index, blocks[i], weights, overrides); });

    std::vector<ResearcherCluster> flat;
    for (auto& v : per_block) {
        for (auto& c : v) flat.push_back(std::move(c));
    }

    std::map<AuthorshipKey, std::size_t> owner;
    for (std::size_t c = 0; c < flat.size(); ++c) {
        for (const auto& m : flat[c].members) owner[m] = c;
    }
    DisjointSets sets(flat.size());
    for (const auto& o : overrides) {
        if (o.action != OverrideAction::Merge) continue;
        auto a = owner.find(o.first), b = owner.find(o.second);
        if (a != owner.end() && b != owner.end()) sets.unite(a->second, b->second);
    }

    std::map<std::size_t, std::vector<AuthorshipKey>> merged;
    for (std::size_t c = 0; c < flat.size(); ++c) {
        auto& dst = merged[sets.find(c)];
        dst.insert(dst.end(), flat[c].members.begin(), flat[c].members.end());
    }
    std::vector<ResearcherCluster> out;
    out.reserve(merged.size());
    for (auto& [root, members] : merged) {
        std::sort(members.begin(), members.end());
        ResearcherCluster c;
        c.cluster_id = members.front().to_string();
        c.display_name = modal_full_name(index, members);
        c.members = std::move(members);
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const ResearcherCluster& a, const ResearcherCluster& b) { return a.members.front() < b.members.front(); });
    return out;
}

}  // namespace fundmob
