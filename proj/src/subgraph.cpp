#include "mmp/subgraph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "mmp/canonical.hpp"

namespace mmp {

namespace {

using Clock = std::chrono::steady_clock;

struct BitSet {
    std::vector<std::uint64_t> w;
    explicit BitSet(std::size_t bits = 0) : w((bits + 63) / 64, 0) {}
    void set(std::size_t i) { w[i >> 6] |= 1ULL << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void and_with(const BitSet& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] &= o.w[k];
    }
    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w.size(); ++k)
            for (std::uint64_t x = w[k]; x; x &= x - 1)
                f(k * 64 + std::countr_zero(x));
    }
};

int intersection_size(const BitSet& x, const BitSet& y) {
    int c = 0;
    for (std::size_t k = 0; k < x.w.size(); ++k)
        c += std::popcount(x.w[k] & y.w[k]);
    return c;
}

struct Embedder {
    const Hypergraph& a;
    const Hypergraph& b;
    std::vector<BitSet> bset;       // b edge -> member bitset
    std::vector<std::vector<int>> inter_a;
    std::vector<int> order;         // a edge slots
    std::vector<int> placed;        // slot -> b edge (or -1)
    std::vector<std::uint8_t> used; // b edge used
    std::vector<std::uint8_t> root_rep;  // b edge is an orbit representative
    std::uint64_t nodes = 0;
    Clock::time_point deadline{};
    bool budgeted = false, out_of_time = false;

    Embedder(const Hypergraph& a_, const Hypergraph& b_, SolveBudget budget)
        : a(a_), b(b_) {
        bset.reserve(b.edge_count());
        for (const auto& e : b.edges()) {
            BitSet s(b.vertex_count());
            for (int v : e) s.set(v);
            bset.push_back(std::move(s));
        }
        inter_a.assign(a.edge_count(), std::vector<int>(a.edge_count(), 0));
        for (std::size_t i = 0; i < a.edge_count(); ++i) {
            std::vector<bool> in(a.vertex_count(), false);
            for (int v : a.edge(i)) in[v] = true;
            for (std::size_t j = 0; j < a.edge_count(); ++j)
                for (int v : a.edge(j)) inter_a[i][j] += in[v];
        }
        // Place edges most-connected-to-already-placed first.
        std::vector<bool> done(a.edge_count(), false);
        for (std::size_t k = 0; k < a.edge_count(); ++k) {
            int best = -1, best_links = -1;
            for (std::size_t e = 0; e < a.edge_count(); ++e) {
                if (done[e]) continue;
                int links = 0;
                for (int f : order) links += inter_a[e][f] > 0;
                if (links > best_links) {
                    best_links = links;
                    best = static_cast<int>(e);
                }
            }
            done[best] = true;
            order.push_back(best);
        }
        placed.assign(a.edge_count(), -1);
        used.assign(b.edge_count(), 0);
        root_rep.assign(b.edge_count(), 1);
        // Symmetric targets make every root choice within an edge orbit
        // equivalent: only orbit representatives need searching. Worth the
        // canonicalization cost once the target is large.
        if (b.edge_count() >= 100) {
            auto gens = automorphism_generators(b);
            if (!gens.empty()) {
                std::map<std::vector<int>, int> index;
                for (std::size_t f = 0; f < b.edge_count(); ++f) {
                    std::vector<int> key = b.edge(f);
                    std::sort(key.begin(), key.end());
                    index.emplace(std::move(key), static_cast<int>(f));
                }
                std::vector<int> parent(b.edge_count());
                for (std::size_t f = 0; f < b.edge_count(); ++f)
                    parent[f] = static_cast<int>(f);
                auto find = [&](int x) {
                    while (parent[x] != x) x = parent[x] = parent[parent[x]];
                    return x;
                };
                for (const auto& sigma : gens)
                    for (std::size_t f = 0; f < b.edge_count(); ++f) {
                        std::vector<int> img;
                        for (int v : b.edge(f)) img.push_back(sigma[v]);
                        std::sort(img.begin(), img.end());
                        int g = index.at(img);
                        int x = find(static_cast<int>(f)), y = find(g);
                        if (x != y) parent[x] = y;
                    }
                std::vector<std::uint8_t> seen(b.edge_count(), 0);
                for (std::size_t f = 0; f < b.edge_count(); ++f) {
                    int r = find(static_cast<int>(f));
                    root_rep[f] = !seen[r];
                    seen[r] = 1;
                }
            }
        }
        if (!budget.unlimited()) {
            budgeted = true;
            deadline = Clock::now() + budget.time;
        }
    }

    bool time_up() {
        if (budgeted && (nodes & 0xff) == 0 && Clock::now() >= deadline)
            out_of_time = true;
        return out_of_time;
    }

    std::vector<int> result_map;

    // Checks that the constrained a-vertices (those with a placed incident
    // edge) admit an injective assignment into b-vertices via Kuhn matching.
    // When `out` is given, stores the matched map (a-vertex -> b-vertex).
    bool vertices_feasible(std::vector<int>* out = nullptr) const {
        std::vector<int> slot_of(a.edge_count(), -1);
        for (std::size_t s = 0; s < order.size(); ++s)
            if (placed[s] >= 0) slot_of[order[s]] = static_cast<int>(s);
        std::vector<std::vector<int>> cand;
        std::vector<int> vert_of_row;
        for (std::size_t v = 0; v < a.vertex_count(); ++v) {
            BitSet c;
            int constrained = 0;
            for (int e : a.incident(static_cast<int>(v))) {
                if (slot_of[e] < 0) continue;
                const BitSet& img = bset[placed[slot_of[e]]];
                if (!constrained++) {
                    c = img;
                } else {
                    c.and_with(img);
                }
            }
            if (!constrained) continue;
            std::vector<int> list;
            int deg_v = a.degree(static_cast<int>(v));
            c.for_each([&](std::size_t w) {
                if (b.degree(static_cast<int>(w)) >= deg_v)
                    list.push_back(static_cast<int>(w));
            });
            if (list.empty()) return false;
            cand.push_back(std::move(list));
            vert_of_row.push_back(static_cast<int>(v));
        }
        // Kuhn augmenting paths.
        std::vector<int> match_b(b.vertex_count(), -1);
        std::vector<int> visited(b.vertex_count(), -1);
        std::vector<int> match_a(cand.size(), -1);
        std::function<bool(int, int)> try_match = [&](int u, int stamp) {
            for (int w : cand[u]) {
                if (visited[w] == stamp) continue;
                visited[w] = stamp;
                if (match_b[w] < 0 || try_match(match_b[w], stamp)) {
                    match_b[w] = u;
                    match_a[u] = w;
                    return true;
                }
            }
            return false;
        };
        for (std::size_t u = 0; u < cand.size(); ++u)
            if (!try_match(static_cast<int>(u), static_cast<int>(u))) return false;
        if (out) {
            out->assign(a.vertex_count(), -1);
            for (std::size_t u = 0; u < cand.size(); ++u)
                (*out)[vert_of_row[u]] = match_a[u];
        }
        return true;
    }

    Tri search(std::size_t slot) {
        ++nodes;
        if (time_up()) return Tri::Unknown;
        if (slot == order.size())
            return vertices_feasible(&result_map) ? Tri::Yes : Tri::No;
        int ae = order[slot];
        std::size_t want = a.edge(ae).size();
        for (std::size_t f = 0; f < b.edge_count(); ++f) {
            if (used[f] || b.edge(f).size() != want) continue;
            if (slot == 0 && !root_rep[f]) continue;
            bool ok = true;
            for (std::size_t s = 0; s < slot && ok; ++s)
                if (inter_a[ae][order[s]] >
                    intersection_size(bset[f], bset[placed[s]]))
                    ok = false;
            if (!ok) continue;
            placed[slot] = static_cast<int>(f);
            used[f] = 1;
            if (vertices_feasible()) {
                Tri r = search(slot + 1);
                if (r != Tri::No) return r;
            }
            placed[slot] = -1;
            used[f] = 0;
            if (time_up()) return Tri::Unknown;
        }
        return Tri::No;
    }
};

}  // namespace

SubgraphResult find_embedding(const Hypergraph& a, const Hypergraph& b,
                              SolveBudget budget) {
    SubgraphResult r;
    if (a.vertex_count() > b.vertex_count() || a.edge_count() > b.edge_count()) {
        r.contained = Tri::No;
        return r;
    }
    Embedder em(a, b, budget);
    r.contained = em.search(0);
    r.nodes = em.nodes;
    if (r.contained == Tri::Yes) r.vertex_map = em.result_map;
    return r;
}

Tri is_subgraph(const Hypergraph& a, const Hypergraph& b, SolveBudget budget) {
    return find_embedding(a, b, budget).contained;
}

bool check_embedding(const Hypergraph& a, const Hypergraph& b,
                     const std::vector<int>& map) {
    if (map.size() != a.vertex_count()) return false;
    std::vector<std::uint8_t> taken(b.vertex_count(), 0);
    for (int w : map) {
        if (w < 0 || w >= static_cast<int>(b.vertex_count()) || taken[w])
            return false;
        taken[w] = 1;
    }
    std::set<std::vector<int>> b_edges;
    for (const auto& e : b.edges()) {
        std::vector<int> key = e;
        std::sort(key.begin(), key.end());
        b_edges.insert(std::move(key));
    }
    for (const auto& e : a.edges()) {
        std::vector<int> img;
        for (int v : e) img.push_back(map[v]);
        std::sort(img.begin(), img.end());
        if (!b_edges.count(img)) return false;
    }
    return true;
}

}  // namespace mmp
