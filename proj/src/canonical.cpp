#include "mmp/canonical.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

namespace mmp {

namespace {

// Individualization-refinement canonicalizer. Nodes 0..V-1 are vertices,
// V..V+E-1 are edges; colors keep the two sides separate throughout.
struct Canonicalizer {
    const Hypergraph& h;
    int V, E, N;
    std::vector<std::vector<int>> adj;  // bipartite incidence

    // Best leaf found so far: per-depth refinement traces plus the leaf text.
    std::vector<std::vector<int>> best_traces;
    std::string best_leaf;
    std::vector<int> best_rank;  // vertex -> rank at the best leaf
    bool have_best = false;

    // Automorphisms discovered from pairs of equal leaves. Siblings that an
    // automorphism (fixing every vertex individualized so far) maps onto an
    // already-searched sibling head isomorphic subtrees and are skipped.
    std::vector<std::vector<int>> autos;
    std::vector<int> fixed_on_path;

    explicit Canonicalizer(const Hypergraph& g)
        : h(g), V(static_cast<int>(g.vertex_count())),
          E(static_cast<int>(g.edge_count())), N(V + E), adj(N) {
        for (int e = 0; e < E; ++e)
            for (int v : g.edge(e)) {
                adj[v].push_back(V + e);
                adj[V + e].push_back(v);
            }
    }

    // Re-rank colors by (is_edge_node, signature); returns the stable
    // coloring's trace (class sizes in color order).
    std::vector<int> refine(std::vector<int>& color) const {
        int classes = 0;
        for (;;) {
            std::vector<std::pair<std::vector<int>, int>> sig(N);
            for (int n = 0; n < N; ++n) {
                std::vector<int> s;
                s.reserve(adj[n].size() + 2);
                s.push_back(n >= V);  // never mix the two sides
                s.push_back(color[n]);
                std::vector<int> nb;
                nb.reserve(adj[n].size());
                for (int m : adj[n]) nb.push_back(color[m]);
                std::sort(nb.begin(), nb.end());
                s.insert(s.end(), nb.begin(), nb.end());
                sig[n] = {std::move(s), n};
            }
            std::sort(sig.begin(), sig.end());
            int next = 0;
            for (int i = 0; i < N; ++i) {
                if (i && sig[i].first != sig[i - 1].first) ++next;
                color[sig[i].second] = next;
            }
            ++next;
            if (next == classes) break;
            classes = next;
        }
        std::vector<int> trace(classes, 0);
        for (int n = 0; n < N; ++n) ++trace[color[n]];
        return trace;
    }

    std::string leaf_string(const std::vector<int>& color) const {
        // Discrete vertex partition: vertex nodes sort before edge nodes in
        // refinement, so their colors are exactly 0..V-1 and give the order.
        std::vector<int> rank(V);
        for (int v = 0; v < V; ++v) rank[v] = color[v];
        std::vector<std::vector<int>> edges;
        edges.reserve(E);
        for (int e = 0; e < E; ++e) {
            std::vector<int> edge;
            for (int v : h.edge(e)) edge.push_back(rank[v]);
            std::sort(edge.begin(), edge.end());
            edges.push_back(std::move(edge));
        }
        std::sort(edges.begin(), edges.end());
        std::string out;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (e) out += ',';
            for (int v : edges[e]) out += vertex_label(v);
        }
        out += '.';
        return out;
    }

    // Compares the current path against the best; <0 current is better,
    // 0 undecided (prefix-equal), >0 prune.
    int compare_prefix(const std::vector<std::vector<int>>& path) const {
        if (!have_best) return -1;
        for (std::size_t d = 0; d < path.size(); ++d) {
            if (d >= best_traces.size()) return 1;
            if (path[d] != best_traces[d])
                return path[d] < best_traces[d] ? -1 : 1;
        }
        return 0;
    }

    void search(std::vector<int> color, std::vector<std::vector<int>>& path) {
        path.push_back(refine(color));
        int cmp = compare_prefix(path);
        if (cmp > 0) {
            path.pop_back();
            return;
        }
        // Smallest non-singleton vertex class (by color) is the target cell.
        std::vector<int> count(N, 0);
        for (int v = 0; v < V; ++v) ++count[color[v]];
        int target = -1, target_size = N + 1;
        for (int c = 0; c < N; ++c)
            if (count[c] > 1 && count[c] < target_size) {
                target_size = count[c];
                target = c;
            }
        if (target < 0) {
            std::string leaf = leaf_string(color);
            if (!have_best || cmp < 0 ||
                (cmp == 0 && leaf < best_leaf)) {
                have_best = true;
                best_traces = path;
                best_leaf = leaf;
                best_rank.assign(color.begin(), color.begin() + V);
            } else if (cmp == 0 && leaf == best_leaf) {
                // Two distinct labelings with the same text: the rank
                // composition is an automorphism.
                std::vector<int> inv(V);
                for (int v = 0; v < V; ++v) inv[best_rank[v]] = v;
                std::vector<int> sigma(V);
                bool identity = true;
                for (int v = 0; v < V; ++v) {
                    sigma[v] = inv[color[v]];
                    identity &= sigma[v] == v;
                }
                if (!identity) autos.push_back(std::move(sigma));
            }
            path.pop_back();
            return;
        }
        std::vector<int> cell;
        for (int v = 0; v < V; ++v)
            if (color[v] == target) cell.push_back(v);
        std::vector<int> tried;
        for (int v : cell) {
            if (in_tried_orbit(v, tried)) continue;
            tried.push_back(v);
            fixed_on_path.push_back(v);
            std::vector<int> child = color;
            child[v] += N;  // individualize: split v off its class
            search(std::move(child), path);
            fixed_on_path.pop_back();
        }
        path.pop_back();
    }

    // True when a product of discovered automorphisms that fix the current
    // path maps v onto a sibling already searched (union-find over orbits).
    bool in_tried_orbit(int v, const std::vector<int>& tried) const {
        if (autos.empty() || tried.empty()) return false;
        std::vector<int> parent(V);
        for (int u = 0; u < V; ++u) parent[u] = u;
        auto find = [&](int u) {
            while (parent[u] != u) u = parent[u] = parent[parent[u]];
            return u;
        };
        for (const auto& sigma : autos) {
            bool fixes_path = true;
            for (int w : fixed_on_path)
                if (sigma[w] != w) {
                    fixes_path = false;
                    break;
                }
            if (!fixes_path) continue;
            for (int u = 0; u < V; ++u) {
                int a = find(u), b = find(sigma[u]);
                if (a != b) parent[a] = b;
            }
        }
        for (int u : tried)
            if (find(u) == find(v)) return true;
        return false;
    }

    std::string run() {
        std::vector<int> color(N, 0);
        // Seed colors: vertices by (degree, incident edge sizes), edges by
        // (size, member degrees); refine normalizes the ranks.
        std::vector<std::pair<std::vector<int>, int>> seed(N);
        for (int v = 0; v < V; ++v) {
            std::vector<int> s{0, h.degree(v)};
            std::vector<int> sizes;
            for (int e : h.incident(v))
                sizes.push_back(static_cast<int>(h.edge(e).size()));
            std::sort(sizes.begin(), sizes.end());
            s.insert(s.end(), sizes.begin(), sizes.end());
            seed[v] = {std::move(s), v};
        }
        for (int e = 0; e < E; ++e) {
            std::vector<int> s{1, static_cast<int>(h.edge(e).size())};
            std::vector<int> degs;
            for (int v : h.edge(e)) degs.push_back(h.degree(v));
            std::sort(degs.begin(), degs.end());
            s.insert(s.end(), degs.begin(), degs.end());
            seed[V + e] = {std::move(s), V + e};
        }
        std::sort(seed.begin(), seed.end());
        int next = 0;
        for (int i = 0; i < N; ++i) {
            if (i && seed[i].first != seed[i - 1].first) ++next;
            color[seed[i].second] = next;
        }
        std::vector<std::vector<int>> path;
        search(std::move(color), path);
        return best_leaf;
    }
};

}  // namespace

std::string canonical_form(const Hypergraph& h) {
    return Canonicalizer(h).run();
}

std::vector<std::vector<int>> automorphism_generators(const Hypergraph& h) {
    Canonicalizer c(h);
    c.run();
    return std::move(c.autos);
}

std::uint64_t canonical_hash(const Hypergraph& h) {
    std::string s = canonical_form(h);
    // FNV-1a
    std::uint64_t x = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) x = (x ^ c) * 0x100000001b3ULL;
    return x;
}

bool DedupStore::insert(const Hypergraph& h, std::uint64_t multiplicity) {
    return insert_canonical(canonical_form(h), h.serialize(), multiplicity);
}

bool DedupStore::insert_canonical(const std::string& canon,
                                  const std::string& original,
                                  std::uint64_t multiplicity) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, fresh] = entries_.try_emplace(canon);
    if (fresh) it->second.representative = original;
    it->second.count += multiplicity;
    return fresh;
}

void DedupStore::merge(const DedupStore& other) {
    for (const auto& [canon, entry] : other.entries_)
        insert_canonical(canon, entry.representative, entry.count);
}

void DedupStore::save(const std::string& path) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::ofstream out(path);
    if (!out) throw MmpError("cannot write '" + path + "'");
    for (const auto& [canon, entry] : entries_)
        out << canon << '\t' << entry.representative << '\t' << entry.count
            << '\n';
}

DedupStore DedupStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MmpError("cannot open '" + path + "'");
    DedupStore s;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto t1 = line.find('\t');
        auto t2 = line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw MmpError("malformed dedup checkpoint line");
        s.insert_canonical(line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                           std::stoull(line.substr(t2 + 1)));
    }
    return s;
}

}  // namespace mmp
