#include "mmp/loops.hpp"

#include <algorithm>
#include <chrono>

namespace mmp {

namespace {

using Clock = std::chrono::steady_clock;

struct LoopSearch {
    const Hypergraph& h;
    int E;
    // adj[e] = (neighbor edge, shared vertices)
    std::vector<std::vector<std::pair<int, std::vector<int>>>> adj;
    std::vector<std::vector<std::uint8_t>> inter;  // pairwise intersection
    std::vector<std::uint8_t> used_edge, used_vertex;
    std::vector<int> path_edges, path_links;
    int start = 0;
    LoopReport best;
    std::uint64_t nodes = 0;
    Clock::time_point deadline{};
    bool budgeted = false, out_of_time = false;

    explicit LoopSearch(const Hypergraph& g, SolveBudget budget)
        : h(g), E(static_cast<int>(g.edge_count())), adj(E),
          inter(E, std::vector<std::uint8_t>(E, 0)),
          used_edge(E, 0), used_vertex(g.vertex_count(), 0) {
        for (int e = 0; e < E; ++e) {
            std::vector<bool> in(g.vertex_count(), false);
            for (int v : g.edge(e)) in[v] = true;
            for (int f = e + 1; f < E; ++f) {
                std::vector<int> shared;
                for (int v : g.edge(f))
                    if (in[v]) shared.push_back(v);
                if (!shared.empty()) {
                    adj[e].emplace_back(f, shared);
                    adj[f].emplace_back(e, shared);
                    inter[e][f] = inter[f][e] = 1;
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

    // Upper bound on the closable cycle length through `cur`: path length
    // plus unused edges reachable via unused vertices. Returns -1 when the
    // start edge cannot be reached again.
    int bound_from(int cur) const {
        std::vector<std::uint8_t> seen(E, 0);
        std::vector<int> queue{cur};
        seen[cur] = 1;
        int extra = 0;
        bool start_reachable = false;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int e = queue[q];
            for (const auto& [f, shared] : adj[e]) {
                if (f == start) {
                    for (int v : shared)
                        if (!used_vertex[v]) start_reachable = true;
                }
                if (seen[f] || used_edge[f] || f < start) continue;
                bool linkable = false;
                for (int v : shared)
                    if (!used_vertex[v]) linkable = true;
                if (!linkable) continue;
                seen[f] = 1;
                ++extra;
                queue.push_back(f);
            }
        }
        if (!start_reachable) return -1;
        return static_cast<int>(path_edges.size()) + extra;
    }

    void record_if_better(int closing_vertex) {
        int len = static_cast<int>(path_edges.size());
        if (len <= best.max_loop_length) return;
        best.max_loop_length = len;
        best.edges = path_edges;
        best.link_vertices = path_links;
        best.link_vertices.push_back(closing_vertex);
    }

    // `must_close` marks a frontier edge that already touches the start edge
    // without being its cycle neighbour yet: the loop has to close here.
    void dfs(int cur, bool must_close) {
        ++nodes;
        if (time_up()) return;
        if (path_edges.size() >= 2) {
            for (const auto& [f, shared] : adj[cur])
                if (f == start)
                    for (int v : shared)
                        if (!used_vertex[v]) {
                            record_if_better(v);
                            break;
                        }
        }
        if (must_close) return;
        int ub = bound_from(cur);
        if (ub <= best.max_loop_length) return;
        for (const auto& [f, shared] : adj[cur]) {
            if (used_edge[f] || f < start) continue;
            // In a drawable loop only cycle neighbours intersect: reject any
            // extension touching an interior path edge; touching the start
            // edge commits the extension to close the loop immediately.
            bool chord = false, touches_start = false;
            for (int g : path_edges) {
                if (g == cur || !inter[f][g]) continue;
                if (g == start) touches_start = true;
                else { chord = true; break; }
            }
            if (chord) continue;
            for (int v : shared) {
                if (used_vertex[v]) continue;
                used_edge[f] = 1;
                used_vertex[v] = 1;
                path_edges.push_back(f);
                path_links.push_back(v);
                dfs(f, touches_start);
                path_links.pop_back();
                path_edges.pop_back();
                used_vertex[v] = 0;
                used_edge[f] = 0;
                if (out_of_time) return;
            }
        }
    }

    LoopReport run() {
        for (start = 0; start < E && !out_of_time; ++start) {
            // Cycles are counted from their lowest-index edge.
            used_edge[start] = 1;
            path_edges.push_back(start);
            dfs(start, false);
            path_edges.pop_back();
            used_edge[start] = 0;
        }
        best.exact = !out_of_time;
        return best;
    }
};

}  // namespace

LoopReport maximal_loop(const Hypergraph& h, SolveBudget budget) {
    return LoopSearch(h, budget).run();
}

}  // namespace mmp
