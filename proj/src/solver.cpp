#include "mmp/solver.hpp"

#include <algorithm>
#include <numeric>

namespace mmp {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

using Clock = std::chrono::steady_clock;

// Backtracking search state shared by is_ks and max_ones_witness.
// Vertex values: 0 free, 1 one, 2 zero.
struct Search {
    const Hypergraph& h;
    std::vector<std::uint8_t> value;
    std::vector<std::uint8_t> has_one;   // per edge
    std::vector<int> free_count;         // per edge
    std::vector<int> trail;              // vertices assigned, for undo
    std::uint64_t nodes = 0;
    Clock::time_point deadline{};
    bool budgeted = false;
    bool out_of_time = false;

    explicit Search(const Hypergraph& g, SolveBudget budget)
        : h(g), value(g.vertex_count(), 0), has_one(g.edge_count(), 0),
          free_count(g.edge_count(), 0) {
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            free_count[e] = static_cast<int>(g.edge(e).size());
        if (!budget.unlimited()) {
            budgeted = true;
            deadline = Clock::now() + budget.time;
        }
    }

    bool time_up() {
        if (budgeted && (nodes & 0x3ff) == 0 && Clock::now() >= deadline)
            out_of_time = true;
        return out_of_time;
    }

    // Sets v to `val`, updating edge counters. Returns false on a conflict:
    // some edge left with no 1 and no free vertex.
    bool assign(int v, std::uint8_t val) {
        value[v] = val;
        trail.push_back(v);
        for (int e : h.incident(v)) {
            --free_count[e];
            if (val == 1) has_one[e] = 1;
            else if (!has_one[e] && free_count[e] == 0) return false;
        }
        return true;
    }

    // Assign 1 to v and 0 to every free co-edge vertex.
    bool place_one(int v) {
        if (!assign(v, 1)) return false;
        for (int e : h.incident(v))
            for (int u : h.edge(e))
                if (value[u] == 0 && !assign(u, 2)) return false;
        return true;
    }

    void rewind(std::size_t mark) {
        while (trail.size() > mark) {
            int v = trail.back();
            trail.pop_back();
            std::uint8_t val = value[v];
            value[v] = 0;
            for (int e : h.incident(v)) {
                ++free_count[e];
                if (val == 1) has_one[e] = 0;
            }
        }
    }

    // Exhaustive search for an assignment with exactly one 1 per edge over
    // the edges in `scope`. Returns Tri::No if none exists, Yes if found
    // (the satisfying 1s are left in `value`). Unsatisfied edges that share
    // no free vertex are independent, so the scope is split into connected
    // components and each is decided on its own: one unsatisfiable fragment
    // refutes the whole scope without re-enumerating the others.
    Tri find_full(const std::vector<int>& scope) {
        ++nodes;
        if (time_up()) return Tri::Unknown;
        std::vector<int> unsat;
        int best = -1, best_free = INT32_MAX;
        for (int e : scope) {
            if (has_one[e]) continue;
            unsat.push_back(e);
            if (free_count[e] < best_free) {
                best_free = free_count[e];
                best = e;
            }
        }
        if (best < 0) return Tri::Yes;  // every edge has its 1
        if (best_free == 0) return Tri::No;

        // Component of each unsatisfied edge, grown through free vertices.
        std::vector<std::vector<int>> comps;
        {
            std::vector<std::uint8_t> pending(unsat.size(), 1);
            std::vector<int> edge_slot(h.edge_count(), -1);
            for (std::size_t i = 0; i < unsat.size(); ++i)
                edge_slot[unsat[i]] = static_cast<int>(i);
            for (std::size_t i = 0; i < unsat.size(); ++i) {
                if (!pending[i]) continue;
                std::vector<int> comp{unsat[i]};
                pending[i] = 0;
                for (std::size_t q = 0; q < comp.size(); ++q)
                    for (int v : h.edge(comp[q])) {
                        if (value[v] != 0) continue;
                        for (int f : h.incident(v)) {
                            int slot = edge_slot[f];
                            if (slot >= 0 && pending[slot]) {
                                pending[slot] = 0;
                                comp.push_back(f);
                            }
                        }
                    }
                comps.push_back(std::move(comp));
            }
        }
        // Most constrained component first: fail fast on the tight fragment.
        std::sort(comps.begin(), comps.end(),
                  [&](const std::vector<int>& a, const std::vector<int>& b) {
                      return a.size() < b.size();
                  });

        for (const auto& comp : comps) {
            int pick = comp[0];
            for (int e : comp)
                if (free_count[e] < free_count[pick]) pick = e;
            bool satisfied = false;
            for (int v : h.edge(pick)) {
                if (value[v] != 0) continue;
                std::size_t mark = trail.size();
                if (place_one(v)) {
                    Tri r = find_full(comp);
                    if (r == Tri::Unknown) return Tri::Unknown;
                    if (r == Tri::Yes) {
                        satisfied = true;  // keep this fragment's assignment
                        break;
                    }
                } else if (out_of_time) {
                    return Tri::Unknown;
                }
                rewind(mark);
                if (time_up()) return Tri::Unknown;
            }
            if (!satisfied) return Tri::No;
        }
        return Tri::Yes;
    }

    Tri find_full() {
        std::vector<int> scope(h.edge_count());
        std::iota(scope.begin(), scope.end(), 0);
        return find_full(scope);
    }

    Assignment ones() const {
        Assignment a;
        for (std::size_t v = 0; v < value.size(); ++v)
            if (value[v] == 1) a.ones.push_back(static_cast<int>(v));
        return a;
    }
};

}  // namespace

KsVerdict is_ks(const Hypergraph& h, SolveBudget budget) {
    Search s(h, budget);
    Tri found = s.find_full();
    KsVerdict v;
    v.nodes = s.nodes;
    switch (found) {
        case Tri::Yes:
            v.is_ks = Tri::No;
            v.witness = s.ones();
            break;
        case Tri::No:
            v.is_ks = Tri::Yes;
            break;
        case Tri::Unknown:
            v.is_ks = Tri::Unknown;
            break;
    }
    return v;
}

bool check_full_assignment(const Hypergraph& h, const Assignment& a) {
    std::vector<std::uint8_t> one(h.vertex_count(), 0);
    for (int v : a.ones) one[v] = 1;
    for (const auto& e : h.edges()) {
        int count = 0;
        for (int v : e) count += one[v];
        if (count != 1) return false;
    }
    return true;
}

bool check_independent(const Hypergraph& h, const Assignment& a) {
    std::vector<std::uint8_t> one(h.vertex_count(), 0);
    for (int v : a.ones) one[v] = 1;
    for (const auto& e : h.edges()) {
        int count = 0;
        for (int v : e) count += one[v];
        if (count > 1) return false;
    }
    return true;
}

namespace {

// Branch and bound for max_ones_witness: decide edges in order, either
// placing a 1 on a free vertex or leaving the edge without one.
struct MaxOnes {
    Search s;
    int best = -1;
    Assignment best_ones;
    explicit MaxOnes(const Hypergraph& h, SolveBudget b) : s(h, b) {}

    int satisfied_now() const {
        int c = 0;
        for (const auto& e : s.h.edges()) {
            int ones = 0;
            for (int v : e) ones += s.value[v] == 1;
            c += ones == 1;
        }
        return c;
    }

    void run(std::size_t next_edge) {
        ++s.nodes;
        if (s.time_up()) return;
        // Upper bound: edges already holding a 1 plus undecided edges that
        // could still receive one.
        int bound = 0;
        for (std::size_t e = 0; e < s.h.edge_count(); ++e)
            bound += s.has_one[e] || (e >= next_edge && s.free_count[e] > 0);
        if (bound <= best) return;
        if (next_edge == s.h.edge_count()) {
            int sat = satisfied_now();
            if (sat > best) {
                best = sat;
                best_ones = s.ones();
            }
            return;
        }
        if (s.has_one[next_edge]) {
            run(next_edge + 1);
            return;
        }
        for (int v : s.h.edge(next_edge)) {
            if (s.value[v] != 0) continue;
            std::size_t mark = s.trail.size();
            // Independence only: a 1 forces 0 on co-edge vertices but an
            // all-zero edge is no conflict here, so assign directly.
            bool ok = true;
            s.value[v] = 1;
            s.trail.push_back(v);
            for (int e : s.h.incident(v)) {
                --s.free_count[e];
                s.has_one[e] = 1;
            }
            for (int e : s.h.incident(v))
                for (int u : s.h.edge(e))
                    if (s.value[u] == 0) {
                        s.value[u] = 2;
                        s.trail.push_back(u);
                        for (int f : s.h.incident(u)) --s.free_count[f];
                    }
            if (ok) run(next_edge + 1);
            // undo without the conflict bookkeeping of Search::rewind
            while (s.trail.size() > mark) {
                int u = s.trail.back();
                s.trail.pop_back();
                std::uint8_t val = s.value[u];
                s.value[u] = 0;
                for (int e : s.h.incident(u)) {
                    ++s.free_count[e];
                    if (val == 1) s.has_one[e] = 0;
                }
            }
            if (s.time_up()) return;
        }
        run(next_edge + 1);  // leave this edge without a 1
    }
};

}  // namespace

MaxOnesResult max_ones_witness(const Hypergraph& h, SolveBudget budget) {
    MaxOnes m(h, budget);
    m.run(0);
    MaxOnesResult r;
    r.ones = m.best_ones;
    r.satisfied_edges = std::max(m.best, 0);
    r.exact = m.s.out_of_time ? Tri::Unknown : Tri::Yes;
    return r;
}

CriticalityReport criticality(const Hypergraph& h, SolveBudget budget) {
    Clock::time_point deadline{};
    bool budgeted = !budget.unlimited();
    if (budgeted) deadline = Clock::now() + budget.time;
    KsVerdict base = is_ks(h, budget);
    if (base.is_ks == Tri::No) throw NotKsError("input is not a KS set");
    CriticalityReport r;
    if (base.is_ks == Tri::Unknown) {
        r.timed_out = true;
        return r;
    }
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        SolveBudget slice;
        if (budgeted) {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                deadline - Clock::now());
            if (left.count() <= 0) {
                r.timed_out = true;
                return r;
            }
            slice.time = left;
        }
        KsVerdict v = is_ks(h.without_edge(static_cast<int>(e)), slice);
        if (v.is_ks == Tri::Unknown) {
            r.timed_out = true;
            return r;
        }
        if (v.is_ks == Tri::Yes) r.removable_edges.push_back(static_cast<int>(e));
    }
    r.is_critical = r.removable_edges.empty() ? Tri::Yes : Tri::No;
    return r;
}

Hypergraph reduce_to_critical(const Hypergraph& h, std::uint64_t seed,
                              ReduceMode mode) {
    if (is_ks(h).is_ks != Tri::Yes) throw NotKsError("input is not a KS set");
    Hypergraph cur = h;
    std::uint64_t counter = 0;
    for (;;) {
        std::vector<int> order(cur.edge_count());
        std::iota(order.begin(), order.end(), 0);
        if (mode == ReduceMode::Random) {
            for (std::size_t i = order.size(); i > 1; --i) {
                std::uint64_t r = splitmix64(seed ^ splitmix64(counter++));
                std::swap(order[i - 1], order[r % i]);
            }
        }
        bool removed = false;
        for (int e : order) {
            Hypergraph next = cur.without_edge(e);
            if (is_ks(next).is_ks == Tri::Yes) {
                cur = std::move(next);
                removed = true;
                break;
            }
        }
        if (!removed) return cur;
    }
}

}  // namespace mmp
