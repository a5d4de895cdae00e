#pragma once
// Maximal loops: the longest cyclic sequence of distinct edges in which
// consecutive edges share a (per-loop distinct) link vertex and
// non-neighbouring edges share no vertex at all — the polygon a figure of
// the hypergraph is drawn around. Neighbouring edges may overlap in more
// than one vertex.

#include "mmp/hypergraph.hpp"
#include "mmp/solver.hpp"  // Tri, SolveBudget

namespace mmp {

struct LoopReport {
    int max_loop_length = 0;        // 0 means no loop
    std::vector<int> edges;         // witness, cyclic order
    std::vector<int> link_vertices; // link_vertices[i] in edges[i] and edges[i+1]
    bool exact = true;              // false if the budget cut the search short
};

LoopReport maximal_loop(const Hypergraph& h, SolveBudget budget = {});

}  // namespace mmp
