#pragma once
// Sub-hypergraph containment up to isomorphism: backtracking over edge maps
// with intersection-size pruning and incremental vertex-matching checks.

#include <chrono>

#include "mmp/hypergraph.hpp"
#include "mmp/solver.hpp"  // Tri, SolveBudget

namespace mmp {

struct SubgraphResult {
    Tri contained = Tri::Unknown;
    // For contained == Yes: a-vertex id -> b-vertex id, injective,
    // mapping each a-edge onto a b-edge.
    std::vector<int> vertex_map;
    std::uint64_t nodes = 0;
};

// Decides whether `a` embeds into `b`: an injective vertex map plus an
// injective map from a's edges onto equal-size edges of b, preserving
// incidence. Unknown only if the budget runs out.
SubgraphResult find_embedding(const Hypergraph& a, const Hypergraph& b,
                              SolveBudget budget = {});

Tri is_subgraph(const Hypergraph& a, const Hypergraph& b, SolveBudget budget = {});

// Checks that `map` (a-vertex id -> b-vertex id) is injective and sends every
// a-edge onto some b-edge.
bool check_embedding(const Hypergraph& a, const Hypergraph& b,
                     const std::vector<int>& map);

}  // namespace mmp
