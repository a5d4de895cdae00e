#pragma once
// KS-property decision by exhaustive 0-1 assignment search, maximum-ones
// witnesses, criticality testing, and reduction to critical sets.

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "mmp/hypergraph.hpp"

namespace mmp {

// A noncontextual valuation: the set of vertices assigned 1 (others 0).
struct Assignment {
    std::vector<int> ones;
};

enum class Tri { Yes, No, Unknown };

struct KsVerdict {
    Tri is_ks = Tri::Unknown;
    std::optional<Assignment> witness;  // present iff is_ks == No
    std::uint64_t nodes = 0;            // explored search-tree nodes
};

struct SolveBudget {
    // Zero means unlimited.
    std::chrono::milliseconds time{0};
    bool unlimited() const { return time.count() == 0; }
};

// True iff no 0/1 assignment puts exactly one 1 in every edge. The witness
// (for non-KS inputs) satisfies every edge and is deterministic.
KsVerdict is_ks(const Hypergraph& h, SolveBudget budget = {});

// Checks that `a` places exactly one 1 in every edge of h.
bool check_full_assignment(const Hypergraph& h, const Assignment& a);
// Checks that no edge of h contains two members of `a`.
bool check_independent(const Hypergraph& h, const Assignment& a);

struct MaxOnesResult {
    Assignment ones;
    int satisfied_edges = 0;  // edges containing exactly one 1
    Tri exact = Tri::Yes;     // Unknown if the budget ran out
};

// Maximizes the number of edges containing exactly one 1, subject to no edge
// containing two 1s. Exact branch-and-bound.
MaxOnesResult max_ones_witness(const Hypergraph& h, SolveBudget budget = {});

struct CriticalityReport {
    Tri is_critical = Tri::Unknown;
    std::vector<int> removable_edges;  // removal leaves a KS set
    bool timed_out = false;
};

struct NotKsError : MmpError {
    using MmpError::MmpError;
};

// Requires is_ks(h); tests h minus each single edge.
CriticalityReport criticality(const Hypergraph& h, SolveBudget budget = {});

enum class ReduceMode { Deterministic, Random };

// Repeatedly removes a removable edge until the set is critical.
// Deterministic mode removes the lowest-index removable edge; random mode
// draws from the seeded stream.
Hypergraph reduce_to_critical(const Hypergraph& h, std::uint64_t seed = 0,
                              ReduceMode mode = ReduceMode::Deterministic);

// Counter-based generator used wherever seed-reproducible choices are needed.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mmp
