#pragma once
// Parity-proof detection: odd-cardinality edge subsets covering every vertex
// an even number of times, found via nullspace computation over GF(2).

#include <cstdint>
#include <optional>
#include <vector>

#include "mmp/hypergraph.hpp"

namespace mmp {

struct ParityCertificate {
    std::vector<int> edge_subset;            // odd cardinality
    std::vector<std::pair<int, int>> covered; // (vertex, even count > 0)
};

// Returns a certificate iff the binary incidence system M.x = 0 admits an
// odd-weight solution. Searches small nullspace combinations for a minimum-
// cardinality certificate before falling back to any odd solution.
std::optional<ParityCertificate> has_parity_proof(const Hypergraph& h);

// True iff the whole edge set is a certificate: odd edge count and every
// vertex of even degree.
bool whole_set_parity(const Hypergraph& h);

// Re-checks a certificate by direct counting.
bool check_parity_certificate(const Hypergraph& h, const ParityCertificate& c);

struct ParityStats {
    // (vertices, edges) -> {total, with_proof}
    std::vector<std::tuple<int, int, int, int>> rows;
    int total = 0;
    int with_proof = 0;
};

ParityStats parity_statistics(const std::vector<Hypergraph>& corpus);

}  // namespace mmp
