#pragma once
// Vector coordinatizations: verify printed assignments exactly and search
// for assignments over a finite component alphabet (edge-wise mutually
// orthogonal bases, Hermitian inner product).

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmp/hypergraph.hpp"
#include "mmp/scalar.hpp"
#include "mmp/solver.hpp"  // Tri, SolveBudget

namespace mmp {

struct ComponentAlphabet {
    std::string name;
    std::vector<std::pair<std::string, Scalar>> values;  // includes 0
};

// Named alphabets: "pm1" {0,1,-1}, "omega" {0,1,w}, "omega2" {0,1,w,w^2},
// "gauss" {0,1,-1,i,-i}. Anything else is parsed as a comma-separated list
// of scalar expressions.
ComponentAlphabet make_alphabet(const std::string& spec);

struct VectorAssignment {
    int dimension = 0;
    // vertex label -> components
    std::map<std::string, std::vector<Scalar>> vectors;
};

// File format: one 'vertex = (c1,...,cn)' per line; '#' comments.
VectorAssignment read_vec_file(const std::string& path);
void write_vec_file(const std::string& path, const VectorAssignment& va);
VectorAssignment parse_vec_text(const std::string& text);
std::string vec_to_text(const VectorAssignment& va);

struct OrthogonalityReport {
    bool ok = false;
    // (edge index, vertex a, vertex b) pairs whose inner product is nonzero
    std::vector<std::tuple<int, std::string, std::string>> violations;
    std::vector<std::string> missing;    // vertices without vectors
    std::vector<std::string> parallel;   // distinct-ray violations "a~b"
};

// Exact check that every intra-edge pair is Hermitian-orthogonal, no vector
// is zero, vectors are pairwise non-parallel, and each edge is a full basis.
OrthogonalityReport verify_coordinatization(const Hypergraph& h,
                                            const VectorAssignment& va);

struct FindResult {
    Tri found = Tri::Unknown;  // No = proven impossible over the alphabet
    std::optional<VectorAssignment> assignment;
    std::uint64_t nodes = 0;
};

// Backtracking over the projective pool of alphabet vectors, most-constrained
// edge first. Exhaustive when the budget is unlimited, so found == No proves
// non-representability over the alphabet.
FindResult find_coordinatization(const Hypergraph& h,
                                 const ComponentAlphabet& alphabet,
                                 int dimension, std::uint64_t seed = 0,
                                 SolveBudget budget = {});

// Restricts a master's coordinatization along a verified embedding
// (subset vertex id -> master vertex id).
VectorAssignment trace_coordinatization(const Hypergraph& master,
                                        const VectorAssignment& master_va,
                                        const Hypergraph& subset,
                                        const std::vector<int>& embedding);

}  // namespace mmp
