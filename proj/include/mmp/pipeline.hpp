#pragma once
// Generation pipeline: strip edges from master sets, filter on the KS
// property, reduce to criticals, de-duplicate, and emit class statistics.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mmp/canonical.hpp"
#include "mmp/hypergraph.hpp"
#include "mmp/solver.hpp"

namespace mmp {

class MasterRegistry {
  public:
    // Loads the JSON manifest; file paths are relative to its directory.
    static MasterRegistry load(const std::string& manifest_path);

    const Hypergraph& get(const std::string& name) const;
    bool has(const std::string& name) const { return masters_.count(name) > 0; }
    std::vector<std::string> names() const;

  private:
    std::map<std::string, Hypergraph> masters_;
};

struct StripPlan {
    int k_min = 1;
    int k_max = 1;
    enum class Mode { Exhaustive, Random } mode = Mode::Exhaustive;
    std::uint64_t samples = 0;  // random mode: subsets to draw
    std::uint64_t seed = 0;
};

// Streams h minus each chosen edge subset (stranded vertices dropped).
// Exhaustive mode emits every C(m,k) subset exactly once in combinatorial
// order; random mode draws distinct subsets reproducibly from the seed.
void strip(const Hypergraph& h, const StripPlan& plan,
           const std::function<void(Hypergraph)>& sink);
std::vector<Hypergraph> strip(const Hypergraph& h, const StripPlan& plan);

struct ClassStatistics {
    // (vertices, edges) -> {non-isomorphic criticals, with parity proof}
    std::map<std::pair<int, int>, std::pair<std::uint64_t, std::uint64_t>> rows;
    std::uint64_t total = 0;
    std::uint64_t total_with_parity = 0;
};

// Tab-separated: vertices, edges, count, parity_count, plus a totals footer.
std::string stats_to_tsv(const ClassStatistics& s);
ClassStatistics statistics_from(const DedupStore& criticals);

struct GenerateResult {
    DedupStore criticals;
    ClassStatistics stats;
    std::uint64_t stripped = 0;  // subsets examined
    std::uint64_t ks = 0;        // subsets that kept the KS property
};

// strip -> KS filter -> reduce_to_critical -> dedup. Per-item reduction seeds
// derive from the item's canonical hash, so results are schedule-independent;
// statistics are worker-count invariant. `checkpoint_dir`, when non-empty,
// holds a resumable dedup corpus plus a progress sidecar.
GenerateResult generate_class(const Hypergraph& master, const StripPlan& plan,
                              int workers = 1,
                              const std::string& checkpoint_dir = "");

// Exhaustive walk of all KS edge-subsets of a master (at most 64 edges),
// using the monotone structure: every superset of a KS subset is KS. Counts
// proper KS subsets both raw (distinct edge subsets) and up to isomorphism,
// and collects all criticals.
struct ExhaustiveResult {
    std::uint64_t ks_proper_subsets = 0;   // non-isomorphic classes
    std::uint64_t ks_proper_subsets_raw = 0;
    DedupStore criticals;
};
ExhaustiveResult explore_ks_subsets(const Hypergraph& master);

// Containment of a candidate in a registered master's class: a member must
// embed into the master and itself be KS.
Tri class_membership(const Hypergraph& candidate, const Hypergraph& master,
                     SolveBudget budget = {});

}  // namespace mmp
