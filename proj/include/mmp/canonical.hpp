#pragma once
// Canonical labeling (for isomorphism de-duplication) by individualization-
// refinement on the bipartite incidence graph.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "mmp/hypergraph.hpp"

namespace mmp {

// Canonical MMP text: equal for two hypergraphs iff they are isomorphic.
// The result is itself a valid MMP line.
std::string canonical_form(const Hypergraph& h);

std::uint64_t canonical_hash(const Hypergraph& h);

// Vertex permutations found while canonicalizing (each maps the hypergraph
// onto itself). A generating set is not guaranteed, only soundness; callers
// may use them to collapse search symmetries.
std::vector<std::vector<int>> automorphism_generators(const Hypergraph& h);

// Groups hypergraphs by canonical form, keeping the first-seen representative
// with a multiplicity count. Inserts are linearizable; stores merge
// associatively (pipeline sharding relies on both).
class DedupStore {
  public:
    struct Entry {
        std::string representative;  // original serialization, first seen
        std::uint64_t count = 0;
    };

    DedupStore() = default;
    DedupStore(const DedupStore& o) : entries_(o.entries_) {}
    DedupStore(DedupStore&& o) noexcept : entries_(std::move(o.entries_)) {}
    DedupStore& operator=(const DedupStore& o) {
        if (this != &o) entries_ = o.entries_;
        return *this;
    }
    DedupStore& operator=(DedupStore&& o) noexcept {
        entries_ = std::move(o.entries_);
        return *this;
    }

    // Returns true if the canonical class was new.
    bool insert(const Hypergraph& h, std::uint64_t multiplicity = 1);
    bool insert_canonical(const std::string& canon, const std::string& original,
                          std::uint64_t multiplicity = 1);
    void merge(const DedupStore& other);

    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, Entry>& entries() const { return entries_; }

    // Checkpointing: representative corpus plus counts, one per line.
    void save(const std::string& path) const;
    static DedupStore load(const std::string& path);

  private:
    std::map<std::string, Entry> entries_;  // canonical form -> entry
    mutable std::mutex mu_;
};

}  // namespace mmp
