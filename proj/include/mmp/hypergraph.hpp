#pragma once
// MMP hypergraph data model: parser, serializer, validator.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmp {

// The 90-symbol vertex alphabet, in its fixed order. Vertices beyond 90 reuse
// the alphabet with one or more '+' prefixes ("+X" is distinct from "X").
inline constexpr std::string_view kAlphabet =
    "123456789"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "abcdefghijklmnopqrstuvwxyz"
    "!\"#$%&'()*-/:;<=>?@[\\]^_`{|}~";

// Index of a base character in kAlphabet, or -1.
int alphabet_index(char c);

// Label for the i-th vertex in canonical order: alphabet char with
// '+'-prefix repetition for i >= 90.
std::string vertex_label(std::size_t i);

struct MmpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseOptions {
    // Treat '*' as a loop-membership marker and drop it (figure-to-draw
    // format). By default '*' is an ordinary alphabet symbol.
    bool strip_stars = false;
    // Silently collapse duplicate edges instead of failing.
    bool dedup_edges = false;
};

class Hypergraph {
  public:
    Hypergraph() = default;
    Hypergraph(std::vector<std::string> labels,
               std::vector<std::vector<int>> edges);

    // Parses a single MMP line (must end with '.'). Whitespace is ignored;
    // empty edge tokens (",,," loop separators) are skipped.
    static Hypergraph parse(std::string_view line, const ParseOptions& opt = {});

    // Comma-separated edges terminated by '.'; inverse of parse.
    std::string serialize() const;

    std::size_t vertex_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    const std::vector<int>& edge(std::size_t i) const { return edges_[i]; }
    const std::string& label(int v) const { return labels_[v]; }
    // Edges incident to vertex v.
    const std::vector<int>& incident(int v) const { return incidence_[v]; }
    int degree(int v) const { return static_cast<int>(incidence_[v].size()); }
    std::optional<int> vertex_id(std::string_view label) const;

    // Hypergraph with the given edges removed and stranded vertices dropped.
    Hypergraph without_edges(const std::vector<int>& edge_ids) const;
    Hypergraph without_edge(int edge_id) const;

    // Structural equality: same labels, same edges in the same order.
    bool operator==(const Hypergraph& o) const {
        return labels_ == o.labels_ && edges_ == o.edges_;
    }

  private:
    std::vector<std::string> labels_;           // vertex id -> label
    std::vector<std::vector<int>> edges_;       // edge -> vertex ids
    std::vector<std::vector<int>> incidence_;   // vertex id -> edge ids
    void build_index();
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;   // hard Definition-style violations
    std::vector<std::string> flags;        // soft warnings (dimension, iii)
};

// Checks the structural conditions: every vertex in >= 1 edge, edges of
// size >= 3, no duplicate edges, uniform edge size when a dimension is
// given, and the pairwise (n-2)-intersection condition (reported as a flag).
ValidationReport validate(const Hypergraph& h,
                          std::optional<int> dimension = std::nullopt);

struct DegreeProfile {
    std::vector<int> degree;           // per vertex id
    std::map<int, int> histogram;      // degree -> vertex count
};

DegreeProfile degree_profile(const Hypergraph& h);

// File I/O: one hypergraph per line; '#' lines are comments; an optional
// '%dim N' header sets the expected dimension.
struct MmpFile {
    std::optional<int> dimension;
    std::vector<Hypergraph> graphs;
};

MmpFile read_mmp_file(const std::string& path, const ParseOptions& opt = {});
Hypergraph read_single(const std::string& path, const ParseOptions& opt = {});

}  // namespace mmp
