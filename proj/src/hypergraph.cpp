#include "mmp/hypergraph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mmp {

namespace {

std::array<int, 256> make_index_table() {
    std::array<int, 256> t{};
    t.fill(-1);
    for (std::size_t i = 0; i < kAlphabet.size(); ++i)
        t[static_cast<unsigned char>(kAlphabet[i])] = static_cast<int>(i);
    return t;
}

const std::array<int, 256> kIndexTable = make_index_table();

}  // namespace

int alphabet_index(char c) { return kIndexTable[static_cast<unsigned char>(c)]; }

std::string vertex_label(std::size_t i) {
    return std::string(i / kAlphabet.size(), '+') + kAlphabet[i % kAlphabet.size()];
}

Hypergraph::Hypergraph(std::vector<std::string> labels,
                       std::vector<std::vector<int>> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
    build_index();
}

void Hypergraph::build_index() {
    incidence_.assign(labels_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e)
        for (int v : edges_[e])
            incidence_[v].push_back(static_cast<int>(e));
}

Hypergraph Hypergraph::parse(std::string_view line, const ParseOptions& opt) {
    Hypergraph h;
    std::string text;
    text.reserve(line.size());
    for (char c : line)
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n') text += c;
    if (text.empty() || text.back() != '.')
        throw MmpError("missing terminal '.'");
    text.pop_back();

    std::unordered_map<std::string, int> ids;
    std::set<std::vector<int>> seen_edges;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t comma = text.find(',', i);
        std::string_view tok = std::string_view(text).substr(
            i, (comma == std::string::npos ? text.size() : comma) - i);
        i = (comma == std::string::npos) ? text.size() + 1 : comma + 1;
        if (tok.empty()) continue;  // ',,,' maximal-loop separator

        std::vector<int> edge;
        std::unordered_set<int> members;
        std::size_t p = 0;
        while (p < tok.size()) {
            std::size_t plus = 0;
            while (p < tok.size() && tok[p] == '+') { ++plus; ++p; }
            if (p == tok.size())
                throw MmpError("dangling '+' in edge '" + std::string(tok) + "'");
            char c = tok[p++];
            if (alphabet_index(c) < 0)
                throw MmpError(std::string("character '") + c + "' outside alphabet");
            if (opt.strip_stars && c == '*' && !edge.empty() && plus == 0)
                continue;  // loop-membership marker in figure format
            std::string label = std::string(plus, '+') + c;
            auto [it, fresh] = ids.try_emplace(label, static_cast<int>(h.labels_.size()));
            if (fresh) h.labels_.push_back(label);
            if (!members.insert(it->second).second)
                throw MmpError("duplicate vertex '" + label + "' in edge '" +
                               std::string(tok) + "'");
            edge.push_back(it->second);
        }
        if (edge.size() < 3)
            throw MmpError("edge '" + std::string(tok) + "' has fewer than 3 vertices");
        std::vector<int> key = edge;
        std::sort(key.begin(), key.end());
        if (!seen_edges.insert(key).second) {
            if (opt.dedup_edges) continue;
            throw MmpError("duplicate edge '" + std::string(tok) + "'");
        }
        h.edges_.push_back(std::move(edge));
    }
    if (h.edges_.empty()) throw MmpError("hypergraph has no edges");
    h.build_index();
    return h;
}

std::string Hypergraph::serialize() const {
    if (edges_.empty()) throw MmpError("cannot serialize an empty hypergraph");
    std::string out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (e) out += ',';
        for (int v : edges_[e]) out += labels_[v];
    }
    out += '.';
    return out;
}

std::optional<int> Hypergraph::vertex_id(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<int>(i);
    return std::nullopt;
}

Hypergraph Hypergraph::without_edges(const std::vector<int>& edge_ids) const {
    std::vector<bool> drop(edges_.size(), false);
    for (int e : edge_ids) drop[e] = true;
    std::vector<int> remap(labels_.size(), -1);
    std::vector<std::string> labels;
    std::vector<std::vector<int>> edges;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (drop[e]) continue;
        std::vector<int> edge;
        for (int v : edges_[e]) {
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(labels.size());
                labels.push_back(labels_[v]);
            }
            edge.push_back(remap[v]);
        }
        edges.push_back(std::move(edge));
    }
    return Hypergraph(std::move(labels), std::move(edges));
}

Hypergraph Hypergraph::without_edge(int edge_id) const {
    return without_edges({edge_id});
}

ValidationReport validate(const Hypergraph& h, std::optional<int> dimension) {
    ValidationReport r;
    if (h.edge_count() == 0) {
        r.valid = false;
        r.violations.push_back("hypergraph has no edges");
        return r;
    }
    for (std::size_t v = 0; v < h.vertex_count(); ++v)
        if (h.degree(static_cast<int>(v)) == 0) {
            r.valid = false;
            r.violations.push_back("vertex '" + h.label(static_cast<int>(v)) +
                                   "' belongs to no edge");
        }
    std::set<std::vector<int>> seen;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        const auto& edge = h.edge(e);
        if (edge.size() < 3) {
            r.valid = false;
            r.violations.push_back("edge " + std::to_string(e) +
                                   " has fewer than 3 vertices");
        }
        std::vector<int> key = edge;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) {
            r.valid = false;
            r.violations.push_back("edge " + std::to_string(e) + " duplicates another");
        }
        if (dimension && edge.size() != static_cast<std::size_t>(*dimension))
            r.flags.push_back("edge " + std::to_string(e) + " has size " +
                              std::to_string(edge.size()) + ", expected " +
                              std::to_string(*dimension));
    }
    // Pairwise intersection condition: two edges meeting in n-2 vertices
    // (n = the smaller edge's size) must both have at least n vertices.
    for (std::size_t a = 0; a < h.edge_count(); ++a) {
        std::vector<bool> in_a(h.vertex_count(), false);
        for (int v : h.edge(a)) in_a[v] = true;
        for (std::size_t b = a + 1; b < h.edge_count(); ++b) {
            std::size_t common = 0;
            for (int v : h.edge(b)) common += in_a[v];
            std::size_t n = std::min(h.edge(a).size(), h.edge(b).size());
            if (common + 2 == n &&
                (h.edge(a).size() < n || h.edge(b).size() < n))
                r.flags.push_back("edges " + std::to_string(a) + "," +
                                  std::to_string(b) + " intersect in n-2 vertices");
        }
    }
    return r;
}

DegreeProfile degree_profile(const Hypergraph& h) {
    DegreeProfile p;
    p.degree.resize(h.vertex_count());
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        p.degree[v] = h.degree(static_cast<int>(v));
        ++p.histogram[p.degree[v]];
    }
    return p;
}

MmpFile read_mmp_file(const std::string& path, const ParseOptions& opt) {
    std::ifstream in(path);
    if (!in) throw MmpError("cannot open '" + path + "'");
    MmpFile f;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view sv = line;
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t'))
            sv.remove_prefix(1);
        if (sv.empty() || sv.front() == '#') continue;
        if (sv.front() == '%') {
            std::istringstream hs{std::string(sv.substr(1))};
            std::string word;
            int n = 0;
            if (hs >> word >> n && word == "dim" && n > 0) f.dimension = n;
            continue;
        }
        f.graphs.push_back(Hypergraph::parse(sv, opt));
    }
    return f;
}

Hypergraph read_single(const std::string& path, const ParseOptions& opt) {
    MmpFile f = read_mmp_file(path, opt);
    if (f.graphs.size() != 1)
        throw MmpError(path + ": expected exactly one hypergraph, found " +
                       std::to_string(f.graphs.size()));
    return std::move(f.graphs.front());
}

}  // namespace mmp
