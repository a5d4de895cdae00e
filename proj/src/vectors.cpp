#include "mmp/vectors.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "mmp/subgraph.hpp"

namespace mmp {

namespace {

Scalar hermitian(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    Scalar acc;
    for (std::size_t k = 0; k < x.size(); ++k)
        acc = acc + x[k] * y[k].conj();
    return acc;
}

bool parallel(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    // Projectively equal iff every 2x2 minor vanishes.
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = a + 1; b < x.size(); ++b)
            if (!(x[a] * y[b] - x[b] * y[a]).is_zero()) return false;
    return true;
}

bool all_zero(const std::vector<Scalar>& x) {
    return std::all_of(x.begin(), x.end(),
                       [](const Scalar& s) { return s.is_zero(); });
}

std::string ray_key(const std::vector<Scalar>& x) {
    // Canonical projective representative: divide by the first nonzero entry.
    std::size_t lead = 0;
    while (lead < x.size() && x[lead].is_zero()) ++lead;
    Scalar inv = x[lead].inverse();
    std::string key;
    for (const auto& s : x) {
        key += (s * inv).str();
        key += ';';
    }
    return key;
}

}  // namespace

ComponentAlphabet make_alphabet(const std::string& spec) {
    ComponentAlphabet a;
    a.name = spec;
    std::string list = spec;
    if (spec == "pm1") list = "0,1,-1";
    else if (spec == "omega") list = "0,1,w";
    else if (spec == "omega2") list = "0,1,w,w^2";
    else if (spec == "gauss") list = "0,1,-1,i,-i";
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) a.values.emplace_back(item, parse_scalar(item));
    if (a.values.empty()) throw MmpError("empty component alphabet");
    return a;
}

VectorAssignment parse_vec_text(const std::string& text) {
    VectorAssignment va;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::string_view sv = line;
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t'))
            sv.remove_prefix(1);
        if (sv.empty() || sv.front() == '#') continue;
        auto eq = sv.find('=');
        auto open = sv.find('(', eq);
        auto close = sv.rfind(')');
        if (eq == std::string_view::npos || open == std::string_view::npos ||
            close == std::string_view::npos || close < open)
            throw MmpError("malformed coordinatization line: " + line);
        std::string vertex(sv.substr(0, eq));
        while (!vertex.empty() && (vertex.back() == ' ' || vertex.back() == '\t'))
            vertex.pop_back();
        std::vector<Scalar> comps;
        std::string body(sv.substr(open + 1, close - open - 1));
        std::stringstream cs(body);
        std::string comp;
        while (std::getline(cs, comp, ','))
            comps.push_back(parse_scalar(comp));
        if (comps.empty()) throw MmpError("empty vector for '" + vertex + "'");
        if (va.dimension == 0) va.dimension = static_cast<int>(comps.size());
        else if (va.dimension != static_cast<int>(comps.size()))
            throw MmpError("inconsistent vector dimension for '" + vertex + "'");
        if (!va.vectors.emplace(vertex, std::move(comps)).second)
            throw MmpError("duplicate vector for '" + vertex + "'");
    }
    return va;
}

std::string vec_to_text(const VectorAssignment& va) {
    std::string out;
    for (const auto& [vertex, comps] : va.vectors) {
        out += vertex + " = (";
        for (std::size_t k = 0; k < comps.size(); ++k) {
            if (k) out += ',';
            out += comps[k].str();
        }
        out += ")\n";
    }
    return out;
}

VectorAssignment read_vec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MmpError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_vec_text(ss.str());
}

void write_vec_file(const std::string& path, const VectorAssignment& va) {
    std::ofstream out(path);
    if (!out) throw MmpError("cannot write '" + path + "'");
    out << vec_to_text(va);
}

OrthogonalityReport verify_coordinatization(const Hypergraph& h,
                                            const VectorAssignment& va) {
    OrthogonalityReport r;
    std::vector<const std::vector<Scalar>*> vec(h.vertex_count(), nullptr);
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        auto it = va.vectors.find(h.label(static_cast<int>(v)));
        if (it == va.vectors.end() || all_zero(it->second))
            r.missing.push_back(h.label(static_cast<int>(v)));
        else
            vec[v] = &it->second;
    }
    if (!r.missing.empty()) return r;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        const auto& edge = h.edge(e);
        for (std::size_t a = 0; a < edge.size(); ++a)
            for (std::size_t b = a + 1; b < edge.size(); ++b)
                if (!hermitian(*vec[edge[a]], *vec[edge[b]]).is_zero())
                    r.violations.emplace_back(static_cast<int>(e),
                                              h.label(edge[a]),
                                              h.label(edge[b]));
    }
    // Distinct rays globally. Pairwise orthogonal nonzero vectors are
    // automatically linearly independent, so edges are full bases.
    for (std::size_t a = 0; a < h.vertex_count(); ++a)
        for (std::size_t b = a + 1; b < h.vertex_count(); ++b)
            if (parallel(*vec[a], *vec[b]))
                r.parallel.push_back(h.label(static_cast<int>(a)) + "~" +
                                     h.label(static_cast<int>(b)));
    r.ok = r.violations.empty() && r.parallel.empty();
    return r;
}

namespace {

using Clock = std::chrono::steady_clock;

struct VectorSearch {
    const Hypergraph& h;
    int dim;
    std::vector<std::vector<Scalar>> pool;      // projective representatives
    std::vector<std::string> pool_key;
    std::vector<int> assigned;                  // vertex -> pool index or -1
    std::unordered_set<std::string> used_keys;
    std::uint64_t nodes = 0;
    Clock::time_point deadline{};
    bool budgeted = false, out_of_time = false;

    VectorSearch(const Hypergraph& g, const ComponentAlphabet& alpha, int n,
                 std::uint64_t seed, SolveBudget budget)
        : h(g), dim(n), assigned(g.vertex_count(), -1) {
        const std::size_t k = alpha.values.size();
        double total = 1;
        for (int d = 0; d < n; ++d) total *= static_cast<double>(k);
        if (total > 4e6)
            throw MmpError("component alphabet pool too large");
        // Enumerate alphabet^n, dedupe projectively, order by zero count
        // (descending) then generation order.
        std::unordered_set<std::string> seen;
        std::vector<std::pair<int, std::size_t>> order;
        std::vector<std::size_t> digits(n, 0);
        for (;;) {
            std::vector<Scalar> v;
            v.reserve(n);
            int zeros = 0;
            for (int d = 0; d < n; ++d) {
                v.push_back(alpha.values[digits[d]].second);
                zeros += v.back().is_zero();
            }
            if (zeros < n) {
                std::string key = ray_key(v);
                if (seen.insert(key).second) {
                    order.emplace_back(-zeros, pool.size());
                    pool.push_back(std::move(v));
                    pool_key.push_back(std::move(key));
                }
            }
            int d = n - 1;
            while (d >= 0 && ++digits[d] == k) digits[d--] = 0;
            if (d < 0) break;
        }
        std::stable_sort(order.begin(), order.end());
        std::vector<std::vector<Scalar>> sorted_pool;
        std::vector<std::string> sorted_key;
        for (auto& [neg_zeros, idx] : order) {
            sorted_pool.push_back(std::move(pool[idx]));
            sorted_key.push_back(std::move(pool_key[idx]));
        }
        pool = std::move(sorted_pool);
        pool_key = std::move(sorted_key);
        if (seed != 0) {
            for (std::size_t i = pool.size(); i > 1; --i) {
                std::uint64_t r = splitmix64(seed ^ splitmix64(i));
                std::swap(pool[i - 1], pool[r % i]);
                std::swap(pool_key[i - 1], pool_key[r % i]);
            }
        }
        if (!budget.unlimited()) {
            budgeted = true;
            deadline = Clock::now() + budget.time;
        }
    }

    bool time_up() {
        if (budgeted && (nodes & 0xff) == 0 && Clock::now() >= deadline)
            out_of_time = true;
        return out_of_time;
    }

    // Next vertex: an unassigned member of the edge with the most assigned
    // vertices (ties by edge index).
    int pick_vertex() const {
        int best_edge = -1, best_have = -1;
        for (std::size_t e = 0; e < h.edge_count(); ++e) {
            int have = 0, missing = 0;
            for (int v : h.edge(e)) (assigned[v] >= 0 ? have : missing)++;
            if (missing > 0 && have > best_have) {
                best_have = have;
                best_edge = static_cast<int>(e);
            }
        }
        if (best_edge < 0) return -1;
        for (int v : h.edge(best_edge))
            if (assigned[v] < 0) return v;
        return -1;
    }

    bool candidate_fits(int vertex, std::size_t cand) const {
        for (int e : h.incident(vertex))
            for (int u : h.edge(e))
                if (u != vertex && assigned[u] >= 0 &&
                    !hermitian(pool[cand], pool[assigned[u]]).is_zero())
                    return false;
        return true;
    }

    Tri search() {
        ++nodes;
        if (time_up()) return Tri::Unknown;
        int vertex = pick_vertex();
        if (vertex < 0) return Tri::Yes;
        for (std::size_t cand = 0; cand < pool.size(); ++cand) {
            if (used_keys.count(pool_key[cand])) continue;  // distinct rays
            if (!candidate_fits(vertex, cand)) continue;
            assigned[vertex] = static_cast<int>(cand);
            used_keys.insert(pool_key[cand]);
            Tri r = search();
            if (r != Tri::No) return r;
            used_keys.erase(pool_key[cand]);
            assigned[vertex] = -1;
            if (time_up()) return Tri::Unknown;
        }
        return Tri::No;
    }
};

}  // namespace

FindResult find_coordinatization(const Hypergraph& h,
                                 const ComponentAlphabet& alphabet,
                                 int dimension, std::uint64_t seed,
                                 SolveBudget budget) {
    for (const auto& e : h.edges())
        if (e.size() != static_cast<std::size_t>(dimension))
            throw MmpError("edge size does not match the requested dimension");
    VectorSearch vs(h, alphabet, dimension, seed, budget);
    FindResult r;
    r.found = vs.search();
    r.nodes = vs.nodes;
    if (r.found == Tri::Yes) {
        VectorAssignment va;
        va.dimension = dimension;
        for (std::size_t v = 0; v < h.vertex_count(); ++v)
            va.vectors[h.label(static_cast<int>(v))] = vs.pool[vs.assigned[v]];
        r.assignment = std::move(va);
    }
    return r;
}

VectorAssignment trace_coordinatization(const Hypergraph& master,
                                        const VectorAssignment& master_va,
                                        const Hypergraph& subset,
                                        const std::vector<int>& embedding) {
    if (!check_embedding(subset, master, embedding))
        throw MmpError("embedding does not map the subset into the master");
    VectorAssignment va;
    va.dimension = master_va.dimension;
    for (std::size_t v = 0; v < subset.vertex_count(); ++v) {
        const std::string& target = master.label(embedding[v]);
        auto it = master_va.vectors.find(target);
        if (it == master_va.vectors.end())
            throw MmpError("master has no vector for '" + target + "'");
        va.vectors[subset.label(static_cast<int>(v))] = it->second;
    }
    return va;
}

}  // namespace mmp
