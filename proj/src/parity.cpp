#include "mmp/parity.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace mmp {

namespace {

// Dense bit-packed vector over GF(2).
struct BitVec {
    std::vector<std::uint64_t> w;
    explicit BitVec(std::size_t bits) : w((bits + 63) / 64, 0) {}
    void flip(std::size_t i) { w[i >> 6] ^= 1ULL << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
    }
    int popcount() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
};

}  // namespace

bool whole_set_parity(const Hypergraph& h) {
    if (h.edge_count() % 2 == 0) return false;
    for (std::size_t v = 0; v < h.vertex_count(); ++v)
        if (h.degree(static_cast<int>(v)) % 2 != 0) return false;
    return true;
}

bool check_parity_certificate(const Hypergraph& h, const ParityCertificate& c) {
    if (c.edge_subset.size() % 2 == 0) return false;
    std::vector<int> cover(h.vertex_count(), 0);
    std::vector<bool> used(h.edge_count(), false);
    for (int e : c.edge_subset) {
        if (e < 0 || e >= static_cast<int>(h.edge_count()) || used[e]) return false;
        used[e] = true;
        for (int v : h.edge(e)) ++cover[v];
    }
    for (int n : cover)
        if (n % 2 != 0) return false;
    return true;
}

std::optional<ParityCertificate> has_parity_proof(const Hypergraph& h) {
    const std::size_t m = h.edge_count();
    // Row per vertex over edge-indexed bits; eliminate to find the nullspace.
    std::vector<BitVec> rows;
    rows.reserve(h.vertex_count());
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        BitVec row(m);
        for (int e : h.incident(static_cast<int>(v))) row.flip(e);
        rows.push_back(std::move(row));
    }
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
        std::size_t p = rank;
        while (p < rows.size() && !rows[p].test(col)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[rank], rows[p]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r].test(col)) rows[r] ^= rows[rank];
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    std::vector<bool> is_pivot(m, false);
    for (int c : pivot_col) is_pivot[c] = true;

    // Nullspace basis: one vector per free column.
    std::vector<BitVec> basis;
    for (std::size_t col = 0; col < m; ++col) {
        if (is_pivot[col]) continue;
        BitVec x(m);
        x.flip(col);
        for (std::size_t r = 0; r < rank; ++r)
            if (rows[r].test(col)) x.flip(pivot_col[r]);
        basis.push_back(std::move(x));
    }
    std::vector<int> odd_idx;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].popcount() % 2 == 1) odd_idx.push_back(static_cast<int>(i));
    if (odd_idx.empty()) return std::nullopt;

    // Odd-weight solutions form the coset basis[odd0] + <even combinations>.
    // Search small combinations for a minimum-cardinality certificate; the
    // contract is existence, minimality is best-effort.
    BitVec best = basis[odd_idx[0]];
    auto consider = [&](const BitVec& x) {
        if (x.popcount() % 2 == 1 && x.popcount() < best.popcount()) best = x;
    };
    for (const auto& b : basis) consider(b);
    constexpr std::size_t kPairBudget = 2000;
    if (basis.size() <= kPairBudget)
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                BitVec x = basis[i];
                x ^= basis[j];
                consider(x);
            }

    ParityCertificate cert;
    for (std::size_t e = 0; e < m; ++e)
        if (best.test(e)) cert.edge_subset.push_back(static_cast<int>(e));
    std::vector<int> cover(h.vertex_count(), 0);
    for (int e : cert.edge_subset)
        for (int v : h.edge(e)) ++cover[v];
    for (std::size_t v = 0; v < h.vertex_count(); ++v)
        if (cover[v] > 0)
            cert.covered.emplace_back(static_cast<int>(v), cover[v]);
    return cert;
}

ParityStats parity_statistics(const std::vector<Hypergraph>& corpus) {
    ParityStats s;
    std::map<std::pair<int, int>, std::pair<int, int>> table;
    for (const auto& h : corpus) {
        bool proof = has_parity_proof(h).has_value();
        auto& cell = table[{static_cast<int>(h.vertex_count()),
                            static_cast<int>(h.edge_count())}];
        ++cell.first;
        cell.second += proof;
        ++s.total;
        s.with_proof += proof;
    }
    for (const auto& [key, cell] : table)
        s.rows.emplace_back(key.first, key.second, cell.first, cell.second);
    return s;
}

}  // namespace mmp
