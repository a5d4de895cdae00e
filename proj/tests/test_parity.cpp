#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <filesystem>

#include "mmp/hypergraph.hpp"
#include "mmp/parity.hpp"
#include "mmp/solver.hpp"

using namespace mmp;
namespace fs = std::filesystem;

static const fs::path kData = MMPKS_DATA_DIR;

static Hypergraph load(const std::string& rel) {
    return read_single((kData / rel).string());
}

// Oracle: enumerate all 2^E edge subsets.
static bool brute_force_has_parity(const Hypergraph& h) {
    const std::size_t m = h.edge_count();
    REQUIRE(m <= 24);
    for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
        if (std::popcount(mask) % 2 == 0) continue;
        std::vector<int> count(h.vertex_count(), 0);
        for (std::size_t e = 0; e < m; ++e)
            if (mask >> e & 1)
                for (int v : h.edge(e)) ++count[v];
        bool even = true;
        for (int c : count)
            if (c % 2) {
                even = false;
                break;
            }
        if (even) return true;
    }
    return false;
}

TEST_CASE("18-9 has a parity proof over its full edge set") {
    auto h = load("corpus/class-24-24/18-9.mmp");
    CHECK(whole_set_parity(h));
    auto c = has_parity_proof(h);
    REQUIRE(c.has_value());
    CHECK(c->edge_subset.size() % 2 == 1);
    CHECK(c->edge_subset.size() == 9);  // every vertex has degree 2
    CHECK(check_parity_certificate(h, *c));
}

TEST_CASE("whole-set parity across known cases") {
    CHECK(whole_set_parity(load("corpus/class-60-74/26-13.mmp")));
    CHECK(!whole_set_parity(load("corpus/class-60-74/38-22.mmp")));
    // An even edge count can never qualify.
    CHECK(!whole_set_parity(load("corpus/masters/24-24.mmp")));
}

TEST_CASE("sets without parity proofs") {
    auto c = has_parity_proof(load("corpus/class-60-74/39-23.mmp"));
    CHECK(!c.has_value());
    // A degree-1 vertex in every edge rules any odd subset out.
    CHECK(!has_parity_proof(Hypergraph::parse("123.")).has_value());
}

TEST_CASE("proofs found on sets beyond the whole-set special case") {
    // The 24-24 master fails whole-set parity (24 edges) yet contains an
    // odd proper subset: the nine edges of an embedded 18-9.
    auto h = load("corpus/masters/24-24.mmp");
    auto c = has_parity_proof(h);
    REQUIRE(c.has_value());
    CHECK(c->edge_subset.size() == 9);
    CHECK(check_parity_certificate(h, *c));
}

TEST_CASE("nullspace method agrees with the 2^E oracle") {
    // Corpus entries small enough to enumerate.
    for (const char* rel :
         {"corpus/class-24-24/18-9.mmp", "corpus/class-24-24/20-11a.mmp",
          "corpus/class-24-24/20-11b.mmp", "corpus/class-24-24/24-15.mmp",
          "corpus/class-60-74/26-13.mmp", "corpus/class-60-74/38-22.mmp",
          "corpus/class-60-74/39-23.mmp", "corpus/dim3/yu-oh-25-16.mmp",
          "corpus/class-60-105/22-11.mmp", "corpus/dim6/21-7-star.mmp",
          "corpus/dim8/36-9-star.mmp", "corpus/class-236-1216/34-16.mmp"}) {
        auto h = load(rel);
        auto c = has_parity_proof(h);
        CHECK(c.has_value() == brute_force_has_parity(h));
        if (c) CHECK(check_parity_certificate(h, *c));
    }

    // Random small hypergraphs.
    std::uint64_t ctr = 0;
    auto draw = [&](std::uint64_t n) { return splitmix64(splitmix64(ctr++)) % n; };
    for (int trial = 0; trial < 200; ++trial) {
        int nv = 4 + static_cast<int>(draw(8));
        int ne = std::min(2 + static_cast<int>(draw(8)), nv);
        std::vector<std::vector<int>> edges;
        for (int e = 0; e < ne; ++e) {
            int size = 3 + static_cast<int>(draw(2));
            size = std::min(size, nv);
            std::vector<int> pool(nv);
            for (int i = 0; i < nv; ++i) pool[i] = i;
            for (int i = 0; i < size; ++i)
                std::swap(pool[i], pool[i + draw(nv - i)]);
            edges.emplace_back(pool.begin(), pool.begin() + size);
        }
        std::vector<std::string> labels(nv);
        for (int i = 0; i < nv; ++i) labels[i] = vertex_label(i);
        Hypergraph h(labels, edges);
        auto c = has_parity_proof(h);
        CHECK(c.has_value() == brute_force_has_parity(h));
        if (c) {
            CHECK(c->edge_subset.size() % 2 == 1);
            CHECK(check_parity_certificate(h, *c));
        }
    }
}

TEST_CASE("a parity proof implies the KS property on small criticals") {
    for (const char* rel :
         {"corpus/class-24-24/18-9.mmp", "corpus/class-24-24/20-11a.mmp",
          "corpus/class-24-24/24-15.mmp"}) {
        auto h = load(rel);
        if (has_parity_proof(h)) CHECK(is_ks(h).is_ks == Tri::Yes);
    }
}

TEST_CASE("parity statistics aggregate by size class") {
    std::vector<Hypergraph> corpus{load("corpus/class-24-24/18-9.mmp"),
                                   load("corpus/class-24-24/20-11a.mmp"),
                                   load("corpus/class-24-24/20-11b.mmp"),
                                   load("corpus/class-60-74/39-23.mmp")};
    auto s = parity_statistics(corpus);
    CHECK(s.total == 4);
    CHECK(s.with_proof >= 1);
    int row_total = 0;
    for (const auto& [nv, ne, total, with] : s.rows) {
        CHECK(with <= total);
        row_total += total;
        if (nv == 20 && ne == 11) CHECK(total == 2);
    }
    CHECK(row_total == 4);
}
