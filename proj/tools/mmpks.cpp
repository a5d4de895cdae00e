// mmpks: command-line frontend for the MMP hypergraph toolkit.
//
// Exit codes: 0 success / property holds, 1 property fails, 2 error,
// 3 budget exhausted (answer unknown).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mmp/canonical.hpp"
#include "mmp/hypergraph.hpp"
#include "mmp/loops.hpp"
#include "mmp/parity.hpp"
#include "mmp/pipeline.hpp"
#include "mmp/solver.hpp"
#include "mmp/subgraph.hpp"
#include "mmp/vectors.hpp"

using namespace mmp;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kFalse = 1, kError = 2, kUnknown = 3;

// Data directory for registry lookups; MMPKS_DATA_DIR overrides.
fs::path data_dir() {
    if (const char* env = std::getenv("MMPKS_DATA_DIR")) return env;
    return "data";
}

// Reads MMP lines from a file or stdin ("-"): '#' comments, optional
// '%dim N' header.
MmpFile read_input(const std::string& path, const ParseOptions& opt = {}) {
    if (path != "-") return read_mmp_file(path, opt);
    MmpFile f;
    std::string line;
    while (std::getline(std::cin, line)) {
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

Hypergraph read_one(const std::string& path, const ParseOptions& opt = {}) {
    MmpFile f = read_input(path, opt);
    if (f.graphs.size() != 1)
        throw MmpError(path + ": expected exactly one hypergraph, found " +
                       std::to_string(f.graphs.size()));
    return std::move(f.graphs.front());
}

SolveBudget budget_of(long long ms) {
    SolveBudget b;
    b.time = std::chrono::milliseconds(ms);
    return b;
}

std::string labels_of(const Hypergraph& h, const std::vector<int>& vertices) {
    std::string out;
    for (int v : vertices) {
        if (!out.empty()) out += ' ';
        out += h.label(v);
    }
    return out;
}

struct Flags {
    std::string input = "-";
    std::string second;       // subgraph: the containing hypergraph
    std::string vec_file;     // vectors-verify
    std::string alphabet = "pm1";
    std::string mode = "det";
    std::string master;       // generate: registry name
    std::string checkpoint;   // generate
    std::string stats_out;    // generate
    std::string out;          // generate: criticals store
    int dim = 0;
    int k_min = 1, k_max = 1;
    int jobs = 1;
    long long budget_ms = 0;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    bool seed_given = false;
    bool strip_stars = false;
    bool mark_loops = false;  // export-dot
};

int cmd_parse(const Flags& f) {
    ParseOptions opt;
    opt.strip_stars = f.strip_stars;
    for (const auto& h : read_input(f.input, opt).graphs)
        std::cout << h.serialize() << "\n";
    return kOk;
}

int cmd_validate(const Flags& f) {
    auto file = read_input(f.input);
    std::optional<int> dim;
    if (f.dim > 0) dim = f.dim;
    else if (file.dimension) dim = file.dimension;
    bool all_valid = true;
    for (std::size_t i = 0; i < file.graphs.size(); ++i) {
        auto r = validate(file.graphs[i], dim);
        all_valid = all_valid && r.valid;
        std::cout << i + 1 << "\t" << (r.valid ? "valid" : "invalid");
        for (const auto& v : r.violations) std::cout << "\t" << v;
        for (const auto& w : r.flags) std::cout << "\tflag:" << w;
        std::cout << "\n";
    }
    return all_valid ? kOk : kFalse;
}

int cmd_ks_check(const Flags& f) {
    auto h = read_one(f.input);
    auto v = is_ks(h, budget_of(f.budget_ms));
    switch (v.is_ks) {
        case Tri::Yes:
            std::cout << "KS\n";
            return kOk;
        case Tri::No:
            std::cout << "notKS\t" << labels_of(h, v.witness->ones) << "\n";
            return kFalse;
        default:
            std::cout << "unknown\n";
            return kUnknown;
    }
}

int cmd_witness(const Flags& f) {
    auto h = read_one(f.input);
    auto m = max_ones_witness(h, budget_of(f.budget_ms));
    std::cout << "ones\t" << m.ones.ones.size() << "\nsatisfied\t"
              << m.satisfied_edges << "/" << h.edge_count() << "\nset\t"
              << labels_of(h, m.ones.ones) << "\n";
    return m.exact == Tri::Yes ? kOk : kUnknown;
}

int cmd_critical(const Flags& f) {
    auto h = read_one(f.input);
    auto r = criticality(h, budget_of(f.budget_ms));
    if (r.timed_out) {
        std::cout << "unknown\n";
        return kUnknown;
    }
    if (r.is_critical == Tri::Yes) {
        std::cout << "critical\n";
        return kOk;
    }
    std::cout << "removable";
    for (int e : r.removable_edges) std::cout << "\t" << e + 1;
    std::cout << "\n";
    return kFalse;
}

int cmd_reduce(const Flags& f) {
    auto h = read_one(f.input);
    ReduceMode mode = f.mode == "rand" ? ReduceMode::Random
                                       : ReduceMode::Deterministic;
    if (mode == ReduceMode::Random && !f.seed_given)
        throw MmpError("--mode rand requires --seed");
    std::cout << reduce_to_critical(h, f.seed, mode).serialize() << "\n";
    return kOk;
}

int cmd_parity(const Flags& f) {
    auto h = read_one(f.input);
    auto c = has_parity_proof(h);
    if (!c) {
        std::cout << "none\n";
        return kFalse;
    }
    std::cout << "parity";
    for (int e : c->edge_subset) std::cout << "\t" << e + 1;
    std::cout << "\n";
    return kOk;
}

int cmd_canon(const Flags& f) {
    for (const auto& h : read_input(f.input).graphs)
        std::cout << canonical_form(h) << "\n";
    return kOk;
}

int cmd_dedup(const Flags& f) {
    DedupStore store;
    for (const auto& h : read_input(f.input).graphs) store.insert(h);
    for (const auto& [canon, entry] : store.entries())
        std::cout << canon << "\n";
    std::cerr << store.size() << " classes\n";
    return kOk;
}

int cmd_subgraph(const Flags& f) {
    auto a = read_one(f.input);
    auto b = read_one(f.second);
    auto r = find_embedding(a, b, budget_of(f.budget_ms));
    switch (r.contained) {
        case Tri::Yes: {
            std::cout << "contained";
            for (std::size_t v = 0; v < r.vertex_map.size(); ++v)
                std::cout << "\t" << a.label(static_cast<int>(v)) << ":"
                          << b.label(r.vertex_map[v]);
            std::cout << "\n";
            return kOk;
        }
        case Tri::No:
            std::cout << "not-contained\n";
            return kFalse;
        default:
            std::cout << "unknown\n";
            return kUnknown;
    }
}

int cmd_loops(const Flags& f) {
    auto h = read_one(f.input);
    auto r = maximal_loop(h, budget_of(f.budget_ms));
    std::cout << "loop\t" << r.max_loop_length << "\nedges";
    for (int e : r.edges) std::cout << "\t" << e + 1;
    std::cout << "\nlinks\t" << labels_of(h, r.link_vertices) << "\n";
    return r.exact ? kOk : kUnknown;
}

StripPlan plan_of(const Flags& f) {
    StripPlan plan;
    plan.k_min = f.k_min;
    plan.k_max = f.k_max;
    if (f.mode == "rand") {
        if (!f.seed_given) throw MmpError("--mode rand requires --seed");
        plan.mode = StripPlan::Mode::Random;
        plan.samples = f.samples ? f.samples : 1;
        plan.seed = f.seed;
    }
    return plan;
}

int cmd_strip(const Flags& f) {
    auto h = read_one(f.input);
    strip(h, plan_of(f),
          [](Hypergraph g) { std::cout << g.serialize() << "\n"; });
    return kOk;
}

int cmd_generate(const Flags& f) {
    Hypergraph master = [&] {
        if (f.master.empty()) return read_one(f.input);
        auto reg =
            MasterRegistry::load((data_dir() / "registry.json").string());
        return reg.get(f.master);
    }();
    auto r = generate_class(master, plan_of(f), f.jobs, f.checkpoint);
    auto tsv = stats_to_tsv(r.stats);
    if (!f.stats_out.empty()) {
        std::ofstream out(f.stats_out);
        out << tsv;
    } else {
        std::cout << tsv;
    }
    if (!f.out.empty()) r.criticals.save(f.out);
    std::cerr << "stripped " << r.stripped << ", ks " << r.ks << ", criticals "
              << r.criticals.size() << "\n";
    return kOk;
}

int cmd_vectors_find(const Flags& f) {
    auto h = read_one(f.input);
    if (f.dim <= 0) throw MmpError("vectors-find requires --dim");
    auto r = find_coordinatization(h, make_alphabet(f.alphabet), f.dim, f.seed,
                                   budget_of(f.budget_ms));
    switch (r.found) {
        case Tri::Yes:
            std::cout << vec_to_text(*r.assignment);
            return kOk;
        case Tri::No:
            std::cout << "none\n";
            return kFalse;
        default:
            std::cout << "unknown\n";
            return kUnknown;
    }
}

int cmd_vectors_verify(const Flags& f) {
    auto h = read_one(f.input);
    auto va = read_vec_file(f.vec_file);
    auto rep = verify_coordinatization(h, va);
    if (rep.ok) {
        std::cout << "ok\n";
        return kOk;
    }
    for (const auto& m : rep.missing) std::cout << "missing\t" << m << "\n";
    for (const auto& [e, a, b] : rep.violations)
        std::cout << "nonorthogonal\t" << e + 1 << "\t" << a << "\t" << b
                  << "\n";
    for (const auto& p : rep.parallel) std::cout << "parallel\t" << p << "\n";
    return kFalse;
}

int cmd_stats(const Flags& f) {
    DedupStore store;
    for (const auto& h : read_input(f.input).graphs) store.insert(h);
    std::cout << stats_to_tsv(statistics_from(store));
    return kOk;
}

int cmd_export_dot(const Flags& f) {
    auto h = read_one(f.input);
    std::vector<std::uint8_t> on_loop(h.edge_count(), 0);
    if (f.mark_loops) {
        auto r = maximal_loop(h, budget_of(f.budget_ms));
        for (int e : r.edges) on_loop[e] = 1;
    }
    // Bipartite incidence graph: vertex nodes and edge nodes.
    std::cout << "graph mmp {\n";
    for (std::size_t v = 0; v < h.vertex_count(); ++v)
        std::cout << "  v" << v << " [label=\"" << h.label(static_cast<int>(v))
                  << "\" shape=circle];\n";
    for (std::size_t e = 0; e < h.edge_count(); ++e)
        std::cout << "  e" << e << " [label=\"" << e + 1 << "\" shape=box"
                  << (on_loop[e] ? " style=bold color=red" : "") << "];\n";
    for (std::size_t e = 0; e < h.edge_count(); ++e)
        for (int v : h.edge(e))
            std::cout << "  e" << e << " -- v" << v
                      << (on_loop[e] ? " [style=bold color=red]" : "")
                      << ";\n";
    std::cout << "}\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MMP hypergraph toolkit for Kochen-Specker set analysis"};
    app.require_subcommand(1);
    Flags f;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", f.input, "MMP file ('-' for stdin)");
    };
    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--budget", f.budget_ms,
                        "time budget in milliseconds (0 = unlimited)");
    };
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", f.seed, "random seed (required for rand)")
            ->each([&](const std::string&) { f.seed_given = true; });
    };

    auto* parse_cmd = app.add_subcommand("parse", "parse and re-serialize");
    add_input(parse_cmd);
    parse_cmd->add_flag("--strip-stars", f.strip_stars,
                        "treat '*' as figure loop markers");

    auto* validate_cmd = app.add_subcommand("validate", "structural checks");
    add_input(validate_cmd);
    validate_cmd->add_option("--dim", f.dim, "expected edge size");

    auto* ks_cmd = app.add_subcommand("ks-check", "decide the KS property");
    add_input(ks_cmd);
    ks_cmd->add_option("--dim", f.dim, "declared dimension (informational)");
    add_budget(ks_cmd);

    auto* witness_cmd =
        app.add_subcommand("witness", "maximum-ones valuation");
    add_input(witness_cmd);
    add_budget(witness_cmd);

    auto* critical_cmd = app.add_subcommand("critical", "criticality test");
    add_input(critical_cmd);
    add_budget(critical_cmd);

    auto* reduce_cmd =
        app.add_subcommand("reduce", "reduce a KS set to a critical subset");
    add_input(reduce_cmd);
    reduce_cmd->add_option("--mode", f.mode, "det|rand")
        ->check(CLI::IsMember({"det", "rand"}));
    add_seed(reduce_cmd);

    auto* parity_cmd = app.add_subcommand("parity", "parity-proof detection");
    add_input(parity_cmd);

    auto* canon_cmd = app.add_subcommand("canon", "canonical form per line");
    add_input(canon_cmd);

    auto* dedup_cmd =
        app.add_subcommand("dedup", "collapse isomorphic duplicates");
    add_input(dedup_cmd);

    auto* subgraph_cmd =
        app.add_subcommand("subgraph", "containment up to isomorphism");
    subgraph_cmd->add_option("input", f.input, "candidate sub-hypergraph")
        ->required();
    subgraph_cmd->add_option("container", f.second, "containing hypergraph")
        ->required();
    add_budget(subgraph_cmd);

    auto* loops_cmd = app.add_subcommand("loops", "maximal loop");
    add_input(loops_cmd);
    add_budget(loops_cmd);

    auto* strip_cmd = app.add_subcommand("strip", "remove edge subsets");
    add_input(strip_cmd);
    strip_cmd->add_option("--k-min", f.k_min, "minimum edges to remove");
    strip_cmd->add_option("--k-max", f.k_max, "maximum edges to remove");
    strip_cmd->add_option("--mode", f.mode, "det|rand")
        ->check(CLI::IsMember({"det", "rand"}));
    strip_cmd->add_option("--samples", f.samples, "random draws");
    add_seed(strip_cmd);

    auto* generate_cmd = app.add_subcommand(
        "generate", "strip, filter KS, reduce to criticals, dedup");
    add_input(generate_cmd);
    generate_cmd->add_option("--master", f.master,
                             "registry master name (overrides input)");
    generate_cmd->add_option("--k-min", f.k_min, "minimum edges to remove");
    generate_cmd->add_option("--k-max", f.k_max, "maximum edges to remove");
    generate_cmd->add_option("--mode", f.mode, "det|rand")
        ->check(CLI::IsMember({"det", "rand"}));
    generate_cmd->add_option("--samples", f.samples, "random draws");
    generate_cmd->add_option("--jobs", f.jobs, "worker threads");
    generate_cmd->add_option("--checkpoint", f.checkpoint,
                             "resumable checkpoint directory");
    generate_cmd->add_option("--stats-out", f.stats_out, "stats TSV path");
    generate_cmd->add_option("--out", f.out, "criticals store path");
    add_seed(generate_cmd);

    auto* vf_cmd =
        app.add_subcommand("vectors-find", "search a coordinatization");
    add_input(vf_cmd);
    vf_cmd->add_option("--dim", f.dim, "vector dimension")->required();
    vf_cmd->add_option("--alphabet", f.alphabet,
                       "pm1|omega|omega2|gauss|comma-separated scalars");
    add_seed(vf_cmd);
    add_budget(vf_cmd);

    auto* vv_cmd =
        app.add_subcommand("vectors-verify", "verify a coordinatization");
    add_input(vv_cmd);
    vv_cmd->add_option("--vec", f.vec_file, ".vec assignment file")
        ->required();

    auto* stats_cmd = app.add_subcommand("stats", "size-class statistics");
    add_input(stats_cmd);

    auto* dot_cmd =
        app.add_subcommand("export-dot", "bipartite incidence graph in DOT");
    add_input(dot_cmd);
    dot_cmd->add_flag("--loops", f.mark_loops, "highlight maximal-loop edges");
    add_budget(dot_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*parse_cmd) return cmd_parse(f);
        if (*validate_cmd) return cmd_validate(f);
        if (*ks_cmd) return cmd_ks_check(f);
        if (*witness_cmd) return cmd_witness(f);
        if (*critical_cmd) return cmd_critical(f);
        if (*reduce_cmd) return cmd_reduce(f);
        if (*parity_cmd) return cmd_parity(f);
        if (*canon_cmd) return cmd_canon(f);
        if (*dedup_cmd) return cmd_dedup(f);
        if (*subgraph_cmd) return cmd_subgraph(f);
        if (*loops_cmd) return cmd_loops(f);
        if (*strip_cmd) return cmd_strip(f);
        if (*generate_cmd) return cmd_generate(f);
        if (*vf_cmd) return cmd_vectors_find(f);
        if (*vv_cmd) return cmd_vectors_verify(f);
        if (*stats_cmd) return cmd_stats(f);
        if (*dot_cmd) return cmd_export_dot(f);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kError;
    }
    return kError;
}
