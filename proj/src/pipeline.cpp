#include "mmp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "mmp/parity.hpp"
#include "mmp/subgraph.hpp"

namespace mmp {

namespace fs = std::filesystem;
using nlohmann::json;

MasterRegistry MasterRegistry::load(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw MmpError("cannot open registry '" + manifest_path + "'");
    json j = json::parse(in);
    fs::path base = fs::path(manifest_path).parent_path();
    MasterRegistry r;
    for (const auto& entry : j.at("masters")) {
        std::string name = entry.at("name").get<std::string>();
        fs::path file = base / entry.at("file").get<std::string>();
        r.masters_.emplace(name, read_single(file.string()));
    }
    return r;
}

const Hypergraph& MasterRegistry::get(const std::string& name) const {
    auto it = masters_.find(name);
    if (it == masters_.end())
        throw MmpError("master '" + name + "' is not registered");
    return it->second;
}

std::vector<std::string> MasterRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, h] : masters_) out.push_back(name);
    return out;
}

void strip(const Hypergraph& h, const StripPlan& plan,
           const std::function<void(Hypergraph)>& sink) {
    const int m = static_cast<int>(h.edge_count());
    if (plan.k_min < 0 || plan.k_max >= m || plan.k_min > plan.k_max)
        throw MmpError("strip count out of range");
    if (plan.mode == StripPlan::Mode::Exhaustive) {
        for (int k = plan.k_min; k <= plan.k_max; ++k) {
            std::vector<int> combo(k);
            for (int i = 0; i < k; ++i) combo[i] = i;
            for (;;) {
                sink(h.without_edges(combo));
                if (k == 0) break;
                int i = k - 1;
                while (i >= 0 && combo[i] == m - k + i) --i;
                if (i < 0) break;
                ++combo[i];
                for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
            }
        }
        return;
    }
    // Random mode: distinct subsets, counter-based draws from the seed.
    std::set<std::vector<int>> seen;
    std::uint64_t counter = 0;
    for (std::uint64_t i = 0; i < plan.samples; ++i) {
        std::vector<int> combo;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            int span = plan.k_max - plan.k_min + 1;
            int k = plan.k_min +
                    static_cast<int>(splitmix64(plan.seed ^ splitmix64(counter++)) %
                                     span);
            std::vector<int> pool(m);
            for (int j = 0; j < m; ++j) pool[j] = j;
            for (int j = 0; j < k; ++j) {
                std::uint64_t r = splitmix64(plan.seed ^ splitmix64(counter++));
                std::swap(pool[j], pool[j + r % (m - j)]);
            }
            combo.assign(pool.begin(), pool.begin() + k);
            std::sort(combo.begin(), combo.end());
            if (seen.insert(combo).second) break;
            combo.clear();
        }
        if (combo.empty() && plan.k_min > 0)
            throw MmpError("could not draw a fresh edge subset");
        sink(h.without_edges(combo));
    }
}

std::vector<Hypergraph> strip(const Hypergraph& h, const StripPlan& plan) {
    std::vector<Hypergraph> out;
    strip(h, plan, [&](Hypergraph g) { out.push_back(std::move(g)); });
    return out;
}

ClassStatistics statistics_from(const DedupStore& criticals) {
    ClassStatistics s;
    for (const auto& [canon, entry] : criticals.entries()) {
        Hypergraph h = Hypergraph::parse(canon);
        bool parity = has_parity_proof(h).has_value();
        auto& cell = s.rows[{static_cast<int>(h.vertex_count()),
                             static_cast<int>(h.edge_count())}];
        ++cell.first;
        cell.second += parity;
        ++s.total;
        s.total_with_parity += parity;
    }
    return s;
}

std::string stats_to_tsv(const ClassStatistics& s) {
    std::ostringstream out;
    out << "vertices\tedges\tcount\tparity_count\n";
    for (const auto& [key, cell] : s.rows)
        out << key.first << '\t' << key.second << '\t' << cell.first << '\t'
            << cell.second << '\n';
    out << "total\t\t" << s.total << '\t' << s.total_with_parity << '\n';
    return out.str();
}

GenerateResult generate_class(const Hypergraph& master, const StripPlan& plan,
                              int workers, const std::string& checkpoint_dir) {
    if (is_ks(master).is_ks != Tri::Yes)
        throw NotKsError("master is not a KS set");
    std::uint64_t resume_from = 0;
    GenerateResult result;
    fs::path store_path, progress_path;
    if (!checkpoint_dir.empty()) {
        fs::create_directories(checkpoint_dir);
        store_path = fs::path(checkpoint_dir) / "criticals.dedup";
        progress_path = fs::path(checkpoint_dir) / "progress.json";
        if (fs::exists(progress_path) && fs::exists(store_path)) {
            json p = json::parse(std::ifstream(progress_path.string()));
            resume_from = p.value("processed", 0ULL);
            result.stripped = resume_from;
            result.ks = p.value("ks", 0ULL);
            result.criticals = DedupStore::load(store_path.string());
        }
    }

    // Materialize the item stream; acceptance-scale plans are modest.
    std::vector<Hypergraph> items = strip(master, plan);
    std::atomic<std::uint64_t> ks_count{result.ks};
    std::vector<DedupStore> shards(std::max(workers, 1));

    auto work = [&](int worker) {
        for (std::size_t i = resume_from + worker; i < items.size();
             i += std::max(workers, 1)) {
            const Hypergraph& g = items[i];
            if (is_ks(g).is_ks != Tri::Yes) continue;
            ++ks_count;
            std::uint64_t sub_seed = canonical_hash(g);
            Hypergraph critical =
                reduce_to_critical(g, sub_seed, ReduceMode::Random);
            shards[worker].insert(critical);
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& shard : shards) result.criticals.merge(shard);
    result.stripped += items.size() > resume_from ? items.size() - resume_from : 0;
    result.ks = ks_count;
    result.stats = statistics_from(result.criticals);

    if (!checkpoint_dir.empty()) {
        result.criticals.save(store_path.string());
        json p{{"processed", items.size()}, {"ks", result.ks}};
        std::ofstream(progress_path.string()) << p.dump(2) << '\n';
    }
    return result;
}

ExhaustiveResult explore_ks_subsets(const Hypergraph& master) {
    const int m = static_cast<int>(master.edge_count());
    if (m > 64) throw MmpError("exhaustive subset walk supports at most 64 edges");
    if (is_ks(master).is_ks != Tri::Yes)
        throw NotKsError("master is not a KS set");
    ExhaustiveResult result;
    const std::uint64_t full = m == 64 ? ~0ULL : (1ULL << m) - 1;

    std::unordered_map<std::uint64_t, bool> ks_memo{{full, true}};
    std::set<std::uint64_t> expanded;

    auto subgraph_of = [&](std::uint64_t mask) {
        std::vector<int> removed;
        for (int e = 0; e < m; ++e)
            if (!(mask >> e & 1)) removed.push_back(e);
        return master.without_edges(removed);
    };
    auto ks_of = [&](std::uint64_t mask) {
        auto it = ks_memo.find(mask);
        if (it != ks_memo.end()) return it->second;
        bool ks = mask != 0 && is_ks(subgraph_of(mask)).is_ks == Tri::Yes;
        ks_memo.emplace(mask, ks);
        return ks;
    };

    // DFS over the up-closed family of KS subsets.
    std::set<std::string> classes;
    std::vector<std::uint64_t> stack{full};
    expanded.insert(full);
    while (!stack.empty()) {
        std::uint64_t mask = stack.back();
        stack.pop_back();
        bool any_child_ks = false;
        for (int e = 0; e < m; ++e) {
            if (!(mask >> e & 1)) continue;
            std::uint64_t child = mask & ~(1ULL << e);
            if (ks_of(child)) {
                any_child_ks = true;
                if (expanded.insert(child).second) {
                    ++result.ks_proper_subsets_raw;
                    classes.insert(canonical_form(subgraph_of(child)));
                    stack.push_back(child);
                }
            }
        }
        if (!any_child_ks) result.criticals.insert(subgraph_of(mask));
    }
    result.ks_proper_subsets = classes.size();
    return result;
}

Tri class_membership(const Hypergraph& candidate, const Hypergraph& master,
                     SolveBudget budget) {
    KsVerdict v = is_ks(candidate, budget);
    if (v.is_ks == Tri::No) return Tri::No;
    if (v.is_ks == Tri::Unknown) return Tri::Unknown;
    return is_subgraph(candidate, master, budget);
}

}  // namespace mmp
