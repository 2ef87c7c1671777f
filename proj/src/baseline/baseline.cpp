#include "baseline/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace baseline {
namespace {

constexpr double kEps = 1e-9;

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

OfflineResult offlineOmpcOpt(const ExplicitInstance& inst) {
    const int nVars = static_cast<int>(inst.variables.size());
    if (nVars > 22) throw ompc::OracleCapacityError("offlineOmpcOpt: more than 22 variables");

    // Per-variable dense column and per-covering-row coefficient.
    std::vector<std::vector<double>> packed(nVars, std::vector<double>(inst.m, 0.0));
    std::vector<std::vector<double>> cover(nVars, std::vector<double>(inst.covering.size(), 0.0));
    for (int v = 0; v < nVars; ++v) {
        for (auto [row, c] : inst.variables[v].second) packed[v][row] += c;
        for (std::size_t j = 0; j < inst.covering.size(); ++j)
            for (auto [id, c] : inst.covering[j].coeffs)
                if (id == inst.variables[v].first) cover[v][j] += c;
    }

    OfflineResult res;
    for (std::uint32_t mask = 0; mask < (1u << nVars); ++mask) {
        ++res.nodesExplored;
        std::vector<double> covered(inst.covering.size(), 0.0);
        std::vector<double> load(inst.m, 0.0);
        for (int v = 0; v < nVars; ++v)
            if (mask >> v & 1) {
                for (std::size_t j = 0; j < covered.size(); ++j) covered[j] += cover[v][j];
                for (int i = 0; i < inst.m; ++i) load[i] += packed[v][i];
            }
        bool ok = std::all_of(covered.begin(), covered.end(),
                              [](double c) { return c >= 1.0 - kEps; });
        if (!ok) continue;
        double alpha = load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
        if (!res.feasible || alpha < res.objective - 1e-12) {
            res.feasible = true;
            res.objective = alpha;
            res.witness.clear();
            for (int v = 0; v < nVars; ++v)
                if (mask >> v & 1) res.witness.push_back(inst.variables[v].first);
        }
    }
    return res;
}

OfflineResult offlineSteinerOpt(const steiner::WeightedGraph& graph,
                                const steiner::DemandStream& demands) {
    graph.validate();
    const int nEdges = static_cast<int>(graph.edges.size());
    if (nEdges > 18) throw ompc::OracleCapacityError("offlineSteinerOpt: more than 18 edges");

    // Branch on the heaviest edges first; light solutions surface early via
    // the exclude-first order and tighten the weight prune.
    std::vector<int> order(nEdges);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return graph.edges[a].w > graph.edges[b].w; });

    OfflineResult res;
    std::vector<int> chosen;
    std::vector<int> degree(graph.n, 0);

    auto connectable = [&](int idx) {
        steiner::UnionFind uf(graph.n);
        for (int e : chosen) uf.unite(graph.edges[e].u, graph.edges[e].v);
        for (int j = idx; j < nEdges; ++j)
            uf.unite(graph.edges[order[j]].u, graph.edges[order[j]].v);
        for (const auto& d : demands)
            if (!uf.connected(d.s, d.t)) return false;
        return true;
    };

    auto rec = [&](auto&& self, int idx, double weight) -> void {
        ++res.nodesExplored;
        if (res.feasible && weight >= res.objective - 1e-12) return;
        if (!connectable(idx)) return;
        if (idx == nEdges) {
            steiner::UnionFind uf(graph.n);
            for (int e : chosen) uf.unite(graph.edges[e].u, graph.edges[e].v);
            for (const auto& d : demands)
                if (!uf.connected(d.s, d.t)) return;
            res.feasible = true;
            res.objective = weight;
            res.witness.assign(chosen.begin(), chosen.end());
            std::sort(res.witness.begin(), res.witness.end());
            return;
        }
        int e = order[idx];
        self(self, idx + 1, weight);  // exclude first
        if (degree[graph.edges[e].u] < graph.bounds[graph.edges[e].u] &&
            degree[graph.edges[e].v] < graph.bounds[graph.edges[e].v]) {
            chosen.push_back(e);
            ++degree[graph.edges[e].u];
            ++degree[graph.edges[e].v];
            self(self, idx + 1, weight + graph.edges[e].w);
            --degree[graph.edges[e].u];
            --degree[graph.edges[e].v];
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0.0);
    return res;
}

namespace {

// All simple s-t paths in the graph plus the virtual contraction edges,
// projected onto their real edge sets (deduplicated, sorted).
std::vector<std::vector<int>> realPathCandidates(const steiner::WeightedGraph& graph,
                                                 const steiner::DemandStream& virtualEdges,
                                                 int s, int t) {
    std::vector<std::vector<std::pair<int, int>>> adj(graph.n);  // (to, edgeRef)
    for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e) {
        adj[graph.edges[e].u].push_back({graph.edges[e].v, e});
        adj[graph.edges[e].v].push_back({graph.edges[e].u, e});
    }
    for (const auto& d : virtualEdges) {
        adj[d.s].push_back({d.t, -1});
        adj[d.t].push_back({d.s, -1});
    }

    std::set<std::vector<int>> found;
    std::vector<bool> visited(graph.n, false);
    std::vector<int> current;
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == t) {
            std::vector<int> proj = current;
            std::sort(proj.begin(), proj.end());
            found.insert(proj);
            return;
        }
        visited[v] = true;
        for (auto [to, ref] : adj[v]) {
            if (visited[to]) continue;
            if (ref >= 0) current.push_back(ref);
            self(self, to);
            if (ref >= 0) current.pop_back();
        }
        visited[v] = false;
    };
    dfs(dfs, s);
    return {found.begin(), found.end()};
}

}  // namespace

OfflineResult offlineIpGoodOpt(const steiner::WeightedGraph& graph,
                               const steiner::DemandStream& demands, double wOpt) {
    graph.validate();
    if (wOpt <= 0.0) throw ompc::InstanceError("offlineIpGoodOpt needs wOpt > 0");

    std::vector<std::vector<std::vector<int>>> candidates;
    steiner::DemandStream prior;
    double product = 1.0;
    for (const auto& d : demands) {
        auto cand = realPathCandidates(graph, prior, d.s, d.t);
        if (cand.empty()) return {};  // demand unreachable: infeasible
        product *= static_cast<double>(cand.size());
        if (product > 1e6)
            throw ompc::OracleCapacityError("offlineIpGoodOpt: candidate product exceeds 1e6");
        candidates.push_back(std::move(cand));
        prior.push_back(d);
    }

    OfflineResult res;
    std::vector<int> degree(graph.n, 0);
    std::vector<const std::vector<int>*> pick(demands.size(), nullptr);
    double weight = 0.0;

    auto alphaSoFar = [&]() {
        double a = weight / wOpt;
        for (int v = 0; v < graph.n; ++v)
            a = std::max(a, static_cast<double>(degree[v]) / graph.bounds[v]);
        return a;
    };

    auto rec = [&](auto&& self, std::size_t i) -> void {
        ++res.nodesExplored;
        if (res.feasible && alphaSoFar() >= res.objective - 1e-12) return;  // loads only grow
        if (i == demands.size()) {
            res.feasible = true;
            res.objective = alphaSoFar();
            res.witnessPaths.clear();
            for (const auto* p : pick) res.witnessPaths.push_back(*p);
            return;
        }
        for (const auto& path : candidates[i]) {
            for (int e : path) {
                ++degree[graph.edges[e].u];
                ++degree[graph.edges[e].v];
                weight += graph.edges[e].w;
            }
            pick[i] = &path;
            self(self, i + 1);
            for (int e : path) {
                --degree[graph.edges[e].u];
                --degree[graph.edges[e].v];
                weight -= graph.edges[e].w;
            }
        }
    };
    rec(rec, 0);
    return res;
}

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {}

std::optional<OfflineResult> ResultCache::load(const std::string& key) const {
    std::ifstream in(std::filesystem::path(dir_) / (key + ".json"));
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
        OfflineResult res;
        res.feasible = j.at("feasible").get<bool>();
        res.objective = j.at("objective").get<double>();
        res.witness = j.at("witness").get<std::vector<ompc::VarId>>();
        res.witnessPaths = j.at("witnessPaths").get<std::vector<std::vector<int>>>();
        res.nodesExplored = j.at("nodesExplored").get<std::uint64_t>();
        return res;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // stale or corrupt entry: recompute
    }
}

void ResultCache::store(const std::string& key, const OfflineResult& result) const {
    std::filesystem::create_directories(dir_);
    nlohmann::json j;
    j["feasible"] = result.feasible;
    j["objective"] = result.objective;
    j["witness"] = result.witness;
    j["witnessPaths"] = result.witnessPaths;
    j["nodesExplored"] = result.nodesExplored;
    std::ofstream out(std::filesystem::path(dir_) / (key + ".json"));
    out << j.dump(2) << "\n";
}

std::string instanceHash(const steiner::Instance& inst, const std::string& tag) {
    std::ostringstream os;
    os << tag << '|' << inst.graph.n << '|';
    for (const auto& e : inst.graph.edges) os << e.u << ',' << e.v << ',' << e.w << ';';
    os << '|';
    for (int b : inst.graph.bounds) os << b << ';';
    os << '|';
    for (const auto& d : inst.demands) os << d.s << ',' << d.t << ';';
    std::ostringstream hex;
    hex << std::hex << fnv1a(os.str());
    return hex.str();
}

}  // namespace baseline
