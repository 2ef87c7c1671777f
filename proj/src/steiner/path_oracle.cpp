#include "steiner/path_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <tuple>

namespace steiner {
namespace {

constexpr double kEps = 1e-9;

// Adjacency over the contracted graph: edgeRef >= 0 indexes a real edge,
// edgeRef == -1 is a virtual zero-weight contraction edge.
struct Arc {
    int to;
    int edgeRef;
};

std::vector<std::vector<Arc>> buildAdjacency(const OracleContext& ctx) {
    const auto& g = *ctx.graph;
    std::vector<std::vector<Arc>> adj(g.n);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        // A single over-budget edge can never satisfy the weight-row cap.
        if (g.edges[e].w > ctx.weightBudget() + kEps) continue;
        adj[g.edges[e].u].push_back({g.edges[e].v, e});
        adj[g.edges[e].v].push_back({g.edges[e].u, e});
    }
    for (const auto& d : ctx.virtualEdges) {
        adj[d.s].push_back({d.t, -1});
        adj[d.t].push_back({d.s, -1});
    }
    return adj;
}

double rhoPow(const OracleContext& ctx, double x) {
    return std::exp(x * std::log(ctx.solver->params().rho));
}

}  // namespace

double OracleContext::degreeDelta(int v) const {
    return 1.0 / (graph->bounds[v] * scale) / solver->system().k;
}

double OracleContext::weightDelta(double w) const {
    return w / (wGuess * scale) / solver->system().k;
}

std::vector<std::pair<int, double>> edgeSetDeltas(const OracleContext& ctx,
                                                 const std::vector<int>& realEdges) {
    std::map<int, double> acc;
    for (int e : realEdges) {
        const auto& edge = ctx.graph->edges[e];
        acc[edge.u] += ctx.degreeDelta(edge.u);
        acc[edge.v] += ctx.degreeDelta(edge.v);
        acc[ctx.graph->n] += ctx.weightDelta(edge.w);
    }
    return {acc.begin(), acc.end()};
}

double edgeSetTau(const OracleContext& ctx, const std::vector<int>& realEdges) {
    const auto& F = ctx.solver->state().F;
    double tau = 0.0;
    for (auto [row, delta] : edgeSetDeltas(ctx, realEdges))
        tau += rhoPow(ctx, F[row]) * (rhoPow(ctx, delta) - 1.0);
    return tau;
}

bool edgeSetFits(const OracleContext& ctx, const std::vector<int>& realEdges) {
    for (auto [row, delta] : edgeSetDeltas(ctx, realEdges))
        if (delta > 1.0 + kEps) return false;
    return true;
}

double marginalCost(const OracleContext& ctx, int edge) {
    const auto& e = ctx.graph->edges[edge];
    const auto& F = ctx.solver->state().F;
    double c = 0.0;
    c += rhoPow(ctx, F[e.u]) * (rhoPow(ctx, ctx.degreeDelta(e.u)) - 1.0);
    c += rhoPow(ctx, F[e.v]) * (rhoPow(ctx, ctx.degreeDelta(e.v)) - 1.0);
    c += rhoPow(ctx, F[ctx.graph->n]) * (rhoPow(ctx, ctx.weightDelta(e.w)) - 1.0);
    return c;
}

std::optional<std::vector<int>> pathOracle(const OracleContext& ctx, int s, int t) {
    const auto& g = *ctx.graph;
    auto adj = buildAdjacency(ctx);

    struct Label {
        double cost;
        double weight;
        int vertex;
        int parent;       // index into labels, -1 at the source
        int edgeRef;      // arc used to arrive, -1 virtual / none
        bool arrivedReal;
    };
    std::vector<Label> labels;
    // Pareto frontier per (vertex, arrivedReal): legality of crossing a
    // bound-1 vertex depends on how the label arrived.
    std::vector<std::array<std::vector<std::pair<double, double>>, 2>> frontier(g.n);

    auto dominated = [&](int v, bool real, double cost, double weight) {
        for (auto [c, w] : frontier[v][real])
            if (c <= cost + 1e-15 && w <= weight + 1e-15) return true;
        return false;
    };
    auto record = [&](int v, bool real, double cost, double weight) {
        auto& f = frontier[v][real];
        f.erase(std::remove_if(f.begin(), f.end(),
                               [&](const std::pair<double, double>& p) {
                                   return cost <= p.first && weight <= p.second;
                               }),
                f.end());
        f.push_back({cost, weight});
    };

    using QEntry = std::tuple<double, double, int>;  // cost, weight, label idx
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> queue;

    labels.push_back({0.0, 0.0, s, -1, -1, false});
    record(s, false, 0.0, 0.0);
    queue.push({0.0, 0.0, 0});

    int goal = -1;
    while (!queue.empty()) {
        auto [cost, weight, li] = queue.top();
        queue.pop();
        Label lab = labels[li];
        if (lab.vertex == t) {
            goal = li;
            break;
        }
        for (const Arc& arc : adj[lab.vertex]) {
            bool real = arc.edgeRef >= 0;
            if (real && lab.arrivedReal && lab.vertex != s &&
                2.0 * ctx.degreeDelta(lab.vertex) > 1.0 + kEps)
                continue;  // interior real-real passage over a bound-1 vertex
            double nw = weight + (real ? g.edges[arc.edgeRef].w : 0.0);
            if (nw > ctx.weightBudget() + kEps) continue;
            double nc = cost + (real ? marginalCost(ctx, arc.edgeRef) : 0.0);
            if (dominated(arc.to, real, nc, nw)) continue;
            record(arc.to, real, nc, nw);
            labels.push_back({nc, nw, arc.to, li, arc.edgeRef, real});
            queue.push({nc, nw, static_cast<int>(labels.size()) - 1});
        }
    }
    if (goal < 0) return std::nullopt;

    // Walk back to the source, then loop-erase so degree deltas match a
    // simple path (label-setting may revisit through virtual shortcuts).
    std::vector<std::pair<int, int>> seq;  // (vertex, arriving edgeRef)
    for (int li = goal; li >= 0; li = labels[li].parent)
        seq.push_back({labels[li].vertex, labels[li].edgeRef});
    std::reverse(seq.begin(), seq.end());

    std::vector<std::pair<int, int>> stack;
    for (auto [v, ref] : seq) {
        auto it = std::find_if(stack.begin(), stack.end(),
                               [&](const std::pair<int, int>& p) { return p.first == v; });
        if (it != stack.end())
            stack.erase(it + 1, stack.end());
        else
            stack.push_back({v, ref});
    }
    std::vector<int> path;
    for (std::size_t i = 1; i < stack.size(); ++i)
        if (stack[i].second >= 0) path.push_back(stack[i].second);
    std::sort(path.begin(), path.end());

    if (!edgeSetFits(ctx, path)) return std::nullopt;
    return path;
}

std::optional<std::vector<int>> exactPathEnumeration(const OracleContext& ctx, int s, int t) {
    const auto& g = *ctx.graph;
    if (g.n > 15)
        throw ompc::OracleCapacityError("exactPathEnumeration: more than 15 vertices");
    auto adj = buildAdjacency(ctx);

    std::optional<std::vector<int>> best;
    double bestTau = 0.0;
    std::vector<bool> visited(g.n, false);
    std::vector<int> current;

    auto consider = [&]() {
        std::vector<int> cand = current;
        std::sort(cand.begin(), cand.end());
        if (!edgeSetFits(ctx, cand)) return;
        double tau = edgeSetTau(ctx, cand);
        if (!best || tau < bestTau - 1e-15 ||
            (tau <= bestTau + 1e-15 && cand < *best)) {
            best = cand;
            bestTau = tau;
        }
    };

    double weight = 0.0;
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == t) {
            consider();
            return;
        }
        visited[v] = true;
        for (const Arc& arc : adj[v]) {
            if (visited[arc.to]) continue;
            double w = arc.edgeRef >= 0 ? g.edges[arc.edgeRef].w : 0.0;
            if (weight + w > ctx.weightBudget() + kEps) continue;
            weight += w;
            if (arc.edgeRef >= 0) current.push_back(arc.edgeRef);
            self(self, arc.to);
            if (arc.edgeRef >= 0) current.pop_back();
            weight -= w;
        }
        visited[v] = false;
    };
    dfs(dfs, s);
    return best;
}

}  // namespace steiner
