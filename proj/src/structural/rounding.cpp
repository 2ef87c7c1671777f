#include "structural/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "util/rng.hpp"

namespace structural {

void LoadAssignment::validate() const {
    const int n = static_cast<int>(permutation.size());
    if (static_cast<int>(rows.size()) != n)
        throw StructureError("rows must align with the permutation");
    if (n > 0 && !rows[0].empty()) throw StructureError("row 0 has no earlier vertex");
    for (int i = 1; i < n; ++i) {
        double sum = 0.0;
        for (const auto& [j, p, edges] : rows[i]) {
            (void)edges;
            if (j < 0 || j >= i) throw StructureError("family index out of range");
            if (p < -1e-15 || p > 1.0 + 1e-12) throw StructureError("probability out of [0,1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw StructureError("row " + std::to_string(i) + " does not sum to 1");
    }
}

std::map<Edge, double> LoadAssignment::edgeLoads() const {
    std::map<Edge, double> load;
    for (const auto& row : rows)
        for (const auto& [j, p, edges] : row) {
            (void)j;
            for (const auto& e : edges) load[e] += p;
        }
    return load;
}

double LoadAssignment::maxLoad() const {
    double mx = 0.0;
    for (const auto& [e, l] : edgeLoads()) {
        (void)e;
        mx = std::max(mx, l);
    }
    return mx;
}

LoadAssignment makePathAssignment(const Tree& tree, std::uint64_t seed) {
    LoadAssignment a;
    a.tree = tree;

    // BFS order from the smallest vertex so every non-root has an earlier parent.
    std::map<int, std::vector<int>> adj;
    for (int v : tree.vertices) adj[v];
    for (const auto& [u, v] : tree.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    const int root = *std::min_element(tree.vertices.begin(), tree.vertices.end());
    std::map<int, int> parent, order;
    std::vector<int> queue{root};
    parent[root] = root;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        order[x] = static_cast<int>(head);
        for (int y : adj[x])
            if (!parent.count(y)) {
                parent[y] = x;
                queue.push_back(y);
            }
    }
    a.permutation = queue;
    a.rows.resize(queue.size());

    auto rng = util::makeRng(seed);
    for (std::size_t i = 1; i < queue.size(); ++i) {
        const int v = queue[i];
        const int p = parent[v];
        // Earlier vertices within graph distance 2 of v, besides the parent.
        std::vector<int> near;
        for (int u : adj[p])
            if (u != v && order[u] < static_cast<int>(i)) near.push_back(u);
        if (p != root && order[parent[p]] < static_cast<int>(i)) near.push_back(parent[p]);
        std::sort(near.begin(), near.end());
        near.erase(std::unique(near.begin(), near.end()), near.end());

        auto& row = a.rows[i];
        if (near.empty() || util::uniform01(rng) < 0.5) {
            row.emplace_back(order[p], 1.0, treePath(tree, v, p));
        } else {
            const int other = near[util::uniformInt(rng, 0, static_cast<int>(near.size()) - 1)];
            const double mass = 0.1 + 0.3 * util::uniform01(rng);
            row.emplace_back(order[p], 1.0 - mass, treePath(tree, v, p));
            row.emplace_back(order[other], mass, treePath(tree, v, other));
        }
    }
    a.validate();
    return a;
}

RoundedAssignment roundAssignment(const LoadAssignment& p, std::uint64_t seed) {
    p.validate();
    RoundedAssignment q;
    q.choice.assign(p.rows.size(), -1);
    auto rng = util::makeRng(seed);
    for (std::size_t i = 1; i < p.rows.size(); ++i) {
        const double r = util::uniform01(rng);
        double prefix = 0.0;
        int pick = static_cast<int>(p.rows[i].size()) - 1;  // guard against roundoff
        for (std::size_t idx = 0; idx < p.rows[i].size(); ++idx) {
            prefix += std::get<1>(p.rows[i][idx]);
            if (prefix >= r) {
                pick = static_cast<int>(idx);
                break;
            }
        }
        q.choice[i] = pick;
        for (const auto& e : std::get<2>(p.rows[i][pick])) {
            double& l = q.loads[e];
            l += 1.0;
            q.maxLoad = std::max(q.maxLoad, l);
        }
    }
    return q;
}

}  // namespace structural
