#include "structural/tree_split.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace structural {

namespace {

std::map<int, std::vector<int>> adjacency(const Tree& t) {
    std::map<int, std::vector<int>> adj;
    for (int v : t.vertices) adj[v];
    for (const auto& [u, v] : t.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

}  // namespace

std::vector<Edge> treePath(const Tree& t, int u, int v) {
    if (u == v) return {};
    auto adj = adjacency(t);
    if (!adj.count(u) || !adj.count(v)) throw StructureError("path endpoint not in tree");
    std::map<int, int> parent;
    std::vector<int> stack{u};
    parent[u] = u;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (x == v) break;
        for (int y : adj[x])
            if (!parent.count(y)) {
                parent[y] = x;
                stack.push_back(y);
            }
    }
    if (!parent.count(v)) throw StructureError("path endpoints disconnected in tree");
    std::vector<Edge> path;
    for (int x = v; x != u; x = parent[x]) path.push_back(makeEdge(x, parent[x]));
    std::reverse(path.begin(), path.end());
    return path;
}

TreeSplit splitTree(const Tree& t) {
    const int n = static_cast<int>(t.vertices.size());
    if (n < 3) throw SizeError("splitTree needs at least 3 vertices");
    if (static_cast<int>(t.edges.size()) != n - 1)
        throw StructureError("splitTree input is not a tree");

    auto adj = adjacency(t);
    const int root = *std::min_element(t.vertices.begin(), t.vertices.end());

    // Iterative post-order for depth and subtree weight.
    std::map<int, int> parent, depth, weight;
    std::vector<int> order;
    {
        std::vector<int> stack{root};
        parent[root] = root;
        depth[root] = 0;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            order.push_back(x);
            for (int y : adj[x])
                if (!parent.count(y)) {
                    parent[y] = x;
                    depth[y] = depth[x] + 1;
                    stack.push_back(y);
                }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            weight[*it] += 1;
            if (*it != root) weight[parent[*it]] += weight[*it];
        }
    }

    // Deepest vertex reaching the threshold; ceil(n/3) guarantees each child
    // component stays strictly below it.
    const int threshold = (n + 2) / 3;
    int pivot = root;
    int bestDepth = -1;
    for (int v : t.vertices)
        if (weight[v] >= threshold &&
            (depth[v] > bestDepth || (depth[v] == bestDepth && v < pivot))) {
            pivot = v;
            bestDepth = depth[v];
        }

    // Components of T - pivot: one per child subtree, plus the upper part.
    std::vector<std::vector<int>> comps;
    for (int y : adj[pivot]) {
        if (parent[y] != pivot) continue;  // skip the upward neighbor
        std::vector<int> comp;
        std::vector<int> stack{y};
        std::set<int> seen{pivot, y};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (int z : adj[x])
                if (!seen.count(z)) {
                    seen.insert(z);
                    stack.push_back(z);
                }
        }
        comps.push_back(std::move(comp));
    }
    if (pivot != root) {
        std::vector<int> comp;
        std::vector<int> stack{parent[pivot]};
        std::set<int> seen{pivot, parent[pivot]};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (int z : adj[x])
                if (!seen.count(z)) {
                    seen.insert(z);
                    stack.push_back(z);
                }
        }
        comps.push_back(std::move(comp));
    }

    std::stable_sort(comps.begin(), comps.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });

    const int lower = n / 3;
    std::set<int> sideX;
    for (const auto& comp : comps) {
        if (static_cast<int>(sideX.size()) >= lower) break;
        sideX.insert(comp.begin(), comp.end());
    }

    TreeSplit split;
    split.sharedVertex = pivot;
    auto build = [&](bool inX) {
        Tree side;
        side.vertices.push_back(pivot);
        for (int v : t.vertices)
            if (v != pivot && (sideX.count(v) != 0) == inX) side.vertices.push_back(v);
        std::set<int> members(side.vertices.begin(), side.vertices.end());
        for (const auto& e : t.edges) {
            // pivot-incident edges follow the non-pivot endpoint.
            int probe = (e.first == pivot) ? e.second : e.first;
            if (e.first != pivot && e.second != pivot) {
                if (members.count(e.first) && members.count(e.second))
                    side.edges.push_back(e);
            } else if ((sideX.count(probe) != 0) == inX) {
                side.edges.push_back(e);
            }
        }
        std::sort(side.vertices.begin(), side.vertices.end());
        return side;
    };
    split.first = build(true);
    split.second = build(false);
    return split;
}

}  // namespace structural
