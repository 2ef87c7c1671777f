#pragma once

#include <string>
#include <vector>

#include "ompc/core.hpp"

namespace steiner {

struct Demand {
    int s = 0;
    int t = 0;
};

using DemandStream = std::vector<Demand>;

/// Simple undirected graph with positive edge weights and per-vertex degree
/// bounds. Edges are referenced by index into `edges`.
struct WeightedGraph {
    struct Edge {
        int u = 0;
        int v = 0;
        double w = 0.0;
    };

    int n = 0;
    std::vector<Edge> edges;
    std::vector<int> bounds;

    void validate() const;
    double minPositiveWeight() const;
    double weightRatio() const;  // max w / min positive w
    int other(int edge, int endpoint) const {
        return edges[edge].u == endpoint ? edges[edge].v : edges[edge].u;
    }
};

struct Instance {
    WeightedGraph graph;
    DemandStream demands;
};

/// File format: { "vertices": n, "edges": [[u,v,w]...], "bounds": [b...],
/// "demands": [[s,t]...] }.
Instance loadInstance(const std::string& path);
void saveInstance(const Instance& inst, const std::string& path);

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
    bool connected(int a, int b) { return find(a) == find(b); }
};

}  // namespace steiner
