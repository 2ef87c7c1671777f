#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace structural {

struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

using Edge = std::pair<int, int>;  // normalized (min, max)

inline Edge makeEdge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Free tree over arbitrary vertex ids.
struct Tree {
    std::vector<int> vertices;
    std::vector<Edge> edges;
};

/// Edge-disjoint decomposition sharing exactly one vertex; both sides
/// connected, neither larger than ceil(2n/3)+1.
struct TreeSplit {
    Tree first;
    Tree second;
    int sharedVertex = -1;
};

/// Balanced split of a tree with >= 3 vertices: pick the deepest vertex whose
/// subtree weight reaches the one-third threshold, then greedily collect the
/// surrounding components until one side holds at least floor(n/3) vertices.
TreeSplit splitTree(const Tree& t);

/// Unique path between two vertices of a tree/forest; empty when u == v.
/// Throws StructureError when disconnected.
std::vector<Edge> treePath(const Tree& t, int u, int v);

}  // namespace structural
