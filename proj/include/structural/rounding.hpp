#pragma once

#include <cstdint>
#include <map>

#include "structural/tree_split.hpp"

namespace structural {

/// Fractional pair assignment over a permutation of tree vertices: row i
/// (i > 0) distributes unit mass over earlier vertices j, each ordered pair
/// carrying an edge subset of the tree (the unique path by default).
struct LoadAssignment {
    Tree tree;
    std::vector<int> permutation;  // pi_1 .. pi_n (vertex ids)
    // rows[i]: (j, probability, edge family member) with j < i; row sums to 1.
    std::vector<std::vector<std::tuple<int, double, std::vector<Edge>>>> rows;

    void validate() const;
    std::map<Edge, double> edgeLoads() const;
    double maxLoad() const;
};

struct RoundedAssignment {
    std::vector<int> choice;  // per row i >= 1, the selected j index into rows[i]
    std::map<Edge, double> loads;
    double maxLoad = 0.0;
};

/// Unit-mass rows with tree-path families, mass split between the parent and
/// a nearby earlier vertex; keeps every edge load small.
LoadAssignment makePathAssignment(const Tree& tree, std::uint64_t seed);

/// Inverse-CDF rounding: draw r in [0,1], pick the first prefix reaching r.
/// Marginals equal the fractional probabilities; expected loads are preserved.
RoundedAssignment roundAssignment(const LoadAssignment& p, std::uint64_t seed);

}  // namespace structural
