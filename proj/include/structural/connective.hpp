#pragma once

#include <map>

#include "structural/tree_split.hpp"

namespace structural {

struct Demand {
    int s = 0;
    int t = 0;
};

/// Per-demand edge subsets Q_i of a forest F: prefix unions keep each served
/// pair connected while every forest edge is reused at most 3*log2|V(F)| times.
using ConnectiveList = std::vector<std::vector<Edge>>;

/// Builds a connective list by routing each demand through the forest
/// contracted by earlier pairs, penalising edge reuse. Demands must be
/// connected inside F; otherwise StructureError.
ConnectiveList buildConnective(const Tree& forest, const std::vector<Demand>& demands);

struct ConnectiveReport {
    bool ok = true;
    int maxMultiplicity = 0;
    Edge worstEdge{-1, -1};
    std::string failure;
};

/// Checks prefix-union connectivity and the multiplicity bound; for forests
/// with <= cutCheckLimit vertices also verifies the literal cut reading by
/// enumerating all vertex bipartitions.
ConnectiveReport verifyConnective(const ConnectiveList& q, const Tree& forest,
                                  const std::vector<Demand>& demands,
                                  int cutCheckLimit = 12);

}  // namespace structural
