#pragma once

#include <optional>

#include "ompc/solver.hpp"
#include "steiner/graph.hpp"

namespace steiner {

/// Snapshot the path oracles search against: the real graph, the current
/// weight guess (scaled packing divisor included), the virtual zero-weight
/// contraction edges, and the solver holding the current loads F.
struct OracleContext {
    const WeightedGraph* graph = nullptr;
    double wGuess = 0.0;
    double scale = 1.0;                 // packing rows are divided by this
    std::vector<Demand> virtualEdges;   // endpoint pairs of served demands
    const ompc::Solver* solver = nullptr;

    double weightBudget() const { return wGuess * scale; }
    double degreeDelta(int v) const;    // one incident real edge on row v
    double weightDelta(double w) const; // real weight w on the weight row
};

/// Aggregated per-row deltas of a real-edge set under the IP encoding
/// (rows 0..n-1 are vertex degrees, row n is weight).
std::vector<std::pair<int, double>> edgeSetDeltas(const OracleContext& ctx,
                                                 const std::vector<int>& realEdges);

/// True marginal tau of committing the edge set given current F.
double edgeSetTau(const OracleContext& ctx, const std::vector<int>& realEdges);

/// True when all per-row deltas are <= 1 (the solver's per-step cap).
bool edgeSetFits(const OracleContext& ctx, const std::vector<int>& realEdges);

/// Separable marginal cost of one real edge:
/// sum over its rows of rho^F_i (rho^delta_i - 1). Zero for virtual edges.
double marginalCost(const OracleContext& ctx, int edge);

/// Label-setting resource-constrained shortest path minimizing the separable
/// surrogate cost subject to the real-weight budget. Returns real edge
/// indices of a simple s-t path, or nullopt when no path fits.
std::optional<std::vector<int>> pathOracle(const OracleContext& ctx, int s, int t);

/// Ground truth: enumerate every simple s-t path (<= 15 vertices) and pick
/// the true tau minimizer among those fitting all per-row caps.
std::optional<std::vector<int>> exactPathEnumeration(const OracleContext& ctx, int s, int t);

}  // namespace steiner
