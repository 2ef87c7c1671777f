#pragma once

#include "steiner/engine.hpp"

namespace steiner {

struct PhaseLog {
    int phase = 1;
    double guess = 0.0;
    int demandsServed = 0;
    double maxF = 0.0;       // per-phase solver accounting at phase end
    double weight = 0.0;     // weight bought during this phase
    bool breached = false;   // ended by threshold breach or infeasibility
};

struct DoublingResult {
    std::vector<ServeRecord> records;   // one per demand, final phase that served it
    std::vector<PhaseLog> phases;
    std::vector<int> cumulativeDegree;  // real-edge degrees across all phases
    double cumulativeWeight = 0.0;
    double threshold = 0.0;             // log_rho(gamma m/(gamma-1))
    double finalGuess = 0.0;
    int phaseCount = 0;
    bool feasible = false;  // all demands connected by purchased real edges
};

/// Geometric guessing of the unknown optimal weight: start at the smallest
/// positive edge weight, serve until a demand would push some row past the
/// threshold (or fits no path at all), then multiply the guess by r and
/// restart the solver accounting. Purchased edges and the contraction carry
/// across phases.
DoublingResult runWithDoubling(const WeightedGraph& graph, const DemandStream& stream, double r,
                               OracleKind kind, int maxPhases = 60);

}  // namespace steiner
