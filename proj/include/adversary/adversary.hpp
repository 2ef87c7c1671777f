#pragma once

#include <cstdint>

#include "ompc/solver.hpp"

namespace adversary {

/// Complete binary tree with m leaves; d unit-coefficient variables per edge.
/// One packing constraint per leaf over its root path. Nodes use heap
/// indexing 1..2m-1 (leaves m..2m-1); the edge above node v has index v-2.
struct AdversaryInstance {
    int m = 0;  // leaves / packing constraints (power of two)
    int d = 0;  // variables per edge (power of two); k = log2 d

    int numEdges() const { return 2 * m - 2; }
    std::int64_t numVariables() const { return static_cast<std::int64_t>(numEdges()) * d; }
    int coveringFrequency() const;

    ompc::VarId varId(int edge, int slot) const {
        return static_cast<ompc::VarId>(edge) * d + slot;
    }
    int edgeOf(ompc::VarId id) const { return static_cast<int>(id / d); }

    /// Leaves whose root path uses the given edge.
    std::vector<int> leavesUnderEdge(int edge) const;

    ompc::PackingSystem packingSystem() const;
};

/// One realized randomized stream: a random leaf path and, per path node, the
/// halving schedule of active sets with the final-round survivors recorded.
struct AdversaryRun {
    AdversaryInstance instance;
    std::uint64_t seed = 0;
    int leaf = 0;
    std::vector<ompc::CoveringConstraint> constraints;  // in arrival order
    std::vector<ompc::VarId> offPathSurvivors;          // one per path node
};

AdversaryRun generate(int m, int d, std::uint64_t seed);

/// Planted optimum: one final-round survivor per off-path child edge; alpha=1.
/// Validated against every packing row and every emitted constraint.
ompc::PlantedCertificate offlineOpt(const AdversaryRun& run);

struct EvalStats {
    int trials = 0;
    double meanMaxViolation = 0.0;
    double minMaxViolation = 0.0;
    double maxMaxViolation = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double lowerBound = 0.0;  // (1/4)(log2 m - 1) log2 d
    double upperBound = 0.0;  // k * log_rho(gamma m / (gamma - 1))
    std::vector<double> perTrial;
    std::vector<std::uint64_t> perTrialSeed;
};

using SolverFactory = std::function<ompc::Solver(const AdversaryInstance&)>;

EvalStats evaluate(const SolverFactory& factory, const ompc::SetOracle& oracle, int m, int d,
                   int trials, std::uint64_t seed);

/// Default factory: gamma=2, rho=1.5 with a planted certificate per run.
EvalStats evaluateDefault(int m, int d, int trials, std::uint64_t seed);

}  // namespace adversary
