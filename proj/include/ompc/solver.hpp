#pragma once

#include <optional>
#include <set>
#include <unordered_map>

#include "ompc/core.hpp"

namespace ompc {

class Solver;

/// Oracle contract for the per-arrival argmin: return a set satisfying the
/// constraint, or nullopt when none exists at the current scaling.
using SetOracle =
    std::function<std::optional<VariableSet>(const CoveringConstraint&, const Solver&)>;

/// Binary assignment with objective value 1: every packing row evaluates to
/// <= 1 and every arriving covering row to >= 1. Activates the potential
/// accounting and the provable load bounds.
struct PlantedCertificate {
    std::set<VarId> ones;
};

struct SolverState {
    std::vector<double> F;               // per-row accumulated (1/k)-scaled load
    std::vector<VariableSet> history;    // chosen S(1), S(2), ...
    std::set<VarId> committed;           // x_r = 1
    int step = 0;
};

/// Deterministic online solver for bounded-frequency mixed packing/covering
/// IPs. Each arriving covering constraint is answered with the oracle's
/// tau-minimal satisfying set, whose members are committed irrevocably.
class Solver {
  public:
    Solver(PackingSystem sys, PotentialParams params);

    /// Attaches a certificate after validating it against the packing rows.
    void plantCertificate(PlantedCertificate cert);

    double delta(const VariableSet& s, int row) const;
    std::vector<double> deltaAll(const VariableSet& s) const;
    bool satisfies(const VariableSet& s, const CoveringConstraint& c) const;
    double tau(const VariableSet& s) const;

    /// Serves the next covering constraint; returns the chosen set.
    VariableSet arrive(const CoveringConstraint& c, const SetOracle& oracle);

    /// Dry evaluation of a candidate commit: per-row F after adding s.
    std::vector<double> loadAfter(const VariableSet& s) const;

    /// Phi_j; requires a planted certificate.
    double phi() const;

    /// P_i . x per row; asserts P_i . x <= k * F_i.
    std::vector<double> violationProfile() const;

    double maxF() const;
    double maxViolation() const;

    /// Recomputes F from history in arrival order; bitwise-equal to stored F.
    std::vector<double> reconstructF() const;

    const SolverState& state() const { return state_; }
    const PackingSystem& system() const { return sys_; }
    const PotentialParams& params() const { return params_; }
    bool hasCertificate() const { return cert_.has_value(); }

  private:
    Column cachedColumn(VarId id) const;

    PackingSystem sys_;
    PotentialParams params_;
    SolverState state_;
    std::optional<PlantedCertificate> cert_;
    std::vector<double> certG_;                       // G_i(j) accumulators
    mutable std::unordered_map<VarId, Column> columnCache_;
    std::unordered_map<VarId, int> coverCount_;       // frequency audit
};

}  // namespace ompc
