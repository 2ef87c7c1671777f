#pragma once

#include <memory>
#include <optional>

#include "ompc/solver.hpp"
#include "steiner/graph.hpp"
#include "steiner/path_oracle.hpp"

namespace steiner {

enum class OracleKind { Path, Exact };

struct ServeRecord {
    int demand = 0;            // position in the stream
    std::vector<int> edges;    // real edge indices of H_i
    double weight = 0.0;       // w(H_i)
    double maxDegreeLoad = 0.0;  // max_v cumulative deg(v)/b_v after this serve
    int phase = 1;
    bool viaContraction = false;  // endpoints already merged, H_i empty
};

/// Online engine for one weight guess. Encodes the degree/weight packing
/// rows (m = n+1, covering frequency 1), registers one fresh path variable
/// per serve, and keeps the contraction union-find over served demands.
/// `scale` divides every packing coefficient; pass the offline alpha to make
/// an optimal witness plantable as a certificate.
class Engine {
  public:
    Engine(WeightedGraph graph, double wGuess, double scale = 1.0);

    /// Pre-merge endpoint pairs (carried over from earlier doubling phases).
    void seedContraction(const DemandStream& served);

    /// One optimal subgraph per stream demand, in order; registers them as
    /// variables and plants the certificate. Must precede any serve.
    void plantWitness(const std::vector<std::vector<int>>& pathsPerDemand);

    /// Serves the next demand; throws InfeasibleStep when no path fits.
    ServeRecord serve(const Demand& d, OracleKind kind);

    /// Transactional variant: when committing would push max F beyond
    /// `threshold`, nothing is committed and nullopt is returned.
    std::optional<ServeRecord> tryServe(const Demand& d, OracleKind kind, double threshold);

    OracleContext context() const;

    const ompc::Solver& solver() const { return *solver_; }
    const WeightedGraph& graph() const { return graph_; }
    const std::vector<ServeRecord>& records() const { return records_; }
    const std::vector<int>& degreeLoad() const { return degreeLoad_; }
    double totalWeight() const { return totalWeight_; }
    double wGuess() const { return wGuess_; }
    double scale() const { return scale_; }
    int phase() const { return phase_; }
    void setPhase(int p) { phase_ = p; }

    /// All real edges purchased so far (sorted, deduplicated).
    std::vector<int> purchasedEdges() const;

    /// True when every served demand is connected by purchased real edges
    /// alone (optionally together with extra pre-owned edges).
    bool realEdgesConnectServed(const std::vector<int>& extraEdges = {}) const;

  private:
    ompc::VarId registerVariable(const std::vector<int>& realEdges);
    std::optional<std::vector<int>> findPath(const Demand& d, OracleKind kind) const;
    ServeRecord commit(const Demand& d, const std::vector<int>& edges, bool viaContraction);

    WeightedGraph graph_;
    double wGuess_;
    double scale_;
    std::shared_ptr<std::vector<std::vector<int>>> registry_;  // varId -> real edges
    std::unique_ptr<ompc::Solver> solver_;
    UnionFind contraction_;
    DemandStream served_;
    std::vector<ompc::VarId> witnessVars_;
    std::vector<ServeRecord> records_;
    std::vector<int> degreeLoad_;
    double totalWeight_ = 0.0;
    int phase_ = 1;
};

struct RatioReport {
    double weightRatio = 0.0;       // sum w(H_i) / w_opt
    double degreeViolation = 0.0;   // max_v deg(v)/b_v
    double theoreticalCap = 0.0;    // k log_rho(gamma m/(gamma-1)) * alphaOpt
};

RatioReport ratioReport(const Engine& engine, double wOpt, double alphaOpt);

}  // namespace steiner
