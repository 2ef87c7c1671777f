#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ompc/core.hpp"
#include "steiner/graph.hpp"

namespace baseline {

/// Explicit (fully materialized) mixed packing/covering instance for the
/// brute-force search. Mirrors the solver's instance file format.
struct ExplicitInstance {
    int m = 0;
    int k = 1;
    std::vector<std::pair<ompc::VarId, ompc::Column>> variables;
    std::vector<ompc::CoveringConstraint> covering;
};

struct OfflineResult {
    bool feasible = false;
    double objective = 0.0;  // alpha, or weight for the Steiner search
    std::vector<ompc::VarId> witness;               // chosen variable ids
    std::vector<std::vector<int>> witnessPaths;     // per-demand real edges (IP search)
    std::uint64_t nodesExplored = 0;
};

/// Exact minimal alpha over binary assignments; <= 22 variables.
OfflineResult offlineOmpcOpt(const ExplicitInstance& inst);

/// Exact minimum-weight degree-feasible connecting subgraph; <= 18 edges.
/// witness holds the chosen edge indices.
OfflineResult offlineSteinerOpt(const steiner::WeightedGraph& graph,
                                const steiner::DemandStream& demands);

/// Exact optimal alpha of the per-demand path reformulation given wOpt.
/// Candidate count product capped at 1e6.
OfflineResult offlineIpGoodOpt(const steiner::WeightedGraph& graph,
                               const steiner::DemandStream& demands, double wOpt);

/// Disk cache for brute-force results, keyed by an instance content hash.
/// Directory is created on first store; lookups on a cold cache miss.
class ResultCache {
  public:
    explicit ResultCache(std::string dir);
    std::optional<OfflineResult> load(const std::string& key) const;
    void store(const std::string& key, const OfflineResult& result) const;

  private:
    std::string dir_;
};

std::string instanceHash(const steiner::Instance& inst, const std::string& tag);

}  // namespace baseline
