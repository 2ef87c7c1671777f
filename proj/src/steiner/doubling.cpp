#include "steiner/doubling.hpp"

#include <algorithm>

namespace steiner {

DoublingResult runWithDoubling(const WeightedGraph& graph, const DemandStream& stream, double r,
                               OracleKind kind, int maxPhases) {
    graph.validate();
    if (r < 2.0) throw ompc::InstanceError("doubling multiplier must be >= 2");

    DoublingResult res;
    res.threshold = ompc::loadBound(ompc::PotentialParams{}, graph.n + 1);
    res.cumulativeDegree.assign(static_cast<std::size_t>(graph.n), 0);

    double guess = graph.minPositiveWeight();
    auto engine = std::make_unique<Engine>(graph, guess, 1.0);
    DemandStream servedSoFar;
    std::vector<int> ownedEdges;  // physical union across phases
    int phase = 1;
    engine->setPhase(phase);

    auto closePhase = [&](bool breached) {
        PhaseLog log;
        log.phase = phase;
        log.guess = guess;
        log.demandsServed = static_cast<int>(engine->records().size());
        log.maxF = engine->solver().maxF();
        log.weight = engine->totalWeight();
        log.breached = breached;
        res.phases.push_back(log);
        for (int v = 0; v < graph.n; ++v) res.cumulativeDegree[v] += engine->degreeLoad()[v];
        res.cumulativeWeight += engine->totalWeight();
        auto bought = engine->purchasedEdges();
        ownedEdges.insert(ownedEdges.end(), bought.begin(), bought.end());
    };

    for (std::size_t i = 0; i < stream.size(); ++i) {
        for (;;) {
            std::optional<ServeRecord> rec;
            bool infeasible = false;
            try {
                rec = engine->tryServe(stream[i], kind, res.threshold);
            } catch (const ompc::InfeasibleStep&) {
                infeasible = true;
            }
            if (rec) {
                rec->demand = static_cast<int>(i);
                res.records.push_back(*rec);
                servedSoFar.push_back(stream[i]);
                break;
            }
            // Breach or no path at this guess: advance the phase and retry.
            (void)infeasible;
            closePhase(true);
            if (phase >= maxPhases)
                throw ompc::InfeasibleStep("doubling did not converge within the phase cap");
            guess *= r;
            ++phase;
            engine = std::make_unique<Engine>(graph, guess, 1.0);
            engine->setPhase(phase);
            engine->seedContraction(servedSoFar);
        }
    }
    closePhase(false);

    res.finalGuess = guess;
    res.phaseCount = phase;
    std::sort(ownedEdges.begin(), ownedEdges.end());
    ownedEdges.erase(std::unique(ownedEdges.begin(), ownedEdges.end()), ownedEdges.end());

    UnionFind uf(graph.n);
    for (int e : ownedEdges) uf.unite(graph.edges[e].u, graph.edges[e].v);
    res.feasible = true;
    for (const auto& d : stream)
        if (!uf.connected(d.s, d.t)) res.feasible = false;
    return res;
}

}  // namespace steiner
