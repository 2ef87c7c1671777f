#include "steiner/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace steiner {

Engine::Engine(WeightedGraph graph, double wGuess, double scale)
    : graph_(std::move(graph)),
      wGuess_(wGuess),
      scale_(scale),
      registry_(std::make_shared<std::vector<std::vector<int>>>()),
      contraction_(graph_.n),
      degreeLoad_(graph_.n, 0) {
    graph_.validate();
    if (wGuess_ <= 0.0) throw ompc::InstanceError("weight guess must be positive");
    if (scale_ <= 0.0) throw ompc::InstanceError("packing scale must be positive");

    auto g = std::make_shared<const WeightedGraph>(graph_);
    auto registry = registry_;
    double wG = wGuess_;
    double sc = scale_;
    ompc::PackingSystem sys;
    sys.m = graph_.n + 1;  // degree row per vertex plus the weight row
    sys.k = 1;
    sys.column = [g, registry, wG, sc](ompc::VarId id) {
        if (id < 0 || id >= static_cast<ompc::VarId>(registry->size()))
            throw ompc::InstanceError("unknown path variable");
        std::map<int, double> acc;
        for (int e : (*registry)[static_cast<std::size_t>(id)]) {
            const auto& edge = g->edges[e];
            acc[edge.u] += 1.0 / (g->bounds[edge.u] * sc);
            acc[edge.v] += 1.0 / (g->bounds[edge.v] * sc);
            acc[g->n] += edge.w / (wG * sc);
        }
        return ompc::Column(acc.begin(), acc.end());
    };
    solver_ = std::make_unique<ompc::Solver>(std::move(sys), ompc::PotentialParams{});
}

void Engine::seedContraction(const DemandStream& served) {
    for (const auto& d : served) {
        contraction_.unite(d.s, d.t);
        served_.push_back(d);
    }
}

ompc::VarId Engine::registerVariable(const std::vector<int>& realEdges) {
    registry_->push_back(realEdges);
    std::sort(registry_->back().begin(), registry_->back().end());
    return static_cast<ompc::VarId>(registry_->size()) - 1;
}

void Engine::plantWitness(const std::vector<std::vector<int>>& pathsPerDemand) {
    if (!records_.empty()) throw ompc::CertificateError("witness must precede serving");
    ompc::PlantedCertificate cert;
    for (const auto& path : pathsPerDemand) {
        ompc::VarId var = registerVariable(path);
        witnessVars_.push_back(var);
        cert.ones.insert(var);
    }
    solver_->plantCertificate(std::move(cert));
}

OracleContext Engine::context() const {
    return OracleContext{&graph_, wGuess_, scale_, served_, solver_.get()};
}

std::optional<std::vector<int>> Engine::findPath(const Demand& d, OracleKind kind) const {
    OracleContext ctx = context();
    return kind == OracleKind::Path ? pathOracle(ctx, d.s, d.t)
                                    : exactPathEnumeration(ctx, d.s, d.t);
}

ServeRecord Engine::commit(const Demand& d, const std::vector<int>& edges, bool viaContraction) {
    ompc::VarId var = registerVariable(edges);

    ompc::CoveringConstraint c;
    c.index = static_cast<int>(records_.size()) + 1;
    c.coeffs.push_back({var, 1.0});
    std::size_t i = records_.size();
    if (i < witnessVars_.size() && witnessVars_[i] != var)
        c.coeffs.push_back({witnessVars_[i], 1.0});
    std::sort(c.coeffs.begin(), c.coeffs.end());

    ompc::SetOracle pick = [var](const ompc::CoveringConstraint&, const ompc::Solver&) {
        return std::optional<ompc::VariableSet>(ompc::VariableSet{var});
    };
    solver_->arrive(c, pick);

    contraction_.unite(d.s, d.t);
    served_.push_back(d);

    ServeRecord rec;
    rec.demand = static_cast<int>(records_.size());
    rec.edges = edges;
    rec.viaContraction = viaContraction;
    rec.phase = phase_;
    for (int e : edges) {
        ++degreeLoad_[graph_.edges[e].u];
        ++degreeLoad_[graph_.edges[e].v];
        rec.weight += graph_.edges[e].w;
    }
    totalWeight_ += rec.weight;
    for (int v = 0; v < graph_.n; ++v)
        rec.maxDegreeLoad =
            std::max(rec.maxDegreeLoad, static_cast<double>(degreeLoad_[v]) / graph_.bounds[v]);
    records_.push_back(rec);
    return rec;
}

ServeRecord Engine::serve(const Demand& d, OracleKind kind) {
    if (contraction_.connected(d.s, d.t)) return commit(d, {}, true);
    auto path = findPath(d, kind);
    if (!path) throw ompc::InfeasibleStep("no path fits the current weight guess");
    return commit(d, *path, false);
}

std::optional<ServeRecord> Engine::tryServe(const Demand& d, OracleKind kind, double threshold) {
    if (contraction_.connected(d.s, d.t)) return commit(d, {}, true);
    auto path = findPath(d, kind);
    if (!path) throw ompc::InfeasibleStep("no path fits the current weight guess");
    for (auto [row, delta] : edgeSetDeltas(context(), *path))
        if (solver_->state().F[row] + delta > threshold + 1e-9) return std::nullopt;
    return commit(d, *path, false);
}

std::vector<int> Engine::purchasedEdges() const {
    std::vector<int> out;
    for (const auto& r : records_) out.insert(out.end(), r.edges.begin(), r.edges.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Engine::realEdgesConnectServed(const std::vector<int>& extraEdges) const {
    UnionFind uf(graph_.n);
    for (int e : purchasedEdges()) uf.unite(graph_.edges[e].u, graph_.edges[e].v);
    for (int e : extraEdges) uf.unite(graph_.edges[e].u, graph_.edges[e].v);
    for (const auto& d : served_)
        if (!uf.connected(d.s, d.t)) return false;
    return true;
}

RatioReport ratioReport(const Engine& engine, double wOpt, double alphaOpt) {
    RatioReport rep;
    rep.weightRatio = engine.totalWeight() / wOpt;
    for (int v = 0; v < engine.graph().n; ++v)
        rep.degreeViolation = std::max(
            rep.degreeViolation,
            static_cast<double>(engine.degreeLoad()[v]) / engine.graph().bounds[v]);
    rep.theoreticalCap =
        ompc::loadBound(engine.solver().params(), engine.graph().n + 1) * alphaOpt;
    return rep;
}

}  // namespace steiner
