#include "steiner/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

namespace steiner {

void WeightedGraph::validate() const {
    if (n < 1) throw ompc::InstanceError("graph needs at least one vertex");
    if (static_cast<int>(bounds.size()) != n)
        throw ompc::InstanceError("bounds size must equal vertex count");
    for (int b : bounds)
        if (b < 1) throw ompc::InstanceError("degree bounds must be positive");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
            throw ompc::InstanceError("bad edge endpoints");
        if (e.w <= 0.0) throw ompc::InstanceError("edge weights must be positive");
        if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second)
            throw ompc::InstanceError("parallel edge in simple graph");
    }
}

double WeightedGraph::minPositiveWeight() const {
    double m = 0.0;
    for (const auto& e : edges)
        if (e.w > 0.0 && (m == 0.0 || e.w < m)) m = e.w;
    if (m == 0.0) throw ompc::InstanceError("graph has no positive-weight edge");
    return m;
}

double WeightedGraph::weightRatio() const {
    double lo = minPositiveWeight();
    double hi = lo;
    for (const auto& e : edges) hi = std::max(hi, e.w);
    return hi / lo;
}

Instance loadInstance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ompc::InstanceError("cannot open instance file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ompc::InstanceError("instance parse error in " + path + ": " + e.what());
    }

    Instance inst;
    try {
        inst.graph.n = j.at("vertices").get<int>();
        for (const auto& e : j.at("edges"))
            inst.graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
        inst.graph.bounds = j.at("bounds").get<std::vector<int>>();
        for (const auto& d : j.at("demands"))
            inst.demands.push_back({d.at(0).get<int>(), d.at(1).get<int>()});
    } catch (const nlohmann::json::exception& e) {
        throw ompc::InstanceError("instance field error in " + path + ": " + e.what());
    }
    inst.graph.validate();
    for (const auto& d : inst.demands) {
        if (d.s < 0 || d.s >= inst.graph.n || d.t < 0 || d.t >= inst.graph.n)
            throw ompc::InstanceError("demand endpoint out of range");
        if (d.s == d.t) throw ompc::InstanceError("demand endpoints must differ");
    }
    return inst;
}

void saveInstance(const Instance& inst, const std::string& path) {
    nlohmann::json j;
    j["vertices"] = inst.graph.n;
    j["edges"] = nlohmann::json::array();
    for (const auto& e : inst.graph.edges) j["edges"].push_back({e.u, e.v, e.w});
    j["bounds"] = inst.graph.bounds;
    j["demands"] = nlohmann::json::array();
    for (const auto& d : inst.demands) j["demands"].push_back({d.s, d.t});
    std::ofstream out(path);
    if (!out) throw ompc::InstanceError("cannot write instance file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace steiner
