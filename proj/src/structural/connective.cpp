#include "structural/connective.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace structural {

namespace {

class UnionFind {
  public:
    int find(int x) {
        auto it = parent_.find(x);
        if (it == parent_.end()) {
            parent_[x] = x;
            return x;
        }
        int root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) x = std::exchange(parent_[x], root);
        return root;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }
    bool connected(int a, int b) { return find(a) == find(b); }

  private:
    std::map<int, int> parent_;
};

}  // namespace

ConnectiveList buildConnective(const Tree& forest, const std::vector<Demand>& demands) {
    UnionFind comp;
    for (int v : forest.vertices) comp.find(v);
    for (const auto& [u, v] : forest.edges) comp.unite(u, v);
    for (const auto& d : demands)
        if (!comp.connected(d.s, d.t))
            throw StructureError("demand pair disconnected in the forest");

    // Q_i must cross every cut that splits (s_i, t_i) while keeping all
    // earlier pairs together. Equivalently, Q_i together with zero-cost
    // shortcuts between already-served pairs must connect s_i to t_i, so each
    // demand takes a cheapest path in the forest contracted by earlier pairs.
    // Reused edges are penalised heavily, which keeps per-edge multiplicity low.
    const long long penalty =
        static_cast<long long>(forest.vertices.size()) * forest.vertices.size() + 1;
    UnionFind clusters;
    std::map<Edge, long long> usage;
    ConnectiveList out(demands.size());
    for (std::size_t i = 0; i < demands.size(); ++i) {
        const auto& d = demands[i];
        if (clusters.connected(d.s, d.t)) continue;

        std::map<int, std::vector<std::pair<int, Edge>>> quotient;
        for (const auto& e : forest.edges) {
            int ru = clusters.find(e.first), rv = clusters.find(e.second);
            if (ru == rv) continue;
            quotient[ru].push_back({rv, e});
            quotient[rv].push_back({ru, e});
        }

        const int source = clusters.find(d.s), target = clusters.find(d.t);
        std::map<int, long long> dist;
        std::map<int, Edge> via;
        std::map<int, int> prev;
        std::set<std::pair<long long, int>> heap{{0, source}};
        dist[source] = 0;
        while (!heap.empty()) {
            auto [du, u] = *heap.begin();
            heap.erase(heap.begin());
            if (u == target) break;
            for (const auto& [v, e] : quotient[u]) {
                long long dv = du + 1 + penalty * usage[e];
                auto it = dist.find(v);
                if (it != dist.end() && it->second <= dv) continue;
                if (it != dist.end()) heap.erase({it->second, v});
                dist[v] = dv;
                via[v] = e;
                prev[v] = u;
                heap.insert({dv, v});
            }
        }

        for (int u = target; u != source; u = prev.at(u)) {
            out[i].push_back(via.at(u));
            ++usage[via.at(u)];
        }
        std::sort(out[i].begin(), out[i].end());
        clusters.unite(d.s, d.t);
    }
    return out;
}

ConnectiveReport verifyConnective(const ConnectiveList& q, const Tree& forest,
                                  const std::vector<Demand>& demands, int cutCheckLimit) {
    ConnectiveReport report;
    const int n = static_cast<int>(forest.vertices.size());
    const double bound = 3.0 * std::log2(std::max(2, n));

    if (q.size() != demands.size()) {
        report.ok = false;
        report.failure = "list length mismatch";
        return report;
    }

    std::set<Edge> forestEdges(forest.edges.begin(), forest.edges.end());
    std::map<Edge, int> multiplicity;
    for (const auto& qi : q)
        for (const auto& e : qi) {
            if (!forestEdges.count(e)) {
                report.ok = false;
                report.failure = "subgraph edge outside the forest";
                return report;
            }
            int m = ++multiplicity[e];
            if (m > report.maxMultiplicity) {
                report.maxMultiplicity = m;
                report.worstEdge = e;
            }
        }
    if (report.maxMultiplicity > bound + 1e-9) {
        report.ok = false;
        report.failure = "edge multiplicity exceeds 3*log2(n)";
        return report;
    }

    UnionFind prefix;
    for (std::size_t i = 0; i < demands.size(); ++i) {
        for (const auto& [u, v] : q[i]) prefix.unite(u, v);
        if (!prefix.connected(demands[i].s, demands[i].t)) {
            report.ok = false;
            report.failure = "prefix union misses demand " + std::to_string(i + 1);
            return report;
        }
    }

    if (n <= cutCheckLimit) {
        // Literal reading at tiny scale: every bipartition separating (s_i,t_i)
        // but no earlier pair must cross Q_i.
        std::map<int, int> index;
        for (int i = 0; i < n; ++i) index[forest.vertices[i]] = i;
        for (std::size_t i = 0; i < demands.size(); ++i) {
            const int si = index.at(demands[i].s), ti = index.at(demands[i].t);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                const auto side = [&](int idx) { return (mask >> idx) & 1u; };
                if (side(si) == side(ti)) continue;
                bool separatesEarlier = false;
                for (std::size_t j = 0; j < i && !separatesEarlier; ++j)
                    separatesEarlier =
                        side(index.at(demands[j].s)) != side(index.at(demands[j].t));
                if (separatesEarlier) continue;
                bool crossed = false;
                for (const auto& [u, v] : q[i])
                    if (side(index.at(u)) != side(index.at(v))) {
                        crossed = true;
                        break;
                    }
                if (!crossed) {
                    report.ok = false;
                    report.failure = "cut avoids Q_" + std::to_string(i + 1);
                    return report;
                }
            }
        }
    }
    return report;
}

}  // namespace structural
