#include "ompc/enumeration_oracle.hpp"

#include <cstdint>

namespace ompc {

SetOracle exactEnumerationOracle(int supportCap) {
    return [supportCap](const CoveringConstraint& c,
                        const Solver& solver) -> std::optional<VariableSet> {
        const int s = static_cast<int>(c.coeffs.size());
        if (s > supportCap)
            throw OracleCapacityError("support " + std::to_string(s) +
                                      " exceeds enumeration cap " +
                                      std::to_string(supportCap));
        std::vector<VarId> support;
        support.reserve(c.coeffs.size());
        for (const auto& [id, coeff] : c.coeffs) {
            (void)coeff;
            support.push_back(id);
        }
        std::sort(support.begin(), support.end());

        std::optional<VariableSet> best;
        double bestTau = 0.0;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
            VariableSet cand;
            for (int b = 0; b < s; ++b)
                if (mask & (std::uint64_t{1} << b)) cand.push_back(support[b]);
            if (!solver.satisfies(cand, c)) continue;
            const double t = solver.tau(cand);
            if (!best || t < bestTau - 1e-15 ||
                (std::abs(t - bestTau) <= 1e-15 && cand < *best)) {
                best = cand;
                bestTau = t;
            }
        }
        return best;
    };
}

SetOracle bestSingletonOracle() {
    return [](const CoveringConstraint& c,
              const Solver& solver) -> std::optional<VariableSet> {
        std::vector<VarId> support;
        for (const auto& [id, coeff] : c.coeffs)
            if (coeff >= 1.0) support.push_back(id);
        std::sort(support.begin(), support.end());
        std::optional<VariableSet> best;
        double bestTau = 0.0;
        for (VarId id : support) {
            VariableSet cand{id};
            if (!solver.satisfies(cand, c)) continue;
            const double t = solver.tau(cand);
            if (!best || t < bestTau - 1e-15) {
                best = cand;
                bestTau = t;
            }
        }
        return best;
    };
}

}  // namespace ompc
