#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ompc {

using VarId = std::int64_t;

/// Sparse packing column: (constraint row, coefficient >= 0).
using Column = std::vector<std::pair<int, double>>;

struct InstanceError : std::runtime_error {
    explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

struct CertificateError : std::runtime_error {
    explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

struct OracleCapacityError : std::runtime_error {
    explicit OracleCapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when no variable set can satisfy the arriving covering constraint
/// without breaking a packing row. The doubling wrapper consumes this.
struct InfeasibleStep : std::runtime_error {
    explicit InfeasibleStep(const std::string& what) : std::runtime_error(what) {}
};

/// Column-oriented packing side of a mixed packing/covering IP.
/// Variables are identified lazily by id; rows are never materialized.
/// The column callback must be pure: same id, same data.
struct PackingSystem {
    int m = 0;  // number of packing constraints
    int k = 1;  // covering frequency bound
    std::function<Column(VarId)> column;

    Column columnOf(VarId id) const {
        if (!column) throw InstanceError("PackingSystem has no column callback");
        Column col = column(id);
        for (const auto& [row, coeff] : col) {
            if (row < 0 || row >= m) throw InstanceError("column row out of range");
            if (coeff < 0.0) throw InstanceError("negative packing coefficient");
        }
        return col;
    }
};

/// One arrived covering constraint; support coefficients are strictly positive.
struct CoveringConstraint {
    int index = 0;  // 1-based arrival order
    std::vector<std::pair<VarId, double>> coeffs;  // sorted by id

    void validate() const {
        if (coeffs.empty()) throw InstanceError("covering constraint with empty support");
        for (const auto& [id, c] : coeffs) {
            (void)id;
            if (c <= 0.0) throw InstanceError("non-positive covering coefficient in support");
        }
    }
};

/// Candidate set S; kept sorted and duplicate-free so that lexicographic
/// tie-breaking is a plain vector comparison.
using VariableSet = std::vector<VarId>;

inline void normalizeSet(VariableSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

struct PotentialParams {
    double rho = 1.5;
    double gamma = 2.0;

    PotentialParams() = default;
    PotentialParams(double rho_, double gamma_) : rho(rho_), gamma(gamma_) {
        if (rho <= 1.0 || gamma <= 1.0) throw InstanceError("need rho > 1 and gamma > 1");
        if (rho > 1.0 + 1.0 / gamma + 1e-12)
            throw InstanceError("potential monotonicity needs rho <= 1 + 1/gamma");
    }
};

/// Provable per-row load ceiling: log_rho(gamma * m / (gamma - 1)).
double loadBound(const PotentialParams& params, int m);

/// Binary digit expansion for variables with domain {1..2^l}: digit t carries
/// multiplier 2^(t-1) on the original coefficients.
std::vector<double> binarize(std::uint64_t domainMax);

}  // namespace ompc
