#include "ompc/solver.hpp"

#include <cmath>

namespace ompc {

std::vector<double> binarize(std::uint64_t domainMax) {
    if (domainMax == 0 || (domainMax & (domainMax - 1)) != 0)
        throw InstanceError("binarize: domain bound must be a power of two");
    std::vector<double> multipliers;
    for (std::uint64_t v = domainMax; v > 1; v >>= 1)
        multipliers.push_back(static_cast<double>(multipliers.empty()
                                                      ? 1.0
                                                      : multipliers.back() * 2.0));
    if (multipliers.empty()) multipliers.push_back(1.0);  // domain {1}
    return multipliers;
}

double loadBound(const PotentialParams& params, int m) {
    return std::log(params.gamma * m / (params.gamma - 1.0)) / std::log(params.rho);
}

Solver::Solver(PackingSystem sys, PotentialParams params)
    : sys_(std::move(sys)), params_(params) {
    if (sys_.m < 1) throw InstanceError("need at least one packing constraint");
    if (sys_.k < 1) throw InstanceError("covering frequency k must be >= 1");
    state_.F.assign(static_cast<std::size_t>(sys_.m), 0.0);
}

Column Solver::cachedColumn(VarId id) const {
    auto it = columnCache_.find(id);
    if (it != columnCache_.end()) return it->second;
    Column col = sys_.columnOf(id);
    columnCache_.emplace(id, col);
    return col;
}

void Solver::plantCertificate(PlantedCertificate cert) {
    std::vector<double> packed(static_cast<std::size_t>(sys_.m), 0.0);
    for (VarId id : cert.ones)
        for (const auto& [row, coeff] : cachedColumn(id)) packed[row] += coeff;
    for (double v : packed)
        if (v > 1.0 + 1e-9)
            throw CertificateError("certificate violates a packing row (alpha > 1)");
    cert_ = std::move(cert);
    certG_.assign(static_cast<std::size_t>(sys_.m), 0.0);
}

double Solver::delta(const VariableSet& s, int row) const {
    double sum = 0.0;
    for (VarId id : s)
        for (const auto& [r, coeff] : cachedColumn(id))
            if (r == row) sum += coeff / sys_.k;
    return sum;
}

std::vector<double> Solver::deltaAll(const VariableSet& s) const {
    std::vector<double> d(static_cast<std::size_t>(sys_.m), 0.0);
    for (VarId id : s)
        for (const auto& [row, coeff] : cachedColumn(id)) d[row] += coeff / sys_.k;
    return d;
}

bool Solver::satisfies(const VariableSet& s, const CoveringConstraint& c) const {
    double cover = 0.0;
    for (const auto& [id, coeff] : c.coeffs)
        if (std::binary_search(s.begin(), s.end(), id)) cover += coeff;
    if (cover < 1.0) return false;
    for (double d : deltaAll(s))
        if (d > 1.0 + 1e-12) return false;
    return true;
}

double Solver::tau(const VariableSet& s) const {
    const double lnRho = std::log(params_.rho);
    double sum = 0.0;
    std::vector<double> d = deltaAll(s);
    for (int i = 0; i < sys_.m; ++i) {
        if (d[i] == 0.0) continue;
        const double base = std::exp(state_.F[i] * lnRho);
        sum += base * (std::exp(d[i] * lnRho) - 1.0);
    }
    return sum;
}

std::vector<double> Solver::loadAfter(const VariableSet& s) const {
    std::vector<double> f = state_.F;
    std::vector<double> d = deltaAll(s);
    for (int i = 0; i < sys_.m; ++i) f[i] += d[i];
    return f;
}

VariableSet Solver::arrive(const CoveringConstraint& c, const SetOracle& oracle) {
    c.validate();
    for (const auto& [id, coeff] : c.coeffs) {
        (void)coeff;
        if (coverCount_[id] + 1 > sys_.k)
            throw InstanceError("variable exceeds covering frequency k");
    }
    if (cert_) {
        double certCover = 0.0;
        for (const auto& [id, coeff] : c.coeffs)
            if (cert_->ones.count(id)) certCover += coeff;
        if (certCover < 1.0 - 1e-9)
            throw CertificateError("certificate misses an arriving covering row");
    }

    std::optional<VariableSet> chosen = oracle(c, *this);
    if (!chosen)
        throw InfeasibleStep("no satisfying set at constraint " + std::to_string(c.index));
    normalizeSet(*chosen);
    if (!satisfies(*chosen, c))
        throw InstanceError("oracle returned a non-satisfying set");

    for (const auto& [id, coeff] : c.coeffs) {
        (void)coeff;
        ++coverCount_[id];
    }
    std::vector<double> d = deltaAll(*chosen);
    for (int i = 0; i < sys_.m; ++i) state_.F[i] += d[i];
    state_.history.push_back(*chosen);
    for (VarId id : *chosen) state_.committed.insert(id);
    ++state_.step;

    if (cert_) {
        // G_i accrues the certificate's (1/k)-scaled mass on this support.
        for (const auto& [id, coeff] : c.coeffs) {
            (void)coeff;
            if (!cert_->ones.count(id)) continue;
            for (const auto& [row, pc] : cachedColumn(id)) certG_[row] += pc / sys_.k;
        }
    }
    return *chosen;
}

double Solver::phi() const {
    if (!cert_) throw CertificateError("phi requires a planted certificate");
    const double lnRho = std::log(params_.rho);
    double sum = 0.0;
    for (int i = 0; i < sys_.m; ++i)
        sum += std::exp(state_.F[i] * lnRho) * (params_.gamma - certG_[i]);
    return sum;
}

std::vector<double> Solver::violationProfile() const {
    std::vector<double> v(static_cast<std::size_t>(sys_.m), 0.0);
    for (VarId id : state_.committed)
        for (const auto& [row, coeff] : cachedColumn(id)) v[row] += coeff;
    for (int i = 0; i < sys_.m; ++i)
        if (v[i] > sys_.k * state_.F[i] + 1e-9)
            throw InstanceError("violation profile exceeds k*F (accounting bug)");
    return v;
}

double Solver::maxF() const {
    double mx = 0.0;
    for (double f : state_.F) mx = std::max(mx, f);
    return mx;
}

double Solver::maxViolation() const {
    double mx = 0.0;
    for (double v : violationProfile()) mx = std::max(mx, v);
    return mx;
}

std::vector<double> Solver::reconstructF() const {
    std::vector<double> f(static_cast<std::size_t>(sys_.m), 0.0);
    for (const VariableSet& s : state_.history) {
        std::vector<double> d = deltaAll(s);
        for (int i = 0; i < sys_.m; ++i) f[i] += d[i];
    }
    return f;
}

}  // namespace ompc
