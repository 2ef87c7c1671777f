#include "adversary/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ompc/enumeration_oracle.hpp"
#include "util/rng.hpp"

namespace adversary {
namespace {

bool isPow2(int x) { return x > 0 && (x & (x - 1)) == 0; }

int log2i(int x) {
    int l = 0;
    while ((1 << l) < x) ++l;
    return l;
}

}  // namespace

int AdversaryInstance::coveringFrequency() const { return log2i(d); }

std::vector<int> AdversaryInstance::leavesUnderEdge(int edge) const {
    int lo = edge + 2;  // node below the edge
    int hi = lo;
    while (lo < m) {
        lo = 2 * lo;
        hi = 2 * hi + 1;
    }
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v - m);
    return out;
}

ompc::PackingSystem AdversaryInstance::packingSystem() const {
    AdversaryInstance inst = *this;
    ompc::PackingSystem sys;
    sys.m = m;
    sys.k = coveringFrequency();
    sys.column = [inst](ompc::VarId id) {
        int edge = inst.edgeOf(id);
        ompc::Column col;
        for (int leaf : inst.leavesUnderEdge(edge)) col.push_back({leaf, 1.0});
        return col;
    };
    return sys;
}

AdversaryRun generate(int m, int d, std::uint64_t seed) {
    if (!isPow2(m) || m < 2) throw ompc::InstanceError("adversary: m must be a power of two >= 2");
    if (!isPow2(d) || d < 2) throw ompc::InstanceError("adversary: d must be a power of two >= 2");

    AdversaryRun run;
    run.instance = AdversaryInstance{m, d};
    run.seed = seed;

    auto rng = util::makeRng(seed);
    run.leaf = m + static_cast<int>(util::uniformInt(rng, 0, m - 1));

    // Leaf-to-root chain; chain[i+1] is an internal node with on-path child chain[i].
    std::vector<int> chain;
    for (int v = run.leaf; v >= 1; v /= 2) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());  // root first

    const int rounds = log2i(d);
    int index = 0;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        int childOn = chain[i + 1];
        int childOff = childOn ^ 1;
        int edgeOn = childOn - 2;
        int edgeOff = childOff - 2;

        std::vector<int> activeOn(d), activeOff(d);
        std::iota(activeOn.begin(), activeOn.end(), 0);
        std::iota(activeOff.begin(), activeOff.end(), 0);

        for (int r = 0; r < rounds; ++r) {
            ompc::CoveringConstraint c;
            c.index = ++index;
            for (int t : activeOn) c.coeffs.push_back({run.instance.varId(edgeOn, t), 1.0});
            for (int t : activeOff) c.coeffs.push_back({run.instance.varId(edgeOff, t), 1.0});
            std::sort(c.coeffs.begin(), c.coeffs.end());
            run.constraints.push_back(std::move(c));

            auto halve = [&](std::vector<int>& active) {
                std::shuffle(active.begin(), active.end(), rng);
                active.resize(active.size() / 2);
                std::sort(active.begin(), active.end());
            };
            halve(activeOn);
            halve(activeOff);
        }
        run.offPathSurvivors.push_back(run.instance.varId(edgeOff, activeOff[0]));
    }
    return run;
}

ompc::PlantedCertificate offlineOpt(const AdversaryRun& run) {
    ompc::PlantedCertificate cert;
    cert.ones.insert(run.offPathSurvivors.begin(), run.offPathSurvivors.end());

    // Every leaf row sees at most one chosen variable, so alpha = 1.
    auto sys = run.instance.packingSystem();
    std::vector<double> load(sys.m, 0.0);
    for (ompc::VarId id : cert.ones)
        for (auto [row, coef] : sys.columnOf(id)) load[row] += coef;
    for (double l : load)
        if (l > 1.0 + 1e-12) throw ompc::CertificateError("adversary certificate overloads a row");

    for (const auto& c : run.constraints) {
        double cov = 0.0;
        for (auto [id, coef] : c.coeffs)
            if (cert.ones.count(id)) cov += coef;
        if (cov < 1.0 - 1e-12) throw ompc::CertificateError("adversary certificate misses a constraint");
    }
    return cert;
}

EvalStats evaluate(const SolverFactory& factory, const ompc::SetOracle& oracle, int m, int d,
                   int trials, std::uint64_t seed) {
    EvalStats stats;
    stats.trials = trials;
    stats.lowerBound = 0.25 * (log2i(m) - 1) * log2i(d);

    for (int t = 0; t < trials; ++t) {
        std::uint64_t s = util::trialSeed(seed, static_cast<std::uint64_t>(t));
        AdversaryRun run = generate(m, d, s);
        ompc::Solver solver = factory(run.instance);
        solver.plantCertificate(offlineOpt(run));
        for (const auto& c : run.constraints) solver.arrive(c, oracle);
        stats.perTrial.push_back(solver.maxViolation());
        stats.perTrialSeed.push_back(s);
        if (t == 0)
            stats.upperBound = run.instance.coveringFrequency() *
                               ompc::loadBound(solver.params(), run.instance.m);
    }

    std::vector<double> sorted = stats.perTrial;
    std::sort(sorted.begin(), sorted.end());
    stats.minMaxViolation = sorted.front();
    stats.maxMaxViolation = sorted.back();
    stats.meanMaxViolation =
        std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
    auto pct = [&](double q) {
        double pos = q * (sorted.size() - 1);
        std::size_t i = static_cast<std::size_t>(pos);
        double frac = pos - i;
        return i + 1 < sorted.size() ? sorted[i] * (1 - frac) + sorted[i + 1] * frac : sorted[i];
    };
    stats.p50 = pct(0.5);
    stats.p90 = pct(0.9);
    return stats;
}

EvalStats evaluateDefault(int m, int d, int trials, std::uint64_t seed) {
    SolverFactory factory = [](const AdversaryInstance& inst) {
        return ompc::Solver(inst.packingSystem(), ompc::PotentialParams{});
    };
    return evaluate(factory, ompc::bestSingletonOracle(), m, d, trials, seed);
}

}  // namespace adversary
