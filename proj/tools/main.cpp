// Experiment runner: every subcommand reads files, writes CSV/JSON into the
// output directory, and exits 0 (done), 2 (infeasible instance) or 1 (usage).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "adversary/adversary.hpp"
#include "baseline/baseline.hpp"
#include "ompc/enumeration_oracle.hpp"
#include "steiner/doubling.hpp"
#include "steiner/engine.hpp"
#include "structural/connective.hpp"
#include "structural/rounding.hpp"
#include "support/generators.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Config {
    std::string outputDir = "out";
    std::string instance;
    std::uint64_t seed = 1;
    double gamma = 2.0;
    double rho = 1.5;
    double wOpt = 0.0;
    bool doubling = false;
    double ratio = 2.0;
    std::string oracle = "auto";
    int m = 16, d = 16, trials = 200;
    int trees = 300, maxN = 64;
    int n = 256;
    std::string cacheDir;
};

fs::path outDir(const Config& cfg) {
    const char* env = std::getenv("ARTIFACT_OUTPUT_DIR");
    fs::path dir = env != nullptr ? fs::path(env) : fs::path(cfg.outputDir);
    fs::create_directories(dir);
    return dir;
}

void writeText(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    std::cout << "wrote " << p.string() << "\n";
}

void writeJson(const fs::path& p, const json& j) { writeText(p, j.dump(2) + "\n"); }

// ---- solve-ompc -------------------------------------------------------------

struct OmpcFile {
    baseline::ExplicitInstance instance;
    std::optional<ompc::PlantedCertificate> certificate;
};

OmpcFile loadOmpc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ompc::InstanceError("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ompc::InstanceError("instance parse error in " + path + ": " + e.what());
    }
    OmpcFile f;
    try {
        f.instance.m = j.at("m").get<int>();
        f.instance.k = j.at("k").get<int>();
        for (const auto& v : j.at("variables")) {
            ompc::Column col;
            for (const auto& entry : v.at("column"))
                col.push_back({entry.at(0).get<int>(), entry.at(1).get<double>()});
            f.instance.variables.push_back({v.at("id").get<ompc::VarId>(), col});
        }
        int index = 0;
        for (const auto& c : j.at("covering")) {
            ompc::CoveringConstraint cc;
            cc.index = ++index;
            for (const auto& [key, value] : c.at("coeffs").items())
                cc.coeffs.push_back({std::stoll(key), value.get<double>()});
            std::sort(cc.coeffs.begin(), cc.coeffs.end());
            f.instance.covering.push_back(std::move(cc));
        }
        if (j.contains("certificate")) {
            ompc::PlantedCertificate cert;
            for (const auto& id : j.at("certificate")) cert.ones.insert(id.get<ompc::VarId>());
            f.certificate = cert;
        }
    } catch (const json::exception& e) {
        throw ompc::InstanceError("instance field error in " + path + ": " + e.what());
    }
    return f;
}

int runSolveOmpc(const Config& cfg) {
    auto file = loadOmpc(cfg.instance);
    auto vars = std::make_shared<std::map<ompc::VarId, ompc::Column>>();
    for (const auto& [id, col] : file.instance.variables) (*vars)[id] = col;
    ompc::PackingSystem sys;
    sys.m = file.instance.m;
    sys.k = file.instance.k;
    sys.column = [vars](ompc::VarId id) {
        auto it = vars->find(id);
        if (it == vars->end()) throw ompc::InstanceError("unknown variable id");
        return it->second;
    };
    ompc::Solver solver(sys, ompc::PotentialParams(cfg.rho, cfg.gamma));
    if (file.certificate) solver.plantCertificate(*file.certificate);

    std::ostringstream csv;
    csv << "step,chosenSetSize,tauValue,maxF,maxViolation,phi\n";
    for (const auto& c : file.instance.covering) {
        // Tau of the chosen set is evaluated against the pre-arrival state.
        std::optional<double> tau;
        ompc::SetOracle inner = ompc::exactEnumerationOracle();
        ompc::SetOracle tap = [&](const ompc::CoveringConstraint& cc, const ompc::Solver& s)
            -> std::optional<ompc::VariableSet> {
            auto set = inner(cc, s);
            if (set) tau = s.tau(*set);
            return set;
        };
        auto chosen = solver.arrive(c, tap);
        csv << solver.state().step << "," << chosen.size() << "," << *tau << ","
            << solver.maxF() << "," << solver.maxViolation() << ",";
        if (file.certificate) csv << solver.phi();
        csv << "\n";
    }
    auto dir = outDir(cfg);
    writeText(dir / "ompc_trace.csv", csv.str());
    json summary;
    summary["steps"] = solver.state().step;
    summary["maxF"] = solver.maxF();
    summary["maxViolation"] = solver.maxViolation();
    summary["loadBound"] = ompc::loadBound(solver.params(), sys.m);
    writeJson(dir / "ompc_summary.json", summary);
    return 0;
}

// ---- solve-steiner ----------------------------------------------------------

steiner::OracleKind pickOracle(const Config& cfg, const steiner::WeightedGraph& g) {
    if (cfg.oracle == "path") return steiner::OracleKind::Path;
    if (cfg.oracle == "exact") return steiner::OracleKind::Exact;
    return g.n <= 12 ? steiner::OracleKind::Exact : steiner::OracleKind::Path;
}

int runSolveSteiner(const Config& cfg) {
    auto inst = steiner::loadInstance(cfg.instance);
    auto kind = pickOracle(cfg, inst.graph);
    auto dir = outDir(cfg);
    std::ostringstream csv;
    csv << "demand,edges,weight,maxDegreeLoad,phase\n";
    json summary;

    if (cfg.doubling) {
        auto res = steiner::runWithDoubling(inst.graph, inst.demands, cfg.ratio, kind);
        for (const auto& rec : res.records)
            csv << rec.demand << "," << rec.edges.size() << "," << rec.weight << ","
                << rec.maxDegreeLoad << "," << rec.phase << "\n";
        summary["mode"] = "doubling";
        summary["phases"] = res.phaseCount;
        summary["finalGuess"] = res.finalGuess;
        summary["threshold"] = res.threshold;
        summary["cumulativeWeight"] = res.cumulativeWeight;
        summary["feasible"] = res.feasible;
        json phases = json::array();
        for (const auto& log : res.phases)
            phases.push_back({{"phase", log.phase},
                              {"guess", log.guess},
                              {"demandsServed", log.demandsServed},
                              {"maxF", log.maxF},
                              {"weight", log.weight},
                              {"breached", log.breached}});
        summary["phaseLog"] = phases;
        if (!res.feasible) return 2;
    } else {
        if (cfg.wOpt <= 0.0)
            throw CLI::ValidationError("solve-steiner needs --w-opt or --doubling");
        steiner::Engine engine(inst.graph, cfg.wOpt);
        for (const auto& d : inst.demands) {
            auto rec = engine.serve(d, kind);
            csv << rec.demand << "," << rec.edges.size() << "," << rec.weight << ","
                << rec.maxDegreeLoad << "," << rec.phase << "\n";
        }
        summary["mode"] = "fixed-guess";
        summary["wGuess"] = cfg.wOpt;
        summary["totalWeight"] = engine.totalWeight();
        summary["maxF"] = engine.solver().maxF();
        summary["loadBound"] = ompc::loadBound(engine.solver().params(), inst.graph.n + 1);
        summary["feasible"] = engine.realEdgesConnectServed();
    }
    writeText(dir / "steiner_trace.csv", csv.str());
    writeJson(dir / "steiner_report.json", summary);
    return 0;
}

// ---- adversary --------------------------------------------------------------

int runGenAdversary(const Config& cfg) {
    auto run = adversary::generate(cfg.m, cfg.d, cfg.seed);
    json j;
    j["m"] = run.instance.m;
    j["d"] = run.instance.d;
    j["seed"] = run.seed;
    j["leaf"] = run.leaf;
    j["coveringFrequency"] = run.instance.coveringFrequency();
    j["variables"] = run.instance.numVariables();
    json cs = json::array();
    for (const auto& c : run.constraints) {
        json ids = json::array();
        for (auto [id, coeff] : c.coeffs) ids.push_back(id);
        cs.push_back(ids);
    }
    j["constraints"] = cs;
    j["certificate"] = run.offPathSurvivors;
    writeJson(outDir(cfg) / "adversary_run.json", j);
    return 0;
}

int runEvalAdversary(const Config& cfg) {
    auto stats = adversary::evaluateDefault(cfg.m, cfg.d, cfg.trials, cfg.seed);
    std::ostringstream csv;
    csv << "trial,seed,maxViolation\n";
    for (std::size_t i = 0; i < stats.perTrial.size(); ++i)
        csv << i << "," << stats.perTrialSeed[i] << "," << stats.perTrial[i] << "\n";
    auto dir = outDir(cfg);
    writeText(dir / "adversary_trials.csv", csv.str());
    json j;
    j["m"] = cfg.m;
    j["d"] = cfg.d;
    j["trials"] = stats.trials;
    j["mean"] = stats.meanMaxViolation;
    j["min"] = stats.minMaxViolation;
    j["max"] = stats.maxMaxViolation;
    j["p50"] = stats.p50;
    j["p90"] = stats.p90;
    j["lowerBound"] = stats.lowerBound;
    j["upperBound"] = stats.upperBound;
    writeJson(dir / "adversary_summary.json", j);
    return 0;
}

// ---- verify-structural ------------------------------------------------------

int runVerifyStructural(const Config& cfg) {
    int splitFailures = 0, connectiveFailures = 0;
    for (int trial = 0; trial < cfg.trees; ++trial) {
        auto rng = util::makeRng(util::trialSeed(cfg.seed, trial));
        int n = util::uniformInt(rng, 3, cfg.maxN);
        auto t = support::randomTree(rng, n);
        auto split = structural::splitTree(t);
        int cap = (2 * n + 2) / 3 + 1;
        if (static_cast<int>(split.first.vertices.size()) > cap ||
            static_cast<int>(split.second.vertices.size()) > cap)
            ++splitFailures;

        std::vector<structural::Demand> demands;
        int nd = util::uniformInt(rng, 1, 10);
        for (int i = 0; i < nd; ++i) {
            int s = util::uniformInt(rng, 0, n - 1);
            int e = util::uniformInt(rng, 0, n - 1);
            if (s != e) demands.push_back({s, e});
        }
        if (demands.empty()) demands.push_back({0, 1});
        auto q = structural::buildConnective(t, demands);
        auto rep = structural::verifyConnective(q, t, demands);
        if (!rep.ok) ++connectiveFailures;
    }
    json j;
    j["trees"] = cfg.trees;
    j["maxN"] = cfg.maxN;
    j["seed"] = cfg.seed;
    j["splitFailures"] = splitFailures;
    j["connectiveFailures"] = connectiveFailures;
    j["allPass"] = splitFailures == 0 && connectiveFailures == 0;
    writeJson(outDir(cfg) / "structural_summary.json", j);
    return splitFailures == 0 && connectiveFailures == 0 ? 0 : 2;
}

// ---- round-trial ------------------------------------------------------------

int runRoundTrial(const Config& cfg) {
    std::ostringstream csv;
    csv << "trial,maxLoadP,maxLoadQ,ratio\n";
    int overCap = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        auto rng = util::makeRng(util::trialSeed(cfg.seed, trial));
        auto tree = support::randomTree(rng, cfg.n);
        auto p = structural::makePathAssignment(tree, util::trialSeed(cfg.seed ^ 0xF00D, trial));
        auto q = structural::roundAssignment(p, util::trialSeed(cfg.seed ^ 0xBEEF, trial));
        double lp = p.maxLoad();
        csv << trial << "," << lp << "," << q.maxLoad << "," << q.maxLoad / std::max(1e-12, lp)
            << "\n";
        if (q.maxLoad > 8.0 * std::max(lp, std::log2(static_cast<double>(cfg.n)))) ++overCap;
    }
    auto dir = outDir(cfg);
    writeText(dir / "rounding_trials.csv", csv.str());
    json j;
    j["n"] = cfg.n;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["overCap"] = overCap;
    writeJson(dir / "rounding_summary.json", j);
    return 0;
}

// ---- baseline & report ------------------------------------------------------

json offlineToJson(const baseline::OfflineResult& res) {
    json j;
    j["feasible"] = res.feasible;
    j["objective"] = res.objective;
    j["witness"] = res.witness;
    j["witnessPaths"] = res.witnessPaths;
    j["nodesExplored"] = res.nodesExplored;
    return j;
}

int runBaseline(const Config& cfg) {
    auto inst = steiner::loadInstance(cfg.instance);
    std::optional<baseline::ResultCache> cache;
    if (!cfg.cacheDir.empty()) cache.emplace(cfg.cacheDir);

    auto compute = [&](const std::string& tag,
                       auto&& fn) -> baseline::OfflineResult {
        auto key = baseline::instanceHash(inst, tag);
        if (cache)
            if (auto hit = cache->load(key)) return *hit;
        auto res = fn();
        if (cache) cache->store(key, res);
        return res;
    };

    auto sf = compute("sf", [&] { return baseline::offlineSteinerOpt(inst.graph, inst.demands); });
    json j;
    j["steiner"] = offlineToJson(sf);
    if (sf.feasible) {
        auto ip = compute("ipgood", [&] {
            return baseline::offlineIpGoodOpt(inst.graph, inst.demands, sf.objective);
        });
        j["ipGood"] = offlineToJson(ip);
    }
    writeJson(outDir(cfg) / "baseline.json", j);
    return sf.feasible ? 0 : 2;
}

int runReport(const Config& cfg) {
    auto inst = steiner::loadInstance(cfg.instance);
    auto sf = baseline::offlineSteinerOpt(inst.graph, inst.demands);
    if (!sf.feasible) {
        writeJson(outDir(cfg) / "report.json", {{"feasible", false}});
        return 2;
    }
    auto ip = baseline::offlineIpGoodOpt(inst.graph, inst.demands, sf.objective);
    auto kind = pickOracle(cfg, inst.graph);

    steiner::Engine engine(inst.graph, sf.objective, ip.objective);
    engine.plantWitness(ip.witnessPaths);
    for (const auto& d : inst.demands) engine.serve(d, kind);
    auto ratios = steiner::ratioReport(engine, sf.objective, ip.objective);

    json j;
    j["feasible"] = engine.realEdgesConnectServed();
    j["wOpt"] = sf.objective;
    j["ipGoodAlpha"] = ip.objective;
    j["onlineWeight"] = engine.totalWeight();
    j["weightRatio"] = ratios.weightRatio;
    j["degreeViolation"] = ratios.degreeViolation;
    j["theoreticalCap"] = ratios.theoreticalCap;
    j["maxF"] = engine.solver().maxF();
    writeJson(outDir(cfg) / "report.json", j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online packing/covering solver, degree-bounded forest engine, and harness"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--output-dir", cfg.outputDir,
                   "output directory (ARTIFACT_OUTPUT_DIR overrides)");

    auto* ompcCmd = app.add_subcommand("solve-ompc", "run the online solver on an instance file");
    ompcCmd->add_option("--instance", cfg.instance)->required();
    ompcCmd->add_option("--gamma", cfg.gamma);
    ompcCmd->add_option("--rho", cfg.rho);

    auto* steinerCmd = app.add_subcommand("solve-steiner", "online degree-bounded forest run");
    steinerCmd->add_option("--instance", cfg.instance)->required();
    steinerCmd->add_option("--w-opt", cfg.wOpt);
    steinerCmd->add_flag("--doubling", cfg.doubling);
    steinerCmd->add_option("--ratio", cfg.ratio);
    steinerCmd->add_option("--oracle", cfg.oracle)
        ->check(CLI::IsMember({"auto", "path", "exact"}));

    auto* genCmd = app.add_subcommand("gen-adversary", "emit one adversarial stream");
    genCmd->add_option("--m", cfg.m);
    genCmd->add_option("--d", cfg.d);
    genCmd->add_option("--seed", cfg.seed)->required();

    auto* evalCmd = app.add_subcommand("eval-adversary", "run seeded adversary trials");
    evalCmd->add_option("--m", cfg.m);
    evalCmd->add_option("--d", cfg.d);
    evalCmd->add_option("--trials", cfg.trials);
    evalCmd->add_option("--seed", cfg.seed)->required();

    auto* structCmd = app.add_subcommand("verify-structural", "tree split + connective checks");
    structCmd->add_option("--trees", cfg.trees);
    structCmd->add_option("--max-n", cfg.maxN);
    structCmd->add_option("--seed", cfg.seed)->required();

    auto* roundCmd = app.add_subcommand("round-trial", "rounding trials on random trees");
    roundCmd->add_option("--n", cfg.n);
    roundCmd->add_option("--trials", cfg.trials);
    roundCmd->add_option("--seed", cfg.seed)->required();

    auto* baseCmd = app.add_subcommand("baseline", "brute-force offline optima");
    baseCmd->add_option("--instance", cfg.instance)->required();
    baseCmd->add_option("--cache", cfg.cacheDir);

    auto* reportCmd = app.add_subcommand("report", "offline vs online ratio report");
    reportCmd->add_option("--instance", cfg.instance)->required();
    reportCmd->add_option("--oracle", cfg.oracle)
        ->check(CLI::IsMember({"auto", "path", "exact"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(ompcCmd)) return runSolveOmpc(cfg);
        if (app.got_subcommand(steinerCmd)) return runSolveSteiner(cfg);
        if (app.got_subcommand(genCmd)) return runGenAdversary(cfg);
        if (app.got_subcommand(evalCmd)) return runEvalAdversary(cfg);
        if (app.got_subcommand(structCmd)) return runVerifyStructural(cfg);
        if (app.got_subcommand(roundCmd)) return runRoundTrial(cfg);
        if (app.got_subcommand(baseCmd)) return runBaseline(cfg);
        if (app.got_subcommand(reportCmd)) return runReport(cfg);
    } catch (const ompc::InfeasibleStep& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
