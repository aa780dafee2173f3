#include "spz/convert.hpp"
#include "spz/dynamics.hpp"
#include "spz/models.hpp"
#include "spz/reach.hpp"
#include "spz/serialize.hpp"
#include "spz/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSoundness = 3;
constexpr int kExitNumeric = 4;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string modelPath;
    spz::IntervalVector initialSet;
    spz::IntervalVector inputSet;
    spz::ReachConfig reach;
    std::string outputPath = "reach_output.jsonl";
    bool oracleEnabled = false;
    spz::OracleConfig oracle;
    spz::Index projX = 0;
    spz::Index projY = 1;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

RunConfig loadRunConfig(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(readFile(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }

    RunConfig cfg;
    try {
        cfg.modelPath = j.at("model").get<std::string>();
        cfg.initialSet = spz::intervalVectorFromJson(j.at("initial_set"));
        cfg.inputSet = j.contains("input_set") ? spz::intervalVectorFromJson(j.at("input_set"))
                                               : spz::IntervalVector(0);
        const auto& r = j.at("reach");
        cfg.reach.dt = r.at("dt").get<double>();
        cfg.reach.tF = r.at("t_f").get<double>();
        cfg.reach.lambda = r.value("lambda", cfg.reach.lambda);
        cfg.reach.rhoD = r.value("rho_d", cfg.reach.rhoD);
        cfg.reach.muD = r.value("mu_d", cfg.reach.muD);
        cfg.reach.pD = r.value("p_d", cfg.reach.pD);
        cfg.reach.eta = r.value("eta", cfg.reach.eta);
        cfg.reach.maxFixedPointIterations =
            r.value("max_fixed_point_iterations", cfg.reach.maxFixedPointIterations);
        if (j.contains("output")) cfg.outputPath = j.at("output").get<std::string>();
        if (j.contains("oracle")) {
            const auto& o = j.at("oracle");
            cfg.oracleEnabled = o.value("enabled", false);
            cfg.oracle.trajectories = o.value("trajectories", cfg.oracle.trajectories);
            cfg.oracle.rkTolerance = o.value("rk_tolerance", cfg.oracle.rkTolerance);
            cfg.oracle.seed = o.value("seed", cfg.oracle.seed);
        }
        if (j.contains("projection")) {
            const auto& p = j.at("projection");
            if (p.size() != 2) throw ConfigError("projection must hold two dimensions");
            cfg.projX = p[0].get<spz::Index>();
            cfg.projY = p[1].get<spz::Index>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return cfg;
}

int runReach(RunConfig cfg, const spz::NonlinearSystem& sys) {
    if (cfg.initialSet.size() != sys.numStates())
        throw ConfigError("initial set dimension does not match the model");
    if (cfg.inputSet.size() != sys.numInputs())
        throw ConfigError("input set dimension does not match the model");
    if (sys.numStates() == 1) {
        cfg.projX = 0;
        cfg.projY = 0;  // polygons are skipped for one-dimensional systems
    } else if (cfg.projX < 0 || cfg.projY < 0 || cfg.projX >= sys.numStates() ||
               cfg.projY >= sys.numStates() || cfg.projX == cfg.projY) {
        throw ConfigError("projection dimensions out of range");
    }

    const spz::SparsePolyZonotope X0 = spz::fromInterval(cfg.initialSet);

    const auto start = std::chrono::steady_clock::now();
    const spz::ReachResult result = spz::reachAnalyze(sys, X0, cfg.inputSet, cfg.reach);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ofstream out(cfg.outputPath);
    if (!out) throw ConfigError("cannot write output file: " + cfg.outputPath);
    spz::writeReachRecords(out, result, cfg.projX, cfg.projY);
    out.close();

    int exitCode = kExitOk;
    std::string oracleNote = "disabled";
    if (cfg.oracleEnabled) {
        const spz::OracleReport report =
            spz::simulationOracle(sys, X0, cfg.inputSet, result, cfg.reach.dt, cfg.oracle);
        std::ostringstream note;
        note << (report.violations == 0 ? "pass" : "FAIL") << " (" << report.pointsChecked
             << " points";
        if (report.violations != 0)
            note << ", " << report.violations << " violations, worst " << report.worstExcess;
        note << ")";
        oracleNote = note.str();
        if (report.violations != 0) exitCode = kExitSoundness;
    }

    std::cout << "summary: steps=" << result.steps.size() << " wall=" << wall
              << "s restructures=" << result.restructureCount << " oracle=" << oracleNote
              << " output=" << cfg.outputPath << "\n";
    return exitCode;
}

int runSimulate(const RunConfig& cfg, const spz::NonlinearSystem& sys, int trajectories) {
    if (cfg.initialSet.size() != sys.numStates())
        throw ConfigError("initial set dimension does not match the model");
    if (cfg.inputSet.size() != sys.numInputs())
        throw ConfigError("input set dimension does not match the model");

    const spz::SparsePolyZonotope X0 = spz::fromInterval(cfg.initialSet);
    const long steps = std::lround(cfg.reach.tF / cfg.reach.dt);

    std::ofstream out(cfg.outputPath);
    if (!out) throw ConfigError("cannot write output file: " + cfg.outputPath);

    std::mt19937_64 rng(cfg.oracle.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < trajectories; ++t) {
        spz::Vector alpha(X0.numFactors()), beta(X0.numIndependent());
        for (spz::Index i = 0; i < alpha.size(); ++i) alpha(i) = unit(rng);
        for (spz::Index i = 0; i < beta.size(); ++i) beta(i) = unit(rng);
        std::vector<spz::Vector> inputs(static_cast<std::size_t>(steps));
        for (auto& u : inputs) {
            u.resize(sys.numInputs());
            for (spz::Index j = 0; j < u.size(); ++j)
                u(j) = cfg.inputSet.mid()(j) + unit(rng) * cfg.inputSet.rad()(j);
        }
        const spz::Trajectory traj = spz::simulateTrajectory(
            sys, X0.evaluate(alpha, beta), inputs, cfg.reach.dt, cfg.oracle.rkTolerance);

        nlohmann::json states = nlohmann::json::array();
        for (const spz::Vector& x : traj.states) {
            nlohmann::json point = nlohmann::json::array();
            for (spz::Index i = 0; i < x.size(); ++i) point.push_back(x(i));
            states.push_back(std::move(point));
        }
        nlohmann::json record{{"kind", "trajectory"},
                              {"index", t},
                              {"times", traj.times},
                              {"states", std::move(states)}};
        out << record.dump() << '\n';
    }
    std::cout << "summary: trajectories=" << trajectories << " output=" << cfg.outputPath << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse polynomial zonotope reachability toolkit"};
    app.require_subcommand(1);

    // reach
    auto* reach = app.add_subcommand("reach", "Run a reachability analysis from a config file");
    std::string reachConfigPath;
    std::string modelOverride, outputOverride;
    bool oracleFlag = false;
    std::vector<spz::Index> projection;
    reach->add_option("--config", reachConfigPath, "JSON run configuration")->required();
    reach->add_option("--model", modelOverride, "Override the model file");
    reach->add_option("--output", outputOverride, "Override the output file");
    reach->add_flag("--oracle", oracleFlag, "Enable the simulation soundness oracle");
    reach->add_option("--project", projection, "Projection dimensions for polygons")
        ->expected(2);

    // gene-network
    auto* gene = app.add_subcommand("gene-network", "Run the gene regulator network benchmark");
    int genes = 6;
    double geneHorizon = 0.0;
    std::string geneOutput = "gene_network.jsonl";
    bool geneOracle = false;
    int geneOracleTrajectories = 20;
    gene->add_option("--genes", genes, "Number of genes (state dimension is twice this)")
        ->required();
    gene->add_option("--t-f", geneHorizon, "Override the time horizon");
    gene->add_option("--output", geneOutput, "Output file");
    gene->add_flag("--oracle", geneOracle, "Enable the simulation soundness oracle");
    gene->add_option("--oracle-trajectories", geneOracleTrajectories, "Oracle trajectory count");

    // demo
    auto* demo = app.add_subcommand("demo", "Emit set-operation demo records");
    std::string selector;
    std::string demoOutput = "demo.jsonl";
    demo->add_option("--selector", selector, "example1 | enclosure | quadmap | convexhull")
        ->required();
    demo->add_option("--output", demoOutput, "Output file");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Write sampled RK trajectories only");
    std::string simConfigPath;
    std::string simOutput;
    int simTrajectories = 10;
    simulate->add_option("--config", simConfigPath, "JSON run configuration")->required();
    simulate->add_option("--output", simOutput, "Output file");
    simulate->add_option("--trajectories", simTrajectories, "Trajectory count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (reach->parsed()) {
            RunConfig cfg = loadRunConfig(reachConfigPath);
            if (!modelOverride.empty()) cfg.modelPath = modelOverride;
            if (!outputOverride.empty()) cfg.outputPath = outputOverride;
            if (oracleFlag) cfg.oracleEnabled = true;
            if (!projection.empty()) {
                cfg.projX = projection[0];
                cfg.projY = projection[1];
            }
            const spz::NonlinearSystem sys = spz::parseModel(readFile(cfg.modelPath));
            return runReach(cfg, sys);
        }
        if (gene->parsed()) {
            if (genes < 2) throw ConfigError("gene-network: at least two genes required");
            const spz::BenchmarkSetup setup = spz::geneNetworkBenchmark(genes);
            RunConfig cfg;
            cfg.initialSet = setup.initialSet;
            cfg.inputSet = setup.inputSet;
            cfg.reach = setup.config;
            if (geneHorizon > 0.0) cfg.reach.tF = geneHorizon;
            cfg.outputPath = geneOutput;
            cfg.oracleEnabled = geneOracle;
            cfg.oracle.trajectories = geneOracleTrajectories;
            const spz::NonlinearSystem sys = spz::parseModel(setup.modelText);
            return runReach(cfg, sys);
        }
        if (demo->parsed()) {
            std::ofstream out(demoOutput);
            if (!out) throw ConfigError("cannot write output file: " + demoOutput);
            spz::IdGenerator::global().reset();
            spz::writeDemoRecords(selector, out);
            std::cout << "summary: demo=" << selector << " output=" << demoOutput << "\n";
            return kExitOk;
        }
        if (simulate->parsed()) {
            RunConfig cfg = loadRunConfig(simConfigPath);
            if (!simOutput.empty()) cfg.outputPath = simOutput;
            const spz::NonlinearSystem sys = spz::parseModel(readFile(cfg.modelPath));
            return runSimulate(cfg, sys, simTrajectories);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const spz::ParseError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
