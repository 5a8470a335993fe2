#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "perco/experiments.hpp"

namespace fs = std::filesystem;
using perco::ExperimentConfig;
using perco::ExperimentReport;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "json";
    std::uint64_t seed = 0;
    std::int64_t replicas = -1;
    int threads = -1;
    bool diagnostics = false;
    bool seed_given = false;
    bool replicas_given = false;
    bool threads_given = false;
};

ExperimentConfig load_config(const CliOptions& opt, const std::string& experiment) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw perco::ValidationError("cannot open config: " + opt.config_path);
        try {
            cfg = ExperimentConfig::from_json(nlohmann::json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw perco::ValidationError(std::string("bad config: ") + e.what());
        }
    }
    cfg.experiment = experiment;
    if (opt.seed_given) cfg.seed = opt.seed;
    if (opt.replicas_given) {
        cfg.replicas = static_cast<std::uint64_t>(opt.replicas);
        cfg.sigma_replicas = static_cast<std::uint64_t>(opt.replicas);
    }
    if (opt.threads_given) cfg.threads = opt.threads;
    if (opt.diagnostics) cfg.diagnostics = true;
    return cfg;
}

void write_outputs(const CliOptions& opt, const ExperimentReport& rep) {
    fs::create_directories(opt.out_dir);
    {
        std::ofstream out(fs::path(opt.out_dir) / "report.json");
        out << rep.report.dump(2) << "\n";
    }
    {
        std::ofstream out(fs::path(opt.out_dir) / "results.csv");
        out << rep.csv;
    }
    if (opt.format == "csv")
        std::cout << rep.csv;
    else
        std::cout << rep.report.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(perco::kArtifactVersion) +
                 " - bond percolation on semi-cylinders: traversable height, "
                 "rate estimation, random-cluster sampling"};
    app.require_subcommand(1);
    CliOptions opt;

    const std::vector<std::string> kinds = {
        "estimate-gamma", "estimate-alpha", "sigma-dist", "theorem1", "grimmett",
        "duality",        "theorem5",       "rcm-strips", "oracle-check"};
    for (const std::string& kind : kinds) {
        auto* sub = app.add_subcommand(kind);
        sub->add_option("--config", opt.config_path, "JSON experiment config");
        sub->add_option("--seed", opt.seed, "master seed")
            ->each([&](const std::string&) { opt.seed_given = true; });
        sub->add_option("--replicas", opt.replicas, "Monte Carlo replicas")
            ->each([&](const std::string&) { opt.replicas_given = true; });
        sub->add_option("--threads", opt.threads, "worker threads (0 = logical cores)")
            ->each([&](const std::string&) { opt.threads_given = true; });
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--format", opt.format, "stdout format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--diagnostics", opt.diagnostics, "include chain diagnostics");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string kind = app.get_subcommands().front()->get_name();

    try {
        if (kind == "oracle-check") {
            ExperimentReport rep = perco::run_oracle_check();
            fs::create_directories(opt.out_dir);
            {
                std::ofstream out(fs::path(opt.out_dir) / "report.json");
                out << rep.report.dump(2) << "\n";
            }
            {
                std::ofstream out(fs::path(opt.out_dir) / "results.csv");
                out << rep.csv;
            }
            for (const auto& c : rep.report["checks"]) {
                std::cout << (c["pass"].get<bool>() ? "pass " : "FAIL ")
                          << c["name"].get<std::string>() << ": "
                          << c["detail"].get<std::string>() << "\n";
            }
            return rep.report["all_pass"].get<bool>() ? 0 : 3;
        }
        ExperimentConfig cfg = load_config(opt, kind);
        ExperimentReport rep = perco::run_experiment(cfg);
        write_outputs(opt, rep);
        return 0;
    } catch (const perco::ValidationError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const perco::OracleFailure& e) {
        std::cerr << "oracle failure: " << e.what() << "\n";
        return 3;
    } catch (const perco::CapExhaustion& e) {
        std::cerr << "cap exhausted: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
