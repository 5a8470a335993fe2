#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "perco/experiments.hpp"

using namespace perco;

namespace {
ExperimentConfig tiny_base() {
    ExperimentConfig cfg;
    cfg.threads = 1;
    cfg.replicas = 1000;
    cfg.sigma_replicas = 300;
    cfg.fit_replicas = 2000;
    cfg.fit_N = {2, 3, 4};
    cfg.M = 6;
    cfg.cap_limit = 100000;
    return cfg;
}
} // namespace

TEST_CASE("config round-trips through JSON") {
    ExperimentConfig cfg = tiny_base();
    cfg.experiment = "duality";
    cfg.rho = "sine";
    cfg.p_grid = {0.7, 0.8};
    cfg.boundary = "wired";
    ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
    CHECK(back.to_json().dump() == cfg.to_json().dump());
    CHECK(back.rho == "sine");
    CHECK(back.boundary == "wired");
}

TEST_CASE("refusals surface as validation errors") {
    ExperimentConfig cfg = tiny_base();
    cfg.experiment = "nonsense";
    CHECK_THROWS_AS(run_experiment(cfg), ValidationError);

    ExperimentConfig sub = tiny_base();
    sub.experiment = "theorem1";
    sub.profile = DensityProfile::uniform(0.45); // subcritical
    CHECK_THROWS_AS(run_experiment(sub), ValidationError);

    ExperimentConfig deg = tiny_base();
    deg.experiment = "estimate-gamma";
    deg.profile = DensityProfile::uniform(1.0); // degenerate density refused
    CHECK_THROWS_AS(run_experiment(deg), ValidationError);

    ExperimentConfig dua = tiny_base();
    dua.experiment = "duality";
    dua.p_grid = {0.4};
    CHECK_THROWS_AS(run_experiment(dua), ValidationError);

    ExperimentConfig rcm = tiny_base();
    rcm.experiment = "rcm-strips";
    rcm.q = 0.5;
    CHECK_THROWS_AS(run_experiment(rcm), ValidationError);
}

TEST_CASE("theorem1 on a tiny instance is deterministic and embeds its config") {
    ExperimentConfig cfg = tiny_base();
    cfg.experiment = "theorem1";
    cfg.profile = DensityProfile::uniform(0.75);
    cfg.Ns = {4};
    cfg.deltas = {0.2, 0.4};
    ExperimentReport a = run_experiment(cfg);
    ExperimentReport b = run_experiment(cfg);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.csv == b.csv);
    CHECK(a.report["experiment"] == "theorem1");
    CHECK(a.report["config"]["seed"] == 1);
    CHECK(a.report["target"].get<double>() > 0.0);
    REQUIRE(a.report["rows"].size() == 1); // one row per N
    CHECK(a.report["rows"][0]["deviations"].size() == 2); // one entry per delta
    CHECK(a.csv.rfind("# percolab", 0) == 0);
}

TEST_CASE("duality experiment reports paired rates") {
    ExperimentConfig cfg = tiny_base();
    cfg.experiment = "duality";
    cfg.Ns = {4};
    cfg.p_grid = {0.7, 0.8};
    ExperimentReport rep = run_experiment(cfg);
    REQUIRE(rep.report["rows"].size() == 2);
    for (const auto& row : rep.report["rows"]) {
        CHECK(row.contains("gamma"));
        CHECK(row.contains("alpha"));
        CHECK(row.contains("overlap"));
    }
}

TEST_CASE("grimmett experiment produces monotone crossing frequencies") {
    ExperimentConfig cfg = tiny_base();
    cfg.experiment = "grimmett";
    cfg.profile = DensityProfile::uniform(0.7);
    cfg.Ns = {3, 4};
    cfg.sigma_replicas = 400;
    cfg.cap_limit = 20000;
    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.report["summary"].size() == 2);
    // within each N the crossing frequency is nonincreasing in a by construction
    int last_n = -1;
    double prev = 2.0;
    for (const auto& row : rep.report["rows"]) {
        if (row["skipped"].get<bool>()) continue;
        int n = row["N"].get<int>();
        if (n != last_n) {
            last_n = n;
            prev = 2.0;
        }
        double f = row["frequency"].get<double>();
        CHECK(f <= prev + 1e-12);
        prev = f;
    }
}

TEST_CASE("theorem5 runs on the constant preset") {
    ExperimentConfig cfg = tiny_base();
    cfg.experiment = "theorem5";
    cfg.rho = "constant";
    cfg.rho_p = 0.75;
    cfg.Ns = {4};
    cfg.m = 2;
    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.report["target"].get<double>() > 0.0);
    CHECK(!rep.report["rows"].empty());
}

TEST_CASE("rho presets stay supercritical") {
    for (const std::string& name : {"constant", "linear", "sine"})
        for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double v = rho_preset(name, 0.75, u);
            CHECK(v > 0.5);
            CHECK(v < 1.0);
        }
    CHECK_THROWS_AS(rho_preset("bogus", 0.75, 0.5), ValidationError);
}

TEST_CASE("rcm-strips tiny run at q = 1") {
    ExperimentConfig cfg = tiny_base();
    cfg.experiment = "rcm-strips";
    cfg.q = 1.0;
    cfg.profile = DensityProfile::uniform(0.75);
    cfg.Ns = {3};
    cfg.replicas = 80;
    cfg.sigma_replicas = 80;
    cfg.rcm_height = 8;
    cfg.rcm_sweeps = 8;
    cfg.cap_limit = 4000;
    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.report["p_sd"].get<double>() == doctest::Approx(0.5));
    CHECK(rep.report["dc_known"].get<bool>());
    REQUIRE(rep.report["rows"].size() == 1);
    CHECK(rep.report["rows"][0].contains("ks_wired_free"));
}

TEST_CASE("sigma-dist and the rate estimators run end to end") {
    ExperimentConfig cfg = tiny_base();
    cfg.experiment = "sigma-dist";
    cfg.profile = DensityProfile::uniform(0.7);
    cfg.Ns = {4};
    cfg.sigma_replicas = 500;
    cfg.cap_limit = 5000;
    ExperimentReport sd = run_experiment(cfg);
    CHECK(sd.report["N"] == 4);
    CHECK(!sd.report["histogram"].empty());

    cfg.experiment = "estimate-gamma";
    cfg.profile = DensityProfile::uniform(0.7);
    cfg.Ns = {3, 4};
    ExperimentReport eg = run_experiment(cfg);
    CHECK(eg.report["rows"].size() == 2);

    cfg.experiment = "estimate-alpha";
    cfg.r = 0.3;
    ExperimentReport ea = run_experiment(cfg);
    CHECK(ea.report["r"].get<double>() == doctest::Approx(0.3));
    CHECK(ea.report["rows"].size() == 2);
}

TEST_CASE("the oracle battery passes") {
    ExperimentReport rep = run_oracle_check();
    for (const auto& c : rep.report["checks"])
        INFO(c["name"].get<std::string>(), ": ", c["detail"].get<std::string>());
    CHECK(rep.report["all_pass"].get<bool>());
}
