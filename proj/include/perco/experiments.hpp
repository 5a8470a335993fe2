#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "perco/estimators.hpp"
#include "perco/lattice.hpp"
#include "perco/rcm.hpp"

namespace perco {

inline constexpr const char* kArtifactVersion = "percolab 0.1.0";

// Exit-code-bearing failure modes (see labcli): 2 validation refusal,
// 3 oracle failure, 4 cap exhaustion.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OracleFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapExhaustion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment = "theorem1";
    DensityProfile profile = DensityProfile({0.5, 0.5}, {0.75, 0.85});
    std::string rho;        // preset name; when set, overrides `profile` per N
    double rho_p = 0.75;    // density of the "constant" preset
    int m = 2;              // strip-count growth exponent (and Dtilde exponent)
    std::vector<int> Ns = {8, 16, 24, 32};
    std::uint64_t replicas = 10000;
    std::uint64_t sigma_replicas = 1000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::int64_t cap_limit = 1000000;
    int M = 16;                          // event truncation height
    std::vector<int> fit_N = {2, 3, 4, 5};
    std::uint64_t fit_replicas = 30000;
    std::vector<double> deltas = {0.1, 0.2, 0.4};
    std::vector<double> p_grid = {0.65, 0.75, 0.85};
    std::vector<double> a_grid;
    double q = 1.0;
    std::string boundary = "semi-wired"; // free | wired | semi-wired
    int rcm_height = 48;
    int rcm_sweeps = 64;
    double r = 0.3; // estimate-alpha density
    bool diagnostics = false;

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct ExperimentReport {
    nlohmann::json report;
    std::string csv;
};

ExperimentReport run_theorem1(const ExperimentConfig& cfg);
ExperimentReport run_grimmett(const ExperimentConfig& cfg);
ExperimentReport run_duality(const ExperimentConfig& cfg);
ExperimentReport run_theorem5(const ExperimentConfig& cfg);
ExperimentReport run_rcm_strips(const ExperimentConfig& cfg);
ExperimentReport run_sigma_dist(const ExperimentConfig& cfg);
ExperimentReport run_estimate_gamma(const ExperimentConfig& cfg);
ExperimentReport run_estimate_alpha(const ExperimentConfig& cfg);
ExperimentReport run_oracle_check();

// Dispatch on cfg.experiment.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Shared pieces, also used by the tests.
std::vector<SigmaResult> sample_sigma(const DensityProfile& prof, int N, std::int64_t cap,
                                      std::uint64_t replicas, std::uint64_t seed, int threads);

// Limiting gamma for homogeneous density p: no-escape rates at several N
// extrapolated by weighted least squares.
RateFit gamma_rate_fit(double p, const std::vector<int>& fit_N, int M,
                       std::uint64_t replicas, std::uint64_t seed, int threads,
                       std::vector<RateEstimate>* points = nullptr);

nlohmann::json rate_to_json(const RateEstimate& re);
nlohmann::json profile_to_json(const DensityProfile& prof);
DensityProfile profile_from_json(const nlohmann::json& j);

// Named density profiles rho: [0,1] -> (1/2, 1).
double rho_preset(const std::string& name, double rho_p, double u);

} // namespace perco
