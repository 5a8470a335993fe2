#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "perco/config.hpp"
#include "perco/lattice.hpp"
#include "perco/rng.hpp"

namespace perco {

enum class Boundary { Free, Wired, SemiCylinderWired };

struct RCMParams {
    double q = 1.0;
    DensityProfile weights = DensityProfile::uniform(0.5);
    int N = 1; // strip scaling for the weights
    Boundary boundary = Boundary::Free;
    Region volume = Region::box(0, 1, 0, 1);

    void validate() const {
        if (q < 1.0) throw std::invalid_argument("cluster weight q must be >= 1");
        weights.validate_strict();
        if (!volume.bounded()) throw std::invalid_argument("volume must be bounded");
    }
};

// Self-dual point sqrt(q) / (1 + sqrt(q)).
inline double p_sd(double q) {
    if (q <= 0) throw std::invalid_argument("p_sd needs q > 0");
    const double s = std::sqrt(q);
    return s / (1.0 + s);
}

// Regimes where exponential decay of dual connectivity is a theorem for
// the supercritical random-cluster model; elsewhere it is an assumption.
inline bool dc_known(double q) {
    return std::abs(q - 1.0) < 1e-9 || std::abs(q - 2.0) < 1e-9 || q >= 25.72;
}

// Number of clusters of the boundary-completed configuration that
// intersect the volume. Wired completion identifies all exterior
// vertices (and the volume vertices adjacent to them) into one class.
int cluster_count(const BondConfig& cfg, const RCMParams& params);

// Probability that bond b is open given every other edge: p if the
// endpoints are connected off b (through open edges and the wiring),
// p / (p + (1-p) q) otherwise.
double heat_bath_conditional(const BondConfig& cfg, const Bond& b, const RCMParams& params);

bool endpoints_connected_off(const BondConfig& cfg, const Bond& b, const RCMParams& params);

// Full distribution over {0,1}^{E_Lambda} by direct weight enumeration;
// refuses volumes with more than 20 bonds.
struct ExactRCM {
    Region volume;
    std::vector<double> prob; // indexed by bond bitmask, enumeration order
    double log_z = 0.0;

    double edge_marginal(std::int64_t bond_index) const;
};

ExactRCM exact_rcm(const RCMParams& params);

// sweeps x |E_Lambda| single-edge heat-bath updates in enumeration scan
// order, from all-open (wired starts) or all-closed (free start).
BondConfig sample_rcm(const RCMParams& params, int sweeps, const SeedSpec& s);

// Two chains from all-open / all-closed driven by shared uniforms. For
// q >= 1 the upper chain dominates the lower at every sweep; the gap
// hitting zero certifies mixing.
struct SandwichDiag {
    std::vector<double> gap; // disagreeing-edge fraction after each sweep
    bool coupled = false;
    int sweeps_run = 0;
};

SandwichDiag run_sandwich(const RCMParams& params, int max_sweeps, const SeedSpec& s,
                          double gap_target = 1e-3, BondConfig* upper = nullptr,
                          BondConfig* lower = nullptr);

// Coupling-based burn-in: iterate until the sandwich gap drops below
// 1e-3 (error if max_sweeps is hit first), then advance ceil(|E|/N)
// spacing sweeps and return the upper chain.
BondConfig sample_rcm_converged(const RCMParams& params, const SeedSpec& s,
                                int max_sweeps = 4096, SandwichDiag* diag = nullptr);

} // namespace perco
