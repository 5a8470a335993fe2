#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "perco/connectivity.hpp"
#include "perco/lattice.hpp"

namespace perco {

struct ProbEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0; // 95% Wilson score interval
};

ProbEstimate wilson(std::uint64_t successes, std::uint64_t trials);

// Exponential rate -log(p)/N with the Wilson bounds pushed through the
// monotone transform. p_hat = 0 yields a one-sided estimate: `rate` then
// carries the lower bound and ci_high is +inf, never "infinity as the
// point estimate".
struct RateEstimate {
    double rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool one_sided = false;
    int N = 0;
    std::optional<int> M;
    std::string kind;
    ProbEstimate prob;
};

RateEstimate rate_from_prob(const ProbEstimate& pe, int N, std::string kind,
                            std::optional<int> M = std::nullopt);

// Fan replicas over a worker pool; the reduction is a success count, so
// the result is independent of scheduling.
std::uint64_t parallel_count(std::uint64_t replicas, int threads,
                             const std::function<bool(std::uint64_t)>& trial);

ProbEstimate estimate_prob(const EventSpec& spec, const DensityProfile& prof, int N,
                           std::uint64_t replicas, std::uint64_t seed, int threads = 0);

// Several events evaluated on the same sampled configurations; keeps
// exact inclusion relations between the counts.
std::vector<ProbEstimate> estimate_probs_shared(const std::vector<EventSpec>& specs,
                                                const DensityProfile& prof, int N,
                                                std::uint64_t replicas, std::uint64_t seed,
                                                int threads = 0);

RateEstimate estimate_gamma(const DensityProfile& prof, int N, int M, std::uint64_t replicas,
                            std::uint64_t seed, int threads = 0, int trunc = -1);

RateEstimate estimate_alpha(double r, int N, std::uint64_t replicas, std::uint64_t seed,
                            int threads = 0, int half_height = -1);

RateEstimate estimate_mu(const DensityProfile& prof, int N, int M, std::uint64_t replicas,
                         std::uint64_t seed, int threads = 0);

// Least-squares fit of log p_hat(x <->* x + (d,0)) against distance d;
// slope is -zeta. Points with p_hat = 0 are dropped with a warning
// counter; fewer than two survivors is an error.
struct DecayFit {
    double zeta = 0.0;
    double log_c = 0.0; // intercept
    std::vector<double> residuals;
    std::vector<int> used_distances;
    int dropped = 0;
};

DecayFit fit_dual_decay(double p, const std::vector<int>& distances, std::uint64_t replicas,
                        std::uint64_t seed, int threads = 0, int window_height = -1);

// d/dp P_p(D~_N) two ways: the covariance identity and a coupled central
// finite difference with step h.
struct RussoResult {
    double cov_estimate = 0.0;
    double cov_se = 0.0;
    double fd_estimate = 0.0;
    double fd_se = 0.0;
    double h = 0.01;
};

RussoResult russo_derivative(double p, int N, int m, std::uint64_t replicas,
                             std::uint64_t seed, int threads = 0, double h = 0.01);

// Weighted least squares of -log p_hat against N; the slope estimates
// the limiting rate, the intercept the finite-size correction.
struct RateFit {
    double rate = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
    bool monotone_warning = false;
};

RateFit extrapolate_rate(const std::vector<RateEstimate>& series);

inline double pos_inf() { return std::numeric_limits<double>::infinity(); }

} // namespace perco
