#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "perco/estimators.hpp"
#include "perco/oracles.hpp"
#include "perco/rng.hpp"

using namespace perco;

TEST_CASE("wilson interval basics") {
    CHECK_THROWS_AS(wilson(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson(3, 2), std::invalid_argument);
    ProbEstimate sure = wilson(100, 100);
    CHECK(sure.p_hat == 1.0);
    CHECK(sure.ci_high == 1.0);
    CHECK(sure.ci_low < 1.0);
    ProbEstimate none = wilson(0, 100);
    CHECK(none.p_hat == 0.0);
    CHECK(none.ci_low == 0.0);
    CHECK(none.ci_high > 0.0);
    CHECK(none.ci_high < 0.1);
    ProbEstimate mid = wilson(50, 100);
    CHECK(mid.ci_low < 0.5);
    CHECK(mid.ci_high > 0.5);
}

TEST_CASE("wilson coverage near nominal on simulated Bernoulli data") {
    const double p = 0.3;
    int covered = 0;
    for (std::uint64_t exp_i = 0; exp_i < 200; ++exp_i) {
        std::uint64_t succ = 0;
        for (std::uint64_t t = 0; t < 1000; ++t) {
            double u = static_cast<double>(mix64(exp_i * 1000081 + t + 1) >> 11) * 0x1.0p-53;
            succ += u < p ? 1 : 0;
        }
        ProbEstimate pe = wilson(succ, 1000);
        if (pe.ci_low <= p && p <= pe.ci_high) ++covered;
    }
    CHECK(covered >= 184); // 92% of a nominal 95% procedure
}

TEST_CASE("rate transform") {
    RateEstimate re = rate_from_prob(wilson(50, 1000), 10, "gamma", 4);
    CHECK(re.rate == doctest::Approx(-std::log(0.05) / 10));
    CHECK(re.ci_low < re.rate);
    CHECK(re.ci_high > re.rate);
    CHECK(!re.one_sided);
    CHECK(re.kind == "gamma");
    REQUIRE(re.M.has_value());
    CHECK(*re.M == 4);

    RateEstimate zero = rate_from_prob(wilson(0, 1000), 10, "gamma");
    CHECK(zero.one_sided);
    CHECK(zero.rate == zero.ci_low);
    CHECK(zero.rate > 0.0);
    CHECK(std::isinf(zero.ci_high));

    RateEstimate one = rate_from_prob(wilson(1000, 1000), 10, "alpha");
    CHECK(one.rate == 0.0);
    CHECK(one.ci_low == 0.0);
}

TEST_CASE("parallel count is schedule independent") {
    auto trial = [](std::uint64_t rep) { return (mix64(rep + 7) & 1u) != 0; };
    std::uint64_t serial = parallel_count(5000, 1, trial);
    std::uint64_t fanned = parallel_count(5000, 4, trial);
    CHECK(serial == fanned);
    CHECK_THROWS_AS(parallel_count(0, 1, trial), std::invalid_argument);
}

TEST_CASE("gamma estimate brackets the exact event probability") {
    EventSpec e = EventSpec::parse("A(N=2,M=2,T=1)");
    auto prof = DensityProfile::uniform(0.6);
    oracle::ExactEventProb exact = oracle::exact_event_prob(e, prof, 2);
    CHECK(exact.detector == doctest::Approx(exact.bfs));

    RateEstimate re = estimate_gamma(prof, 2, 2, 100000, 17, 1, /*trunc=*/1);
    CHECK(re.prob.ci_low <= exact.detector);
    CHECK(exact.detector <= re.prob.ci_high);
    CHECK(re.rate == doctest::Approx(-std::log(re.prob.p_hat) / 2));
}

TEST_CASE("alpha at r = 1 is the sure event") {
    RateEstimate re = estimate_alpha(1.0, 8, 100, 3);
    CHECK(re.rate == 0.0);
    CHECK(re.prob.p_hat == 1.0);
    CHECK_THROWS_AS(estimate_alpha(0.0, 8, 100, 3), std::invalid_argument);
    CHECK_THROWS_AS(estimate_alpha(1.5, 8, 100, 3), std::invalid_argument);
}

TEST_CASE("shared-sample estimates preserve event inclusions") {
    std::vector<EventSpec> specs = {EventSpec::parse("B(N=3,M=3)"), EventSpec::parse("E(N=3,M=3)"),
                                    EventSpec::parse("C(N=3,M=3)"), EventSpec::parse("D(N=3,M=3)")};
    auto pes = estimate_probs_shared(specs, DensityProfile::uniform(0.5), 3, 2000, 23, 1);
    REQUIRE(pes.size() == 4);
    CHECK(pes[0].successes <= pes[1].successes); // B within E
    CHECK(pes[1].successes <= pes[2].successes); // E within C
    CHECK(pes[2].successes <= pes[3].successes); // C within D
}

TEST_CASE("dual decay rate grows with the density") {
    std::vector<int> dists = {2, 4, 6};
    DecayFit lo = fit_dual_decay(0.70, dists, 5000, 29, 1);
    DecayFit hi = fit_dual_decay(0.85, dists, 5000, 29, 1);
    CHECK(lo.dropped == 0);
    CHECK(hi.zeta > lo.zeta);
    CHECK(lo.zeta > 0.0);
    CHECK_THROWS_AS(fit_dual_decay(0.4, dists, 100, 1, 1), std::invalid_argument);
}

TEST_CASE("russo derivative: covariance and finite difference agree") {
    // p chosen so the wide crossing has mid-range probability and a
    // non-degenerate derivative on the 4 x 18 window
    RussoResult r = russo_derivative(0.35, 3, 2, 20000, 37, 1);
    CHECK(r.cov_estimate > 0.0);
    CHECK(r.fd_estimate > 0.0);
    double tol = 3.0 * std::sqrt(r.cov_se * r.cov_se + r.fd_se * r.fd_se) + 0.05;
    CHECK(std::abs(r.cov_estimate - r.fd_estimate) <= tol);
}

TEST_CASE("rate extrapolation recovers an exactly linear series") {
    std::vector<RateEstimate> series;
    for (int N : {2, 3, 4, 5}) {
        ProbEstimate pe = wilson(10, 100);
        pe.p_hat = std::exp(-(0.5 * N + 0.2));
        pe.ci_low = pe.p_hat * 0.8;
        pe.ci_high = std::min(1.0, pe.p_hat * 1.25);
        series.push_back(rate_from_prob(pe, N, "gamma"));
    }
    RateFit fit = extrapolate_rate(series);
    CHECK(fit.rate == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(!fit.monotone_warning);
    series.resize(2);
    CHECK_THROWS_AS(extrapolate_rate(series), std::invalid_argument);
}
