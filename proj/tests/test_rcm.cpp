#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "perco/rcm.hpp"

using namespace perco;

namespace {
RCMParams params_2x2(double q, double p, Boundary b) {
    RCMParams pr;
    pr.q = q;
    pr.weights = DensityProfile::uniform(p);
    pr.N = 2;
    pr.boundary = b;
    pr.volume = Region::box(0, 1, 0, 1);
    return pr;
}

void fill_mask(BondConfig& cfg, std::uint64_t mask) {
    for (std::size_t i = 0; i < cfg.bits.size(); ++i)
        cfg.bits[i] = (mask >> i) & 1u ? 1 : 0;
}

std::uint64_t mask_of(const BondConfig& cfg) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < cfg.bits.size(); ++i)
        if (cfg.bits[i]) m |= std::uint64_t{1} << i;
    return m;
}
} // namespace

TEST_CASE("self-dual point") {
    CHECK(p_sd(1.0) == doctest::Approx(0.5));
    CHECK(p_sd(2.0) == doctest::Approx(std::sqrt(2.0) / (1.0 + std::sqrt(2.0))));
    CHECK(p_sd(4.0) == doctest::Approx(2.0 / 3.0));
    CHECK(dc_known(1.0));
    CHECK(dc_known(2.0));
    CHECK(dc_known(26.0));
    CHECK(!dc_known(3.0));
}

TEST_CASE("parameter validation") {
    RCMParams bad = params_2x2(0.5, 0.6, Boundary::Free);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument); // q < 1
    RCMParams deg = params_2x2(2.0, 1.0, Boundary::Free);
    CHECK_THROWS_AS(deg.validate(), std::invalid_argument); // p = 1 not allowed here
}

TEST_CASE("cluster count trivials on a 3x3 volume") {
    RCMParams pr;
    pr.volume = Region::box(0, 2, 0, 2);
    BondConfig cfg(pr.volume);

    pr.boundary = Boundary::Free;
    CHECK(cluster_count(cfg, pr) == 9); // all closed, free: singletons
    pr.boundary = Boundary::Wired;
    CHECK(cluster_count(cfg, pr) == 2); // border joins the ghost, center alone
    pr.boundary = Boundary::SemiCylinderWired;
    CHECK(cluster_count(cfg, pr) == 3); // sides+top wired; (1,0) and (1,1) stay alone

    std::fill(cfg.bits.begin(), cfg.bits.end(), 1);
    pr.boundary = Boundary::Free;
    CHECK(cluster_count(cfg, pr) == 1);
    pr.boundary = Boundary::Wired;
    CHECK(cluster_count(cfg, pr) == 1);
}

TEST_CASE("heat-bath conditional probabilities") {
    RCMParams pr = params_2x2(2.0, 0.5, Boundary::Free);
    BondConfig cfg(pr.volume);
    Bond b{Vertex{0, 0}, Orient::H};
    // all other edges closed: endpoints disconnected -> p/(p+(1-p)q)
    CHECK(heat_bath_conditional(cfg, b, pr) == doctest::Approx(0.5 / (0.5 + 0.5 * 2.0)));
    // open the other three edges: endpoints connected off b -> p
    std::fill(cfg.bits.begin(), cfg.bits.end(), 1);
    CHECK(heat_bath_conditional(cfg, b, pr) == doctest::Approx(0.5));
    // q = 1 collapses to Bernoulli regardless of connectivity
    RCMParams bern = params_2x2(1.0, 0.37, Boundary::Free);
    BondConfig cfg2(bern.volume);
    CHECK(heat_bath_conditional(cfg2, b, bern) == doctest::Approx(0.37));
    // wired boundary connects the endpoints through the ghost
    RCMParams wired = params_2x2(2.0, 0.5, Boundary::Wired);
    BondConfig cfg3(wired.volume);
    CHECK(endpoints_connected_off(cfg3, b, wired));
    CHECK(heat_bath_conditional(cfg3, b, wired) == doctest::Approx(0.5));
}

TEST_CASE("exact distribution at q = 1 is product Bernoulli") {
    RCMParams pr = params_2x2(1.0, 0.6, Boundary::Free);
    ExactRCM ex = exact_rcm(pr);
    REQUIRE(ex.prob.size() == 16);
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        int open = __builtin_popcountll(mask);
        CHECK(ex.prob[mask] == doctest::Approx(std::pow(0.6, open) * std::pow(0.4, 4 - open)));
    }
    for (int i = 0; i < 4; ++i) CHECK(ex.edge_marginal(i) == doctest::Approx(0.6));
}

TEST_CASE("single-bond marginals") {
    RCMParams pr;
    pr.q = 2.0;
    pr.weights = DensityProfile::uniform(0.6);
    pr.N = 1;
    pr.volume = Region::box(0, 1, 0, 0); // one horizontal bond
    pr.boundary = Boundary::Free;
    ExactRCM free = exact_rcm(pr);
    CHECK(free.edge_marginal(0) == doctest::Approx(0.6 / (0.6 + 0.4 * 2.0)));
    pr.boundary = Boundary::Wired;
    ExactRCM wired = exact_rcm(pr);
    CHECK(wired.edge_marginal(0) == doctest::Approx(0.6));
}

TEST_CASE("detailed balance against the exact distribution") {
    for (Boundary b : {Boundary::Free, Boundary::Wired}) {
        RCMParams pr = params_2x2(2.0, 0.6, b);
        ExactRCM ex = exact_rcm(pr);
        BondConfig cfg(pr.volume);
        for (std::uint64_t mask = 0; mask < 16; ++mask)
            for (std::int64_t e = 0; e < 4; ++e) {
                std::uint64_t closed = mask & ~(std::uint64_t{1} << e);
                std::uint64_t open = mask | (std::uint64_t{1} << e);
                fill_mask(cfg, mask);
                double pc = heat_bath_conditional(cfg, pr.volume.bond_at(e), pr);
                CHECK(std::abs(ex.prob[closed] * pc - ex.prob[open] * (1 - pc)) < 1e-12);
            }
    }
}

TEST_CASE("sandwich chains couple and dominate") {
    RCMParams pr;
    pr.q = 2.0;
    pr.weights = DensityProfile::uniform(0.6);
    pr.N = 3;
    pr.volume = Region::box(0, 2, 0, 2);
    pr.boundary = Boundary::Wired;
    BondConfig upper(pr.volume), lower(pr.volume);
    SandwichDiag diag = run_sandwich(pr, 512, {21, 0}, 1e-9, &upper, &lower);
    for (std::size_t i = 0; i < upper.bits.size(); ++i) CHECK(lower.bits[i] <= upper.bits[i]);
    CHECK(diag.coupled);
    CHECK(upper.bits == lower.bits);

    SandwichDiag d2;
    BondConfig draw = sample_rcm_converged(pr, {22, 0}, 4096, &d2);
    CHECK(d2.coupled);
    CHECK(draw.bits.size() == upper.bits.size());
}

TEST_CASE("heat-bath marginals match exact at q = 1") {
    RCMParams pr = params_2x2(1.0, 0.6, Boundary::Free);
    const std::uint64_t reps = 4000;
    double open_frac = 0;
    for (std::uint64_t rep = 0; rep < reps; ++rep) {
        BondConfig cfg = sample_rcm(pr, 8, {31, rep});
        open_frac += static_cast<double>(cfg.open_count()) / 4.0;
    }
    open_frac /= static_cast<double>(reps);
    CHECK(std::abs(open_frac - 0.6) < 0.02);
}

TEST_CASE("empirical law is close to exact in total variation") {
    RCMParams pr = params_2x2(2.0, 0.6, Boundary::Free);
    ExactRCM ex = exact_rcm(pr);
    const std::uint64_t reps = 20000;
    std::map<std::uint64_t, double> emp;
    for (std::uint64_t rep = 0; rep < reps; ++rep)
        emp[mask_of(sample_rcm(pr, 24, {41, rep}))] += 1.0 / static_cast<double>(reps);
    double tv = 0;
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        auto it = emp.find(mask);
        double e = it == emp.end() ? 0.0 : it->second;
        tv += std::abs(e - ex.prob[mask]);
    }
    tv /= 2;
    CHECK(tv < 0.05);
}

TEST_CASE("exact enumeration refuses large volumes") {
    RCMParams pr;
    pr.weights = DensityProfile::uniform(0.5);
    pr.volume = Region::box(0, 4, 0, 4); // 40 bonds
    CHECK_THROWS_AS(exact_rcm(pr), std::invalid_argument);
}
