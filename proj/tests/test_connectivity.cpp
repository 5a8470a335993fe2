#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "perco/connectivity.hpp"
#include "perco/oracles.hpp"
#include "perco/sampler.hpp"

using namespace perco;

namespace {
void fill_mask(BondConfig& cfg, std::uint64_t mask) {
    for (std::size_t i = 0; i < cfg.bits.size(); ++i)
        cfg.bits[i] = (mask >> i) & 1u ? 1 : 0;
}
} // namespace

TEST_CASE("crossing trivials") {
    Region r = Region::box(0, 2, 0, 2);
    BondConfig cfg(r);
    std::vector<Vertex> bottom{{0, 0}, {1, 0}, {2, 0}}, top{{0, 2}, {1, 2}, {2, 2}};
    CHECK(!crossing(cfg, std::span<const Vertex>(bottom), std::span<const Vertex>(top), r));
    std::fill(cfg.bits.begin(), cfg.bits.end(), 1);
    CHECK(crossing(cfg, std::span<const Vertex>(bottom), std::span<const Vertex>(top), r));
    std::vector<Vertex> empty;
    CHECK(!crossing(cfg, std::span<const Vertex>(empty), std::span<const Vertex>(top), r));
    std::vector<Vertex> a{{0, 0}}, b{{2, 2}};
    std::fill(cfg.bits.begin(), cfg.bits.end(), 0);
    CHECK(!crossing(cfg, std::span<const Vertex>(a), std::span<const Vertex>(b), r));
}

TEST_CASE("crossing refuses windows outside the sampled region") {
    Region sampled = Region::box(0, 2, 0, 2);
    BondConfig cfg(sampled);
    Region bigger = Region::box(0, 3, 0, 2);
    std::vector<Vertex> a{{0, 0}}, b{{3, 0}};
    CHECK_THROWS_AS(
        crossing(cfg, std::span<const Vertex>(a), std::span<const Vertex>(b), bigger),
        std::invalid_argument);
}

TEST_CASE("union-find work stays near-linear in the bond count") {
    Region r = Region::box(0, 40, 0, 40);
    BondConfig cfg = sample_config(r, DensityProfile::uniform(0.5), 41, {2, 0});
    std::vector<Vertex> bottom, top;
    for (int x = 0; x <= 40; ++x) {
        bottom.push_back({x, 0});
        top.push_back({x, 40});
    }
    std::uint64_t ops = 0;
    crossing(cfg, std::span<const Vertex>(bottom), std::span<const Vertex>(top), r, &ops);
    CHECK(ops <= 12 * static_cast<std::uint64_t>(r.bond_count()));
}

TEST_CASE("event spec grammar round-trips") {
    for (const char* s : {"B(N=16,M=8)", "A(N=16,M=8)", "C(N=4,k=2,M=6)", "D(N=3,M=5)",
                          "E(N=2,M=2)", "Dtilde(N=4,m=2)", "cross(N=5,M=9)", "alpha(N=6,W=12)"}) {
        EventSpec e = EventSpec::parse(s);
        CHECK(EventSpec::parse(e.str()).str() == e.str());
    }
    CHECK(EventSpec::parse("A(N=16, M=8)").kind == EventKind::NoEscape);
    CHECK_THROWS_AS(EventSpec::parse("Z(N=1,M=1)"), std::invalid_argument);
    CHECK_THROWS_AS(EventSpec::parse("B(N=1)"), std::invalid_argument);
    CHECK_THROWS_AS(EventSpec::parse("B(N=0,M=1)"), std::invalid_argument);
}

TEST_CASE("event trivials on degenerate configs") {
    EventSpec a = EventSpec::parse("A(N=2,M=2,T=2)");
    EventSpec b = EventSpec::parse("B(N=2,M=3)");
    Region ra = a.required_region();
    Region rb = Region::box(0, 3, 0, 3);
    BondConfig open_a(ra), open_b(rb), closed_a(ra), closed_b(rb);
    std::fill(open_a.bits.begin(), open_a.bits.end(), 1);
    std::fill(open_b.bits.begin(), open_b.bits.end(), 1);
    CHECK(!evaluate_event(open_a, a)); // escape certain, complement fails
    CHECK(evaluate_event(closed_a, a));
    CHECK(!dual_crossing(open_b, b)); // all primal open -> all dual closed
    CHECK(dual_crossing(closed_b, b));
    CHECK_THROWS_AS(dual_crossing(open_a, a), std::invalid_argument); // not a dual event
}

TEST_CASE("dual event inclusions hold on every sampled config") {
    EventSpec b = EventSpec::parse("B(N=3,M=4)");
    EventSpec c = EventSpec::parse("C(N=3,M=4)");
    EventSpec d = EventSpec::parse("D(N=3,M=4)");
    EventSpec e = EventSpec::parse("E(N=3,M=4)");
    Region r = Region::box(0, 4, -4, 4);
    auto prof = DensityProfile::uniform(0.5);
    for (std::uint64_t rep = 0; rep < 300; ++rep) {
        BondConfig cfg = sample_config(r, prof, 3, {31, rep});
        bool vb = evaluate_event(cfg, b), vc = evaluate_event(cfg, c),
             vd = evaluate_event(cfg, d), ve = evaluate_event(cfg, e);
        if (vb) CHECK(ve);
        if (ve) CHECK(vc);
        if (vc) CHECK(vd);
    }
}

TEST_CASE("event monotonicity under coupling") {
    auto lo = DensityProfile::uniform(0.55), hi = DensityProfile::uniform(0.75);
    EventSpec tall = EventSpec::parse("cross(N=4,M=6)");
    EventSpec dualb = EventSpec::parse("B(N=4,M=6)");
    Region r = Region::box(0, 5, 0, 6);
    for (std::uint64_t rep = 0; rep < 300; ++rep) {
        auto [a, b] = sample_coupled(r, lo, hi, 4, {17, rep});
        if (evaluate_event(a, tall)) CHECK(evaluate_event(b, tall)); // increasing
        if (evaluate_event(b, dualb)) CHECK(evaluate_event(a, dualb)); // decreasing
    }
}

TEST_CASE("FKG spot check by enumeration at p = 0.6") {
    Region r = Region::box(0, 3, 0, 1); // 4x2 window, 10 bonds
    Region left = Region::box(0, 1, 0, 1), right = Region::box(2, 3, 0, 1);
    BondConfig cfg(r);
    double pa = 0, pb = 0, pab = 0;
    const double p = 0.6;
    for (std::uint64_t mask = 0; mask < 1024; ++mask) {
        fill_mask(cfg, mask);
        int open = __builtin_popcountll(mask);
        double w = std::pow(p, open) * std::pow(1 - p, 10 - open);
        bool a = rect_bottom_top_crossing(cfg, left);
        bool b = rect_bottom_top_crossing(cfg, right);
        if (a) pa += w;
        if (b) pb += w;
        if (a && b) pab += w;
    }
    CHECK(pab >= pa * pb - 1e-12);
}

TEST_CASE("sigma trivials") {
    auto closed = DensityProfile::uniform(0.0);
    RowSampler rows({1, 0}, closed, 3, 1, 3);
    SigmaResult s = sigma(rows, 100);
    CHECK(s.value == 0);
    CHECK(!s.censored);

    auto open = DensityProfile::uniform(1.0);
    RowSampler rows2({1, 0}, open, 3, 1, 3);
    SigmaResult s2 = sigma(rows2, 50);
    CHECK(s2.value == 50);
    CHECK(s2.censored);
}

TEST_CASE("sigma distribution matches exhaustive enumeration at N=2, cap=3") {
    // exact atoms from the 1024 slab configurations
    Region slab = Region::box(1, 2, 0, 3);
    BondConfig cfg(slab);
    double exact[4] = {0, 0, 0, 0};
    for (std::uint64_t mask = 0; mask < 1024; ++mask) {
        fill_mask(cfg, mask);
        exact[sigma_slab(cfg).value] += 1.0 / 1024.0;
    }
    auto prof = DensityProfile::uniform(0.5);
    const std::uint64_t reps = 100000;
    double emp[4] = {0, 0, 0, 0};
    for (std::uint64_t rep = 0; rep < reps; ++rep) {
        RowSampler rows({71, rep}, prof, 2, 1, 2);
        emp[sigma(rows, 3).value] += 1.0 / static_cast<double>(reps);
    }
    for (int k = 0; k <= 3; ++k) {
        double se = std::sqrt(exact[k] * (1 - exact[k]) / static_cast<double>(reps));
        CHECK(std::abs(emp[k] - exact[k]) <= 3 * se);
    }
}

TEST_CASE("sigma equals its dual computation on sampled slabs") {
    auto prof = DensityProfile::uniform(0.55);
    for (int N : {4, 8}) {
        Region slab = Region::box(1, N, 0, 60);
        for (std::uint64_t rep = 0; rep < 300; ++rep) {
            BondConfig cfg = sample_config(slab, prof, N, {91, rep});
            SigmaResult a = sigma_slab(cfg);
            SigmaResult b = sigma_via_duality(cfg);
            CHECK(a.value == b.value);
            CHECK(a.censored == b.censored);
        }
    }
}

TEST_CASE("detectors match the BFS oracle on random configs") {
    auto prof = DensityProfile::uniform(0.5);
    for (const char* spec : {"A(N=2,M=2,T=3)", "B(N=3,M=2)", "C(N=2,M=3)", "D(N=2,M=2)",
                             "E(N=3,M=3)", "cross(N=3,M=4)", "alpha(N=3,W=4)"}) {
        EventSpec e = EventSpec::parse(spec);
        Region r = e.required_region();
        for (std::uint64_t rep = 0; rep < 200; ++rep) {
            BondConfig cfg = sample_config(r, prof, e.N, {13, rep});
            CHECK(evaluate_event(cfg, e) == oracle::event_bfs(cfg, e));
        }
    }
}
