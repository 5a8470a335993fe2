#include "perco/oracles.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "perco/rcm.hpp"
#include "perco/sampler.hpp"
#include "perco/unionfind.hpp"

namespace perco::oracle {

bool connected_bfs(const BondConfig& cfg, const Region& win, const std::vector<Vertex>& from,
                   const std::vector<Vertex>& to) {
    const int W = win.width(), H = win.height();
    auto vid = [&](Vertex v) { return (v.y - win.y_min) * W + (v.x - win.x_min); };
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(W) * H, 0),
        target(static_cast<std::size_t>(W) * H, 0);
    for (const Vertex& v : to)
        if (win.contains(v)) target[static_cast<std::size_t>(vid(v))] = 1;
    std::deque<Vertex> dq;
    for (const Vertex& v : from) {
        if (!win.contains(v) || seen[static_cast<std::size_t>(vid(v))]) continue;
        seen[static_cast<std::size_t>(vid(v))] = 1;
        dq.push_back(v);
    }
    while (!dq.empty()) {
        Vertex w = dq.front();
        dq.pop_front();
        if (target[static_cast<std::size_t>(vid(w))]) return true;
        const Vertex nbrs[4] = {
            {w.x + 1, w.y}, {w.x - 1, w.y}, {w.x, w.y + 1}, {w.x, w.y - 1}};
        for (const Vertex& n : nbrs) {
            if (!win.contains(n) || seen[static_cast<std::size_t>(vid(n))]) continue;
            if (!cfg.open(Bond::from_endpoints(w, n))) continue;
            seen[static_cast<std::size_t>(vid(n))] = 1;
            dq.push_back(n);
        }
    }
    return false;
}

bool dual_connected_bfs(const BondConfig& cfg, const DualWindow& win,
                        const std::vector<DualVertex>& from,
                        const std::vector<DualVertex>& to) {
    const int C = win.cols(), R = win.rows();
    auto did = [&](DualVertex v) {
        return ((v.y2 - win.y2_min) / 2) * C + (v.x2 - win.x2_min) / 2;
    };
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(C) * R, 0),
        target(static_cast<std::size_t>(C) * R, 0);
    for (const DualVertex& v : to)
        if (win.contains(v)) target[static_cast<std::size_t>(did(v))] = 1;
    std::deque<DualVertex> dq;
    for (const DualVertex& v : from) {
        if (!win.contains(v) || seen[static_cast<std::size_t>(did(v))]) continue;
        seen[static_cast<std::size_t>(did(v))] = 1;
        dq.push_back(v);
    }
    auto dual_open = [&](DualVertex a, Orient o) {
        return !cfg.open(primal(DualBond{a, o}));
    };
    while (!dq.empty()) {
        DualVertex w = dq.front();
        dq.pop_front();
        if (target[static_cast<std::size_t>(did(w))]) return true;
        struct Step {
            DualVertex n;
            DualVertex min;
            Orient o;
        };
        const Step steps[4] = {
            {{w.x2 + 2, w.y2}, w, Orient::H},
            {{w.x2 - 2, w.y2}, {w.x2 - 2, w.y2}, Orient::H},
            {{w.x2, w.y2 + 2}, w, Orient::V},
            {{w.x2, w.y2 - 2}, {w.x2, w.y2 - 2}, Orient::V},
        };
        for (const Step& s : steps) {
            if (!win.contains(s.n) || seen[static_cast<std::size_t>(did(s.n))]) continue;
            if (!dual_open(s.min, s.o)) continue;
            seen[static_cast<std::size_t>(did(s.n))] = 1;
            dq.push_back(s.n);
        }
    }
    return false;
}

bool event_bfs(const BondConfig& cfg, const EventSpec& e) {
    const int N = e.N, M = e.M;
    switch (e.kind) {
    case EventKind::NoEscape: {
        const int T = e.width_margin();
        Region win = Region::box(1 - T, N + T, 0, M);
        std::vector<Vertex> from, to;
        for (int x = 1; x <= N; ++x) from.push_back({x, 0});
        for (int x = win.x_min; x <= win.x_max; ++x) to.push_back({x, M});
        return !connected_bfs(cfg, win, from, to);
    }
    case EventKind::DualBottom: {
        DualWindow win{1, 2 * N + 1, 1, 2 * M - 1};
        return dual_connected_bfs(cfg, win, {{1, 1}}, {{2 * N + 1, 1}});
    }
    case EventKind::DualSideAny:
    case EventKind::DualSideAt:
    case EventKind::DualBothAny:
    case EventKind::DualCorner: {
        DualWindow win{1, 2 * N + 1, -2 * M + 1, 2 * M - 1};
        std::vector<DualVertex> from, to;
        if (e.kind == EventKind::DualBothAny) {
            for (int y2 = win.y2_min; y2 <= win.y2_max; y2 += 2) from.push_back({1, y2});
        } else {
            from.push_back({1, 1});
        }
        if (e.kind == EventKind::DualSideAt) {
            to.push_back({2 * N + 1, 2 * e.k + 1});
        } else if (e.kind == EventKind::DualCorner) {
            to.push_back({2 * N + 1, 1});
        } else {
            for (int y2 = win.y2_min; y2 <= win.y2_max; y2 += 2)
                to.push_back({2 * N + 1, y2});
        }
        return dual_connected_bfs(cfg, win, from, to);
    }
    case EventKind::WideCross:
    case EventKind::TallCross:
    case EventKind::PointToLine: {
        Region win = e.required_region();
        std::vector<Vertex> from, to;
        if (e.kind == EventKind::WideCross) {
            for (int y = win.y_min; y <= *win.y_max; ++y) {
                from.push_back({win.x_min, y});
                to.push_back({win.x_max, y});
            }
        } else if (e.kind == EventKind::TallCross) {
            for (int x = win.x_min; x <= win.x_max; ++x) {
                from.push_back({x, win.y_min});
                to.push_back({x, *win.y_max});
            }
        } else {
            from.push_back({0, 0});
            for (int y = win.y_min; y <= *win.y_max; ++y) to.push_back({win.x_max, y});
        }
        return connected_bfs(cfg, win, from, to);
    }
    }
    throw std::logic_error("unreachable");
}

std::int64_t sigma_brute(const BondConfig& slab) {
    const Region& r = slab.region;
    for (int n = r.height() - 1; n >= 1; --n) {
        Region sub = Region::box(r.x_min, r.x_max, r.y_min, r.y_min + n);
        std::vector<Vertex> from, to;
        for (int x = r.x_min; x <= r.x_max; ++x) {
            from.push_back({x, r.y_min});
            to.push_back({x, r.y_min + n});
        }
        if (connected_bfs(slab, sub, from, to)) return n;
    }
    return 0;
}

std::vector<std::int64_t> relevant_bonds(const EventSpec& e, const Region& region) {
    std::vector<std::int64_t> out;
    switch (e.kind) {
    case EventKind::DualBottom:
    case EventKind::DualSideAny:
    case EventKind::DualSideAt:
    case EventKind::DualBothAny:
    case EventKind::DualCorner: {
        DualWindow win = e.kind == EventKind::DualBottom
                             ? DualWindow{1, 2 * e.N + 1, 1, 2 * e.M - 1}
                             : DualWindow{1, 2 * e.N + 1, -2 * e.M + 1, 2 * e.M - 1};
        for (int y2 = win.y2_min; y2 <= win.y2_max; y2 += 2)
            for (int x2 = win.x2_min; x2 <= win.x2_max; x2 += 2)
                for (Orient o : {Orient::H, Orient::V}) {
                    DualBond db{DualVertex{x2, y2}, o};
                    if (!win.contains(db.b())) continue;
                    out.push_back(region.index_of(primal(db)));
                }
        break;
    }
    default: {
        Region win = e.required_region();
        const std::int64_t nb = win.bond_count();
        for (std::int64_t i = 0; i < nb; ++i) out.push_back(region.index_of(win.bond_at(i)));
        break;
    }
    }
    return out;
}

ExactEventProb exact_event_prob(const EventSpec& e, const DensityProfile& prof, int N) {
    const Region region = e.required_region();
    auto rel = relevant_bonds(e, region);
    if (rel.size() > 24) throw std::invalid_argument("event too large for enumeration");
    ExactEventProb out;
    out.relevant = static_cast<std::int64_t>(rel.size());
    BondConfig cfg(region);
    const std::uint64_t total = std::uint64_t(1) << rel.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        double w = 1.0;
        for (std::size_t i = 0; i < rel.size(); ++i) {
            bool open = (mask >> i) & 1u;
            cfg.bits[static_cast<std::size_t>(rel[i])] = open ? 1 : 0;
            double p = density_of(region.bond_at(rel[i]), prof, N);
            w *= open ? p : 1.0 - p;
        }
        if (evaluate_event(cfg, e)) out.detector += w;
        if (event_bfs(cfg, e)) out.bfs += w;
    }
    return out;
}

// ---------------------------------------------------------------------
// Registered exhaustive checks.
// ---------------------------------------------------------------------

namespace {

void fill_mask(BondConfig& cfg, std::uint64_t mask) {
    for (std::size_t i = 0; i < cfg.bits.size(); ++i)
        cfg.bits[i] = (mask >> i) & 1u ? 1 : 0;
}

Check check_crossing_vs_bfs() {
    Region r = Region::box(0, 1, 0, 2);
    BondConfig cfg(r);
    std::vector<Vertex> from{{0, 0}, {1, 0}}, to{{0, 2}, {1, 2}};
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << cfg.bits.size()); ++mask) {
        fill_mask(cfg, mask);
        bool a = crossing(cfg, std::span<const Vertex>(from), std::span<const Vertex>(to), r);
        bool b = connected_bfs(cfg, r, from, to);
        if (a != b)
            return {"crossing-vs-bfs-2x3", false, "mismatch at mask " + std::to_string(mask)};
    }
    return {"crossing-vs-bfs-2x3", true, "128 configurations"};
}

Check check_crossing_exact_square() {
    EventSpec e;
    e.kind = EventKind::TallCross;
    e.N = 2;
    e.M = 1;
    auto pr = exact_event_prob(e, DensityProfile::uniform(0.5), 2);
    // unit square: crossing iff a vertical bond is open, 1 - (1-p)^2
    bool ok = std::abs(pr.detector - pr.bfs) < 1e-15 && std::abs(pr.detector - 0.75) < 1e-12;
    std::ostringstream os;
    os << "detector " << pr.detector << " bfs " << pr.bfs << " expected 0.75";
    return {"crossing-exact-2x2", ok, os.str()};
}

Check check_duality_xor(int w, const char* name) {
    Region r = Region::box(1, w, 0, 2);
    BondConfig cfg(r);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << cfg.bits.size()); ++mask) {
        fill_mask(cfg, mask);
        bool primal_ud = rect_bottom_top_crossing(cfg, r);
        bool dual_lr = rect_dual_lr_crossing(cfg, r);
        if (primal_ud == dual_lr)
            return {name, false, "XOR violated at mask " + std::to_string(mask)};
    }
    std::ostringstream os;
    os << (std::uint64_t(1) << cfg.bits.size()) << " configurations";
    return {name, true, os.str()};
}

Check check_sigma_brute() {
    Region r = Region::box(1, 2, 0, 3);
    BondConfig cfg(r);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << cfg.bits.size()); ++mask) {
        fill_mask(cfg, mask);
        SigmaResult s = sigma_slab(cfg);
        std::int64_t b = sigma_brute(cfg);
        if (s.value != b || s.censored != (b == r.height() - 1))
            return {"sigma-vs-brute-2w", false, "mismatch at mask " + std::to_string(mask)};
    }
    return {"sigma-vs-brute-2w", true, "1024 configurations"};
}

Check check_sigma_duality() {
    Region r = Region::box(1, 2, 0, 4);
    BondConfig cfg(r);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << cfg.bits.size()); ++mask) {
        fill_mask(cfg, mask);
        SigmaResult a = sigma_slab(cfg);
        SigmaResult b = sigma_via_duality(cfg);
        if (a.value != b.value || a.censored != b.censored)
            return {"sigma-vs-duality-2w", false, "mismatch at mask " + std::to_string(mask)};
    }
    return {"sigma-vs-duality-2w", true, "8192 configurations"};
}

Check check_dual_events_small() {
    Region r = Region::box(0, 2, -1, 1);
    BondConfig cfg(r);
    EventSpec b = EventSpec::parse("B(N=1,M=1)");
    EventSpec c = EventSpec::parse("C(N=1,M=1)");
    EventSpec ck = EventSpec::parse("C(N=1,M=1,k=0)");
    EventSpec d = EventSpec::parse("D(N=1,M=1)");
    EventSpec e = EventSpec::parse("E(N=1,M=1)");
    std::uint64_t nb = 0, nc = 0, nd = 0, ne = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << cfg.bits.size()); ++mask) {
        fill_mask(cfg, mask);
        for (const EventSpec* s : {&b, &c, &ck, &d, &e}) {
            if (evaluate_event(cfg, *s) != event_bfs(cfg, *s))
                return {"dual-events-N1", false,
                        s->str() + " mismatch at mask " + std::to_string(mask)};
        }
        bool vb = evaluate_event(cfg, b), vc = evaluate_event(cfg, c),
             vd = evaluate_event(cfg, d), ve = evaluate_event(cfg, e);
        if ((vb && !ve) || (ve && !vc) || (vc && !vd))
            return {"dual-events-N1", false, "inclusion violated at mask " + std::to_string(mask)};
        nb += vb;
        nc += vc;
        nd += vd;
        ne += ve;
    }
    std::ostringstream os;
    os << "counts B " << nb << " <= E " << ne << " <= C " << nc << " <= D " << nd;
    return {"dual-events-N1", true, os.str()};
}

Check check_event_exact(const char* spec, const char* name) {
    EventSpec e = EventSpec::parse(spec);
    auto pr = exact_event_prob(e, DensityProfile::uniform(0.5), e.N);
    bool ok = std::abs(pr.detector - pr.bfs) < 1e-15;
    std::ostringstream os;
    os << e.str() << " detector " << pr.detector << " bfs " << pr.bfs << " over 2^"
       << pr.relevant;
    return {name, ok, os.str()};
}

Check check_rowsampler_bitexact() {
    Region r = Region::box(1, 4, 0, 9);
    auto prof = DensityProfile({0.5, 0.5}, {0.6, 0.8});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        SeedSpec s{seed, 7};
        BondConfig whole = sample_config(r, prof, 4, s);
        RowSampler rows(s, prof, 4, 1, 4);
        std::vector<std::uint8_t> bottom, vert, hor;
        rows.base_row(bottom, 0);
        for (int i = 0; i + 1 < 4; ++i)
            if (bottom[static_cast<std::size_t>(i)] != whole.open({Vertex{1 + i, 0}, Orient::H}))
                return {"rowsampler-bitexact", false, "base row differs"};
        for (int y = 0; y < 9; ++y) {
            rows.next_row(vert, hor);
            for (int i = 0; i < 4; ++i)
                if (vert[static_cast<std::size_t>(i)] !=
                    whole.open({Vertex{1 + i, y}, Orient::V}))
                    return {"rowsampler-bitexact", false, "vertical differs"};
            for (int i = 0; i + 1 < 4; ++i)
                if (hor[static_cast<std::size_t>(i)] !=
                    whole.open({Vertex{1 + i, y + 1}, Orient::H}))
                    return {"rowsampler-bitexact", false, "horizontal differs"};
        }
    }
    return {"rowsampler-bitexact", true, "50 seeds, strip profile"};
}

Check check_sigma_stream_vs_slab() {
    const int N = 4, H = 128;
    auto prof = DensityProfile::uniform(0.6);
    Region slab = Region::box(1, N, 0, H);
    for (std::uint64_t rep = 0; rep < 200; ++rep) {
        SeedSpec s{42, rep};
        BondConfig cfg = sample_config(slab, prof, N, s);
        SigmaResult a = sigma_slab(cfg);
        RowSampler rows(s, prof, N, 1, N);
        SigmaResult b = sigma(rows, H);
        if (a.value != b.value || a.censored != b.censored)
            return {"sigma-stream-vs-slab", false, "replica " + std::to_string(rep)};
    }
    return {"sigma-stream-vs-slab", true, "200 replicas, N=4"};
}

Check check_rcm_detailed_balance() {
    for (Boundary bc : {Boundary::Free, Boundary::Wired}) {
        RCMParams params;
        params.q = 2.0;
        params.weights = DensityProfile::uniform(0.6);
        params.boundary = bc;
        params.volume = Region::box(0, 1, 0, 1);
        ExactRCM ex = exact_rcm(params);
        BondConfig cfg(params.volume);
        const std::int64_t nb = params.volume.bond_count();
        for (std::uint64_t mask = 0; mask < ex.prob.size(); ++mask) {
            for (std::int64_t e = 0; e < nb; ++e) {
                if ((mask >> e) & 1u) continue; // handle each pair once from the closed side
                fill_mask(cfg, mask);
                double pc = heat_bath_conditional(cfg, params.volume.bond_at(e), params);
                double lhs = ex.prob[mask] * pc;
                double rhs = ex.prob[mask | (std::uint64_t(1) << e)] * (1.0 - pc);
                if (std::abs(lhs - rhs) > 1e-12)
                    return {"rcm-detailed-balance", false,
                            "violated at mask " + std::to_string(mask)};
            }
        }
    }
    return {"rcm-detailed-balance", true, "q=2 p=0.6, free and wired, < 1e-12"};
}

Check check_rcm_wired_ge_free() {
    RCMParams params;
    params.q = 2.0;
    params.weights = DensityProfile::uniform(0.6);
    params.volume = Region::box(0, 2, 0, 2);
    params.boundary = Boundary::Free;
    ExactRCM free_m = exact_rcm(params);
    params.boundary = Boundary::Wired;
    ExactRCM wired_m = exact_rcm(params);
    const std::int64_t nb = params.volume.bond_count();
    for (std::int64_t e = 0; e < nb; ++e)
        if (wired_m.edge_marginal(e) < free_m.edge_marginal(e) - 1e-12)
            return {"rcm-wired-ge-free", false, "edge " + std::to_string(e)};
    return {"rcm-wired-ge-free", true, "12 edge marginals on the 3x3 volume"};
}

Check check_rcm_single_bond() {
    RCMParams params;
    params.q = 2.0;
    params.weights = DensityProfile::uniform(0.6);
    params.volume = Region::box(0, 1, 0, 0);
    params.boundary = Boundary::Free;
    double free_m = exact_rcm(params).edge_marginal(0);
    double want_free = 0.6 / (0.6 + 0.4 * 2.0);
    params.boundary = Boundary::Wired;
    double wired_m = exact_rcm(params).edge_marginal(0);
    bool ok = std::abs(free_m - want_free) < 1e-12 && std::abs(wired_m - 0.6) < 1e-12;
    std::ostringstream os;
    os << "free " << free_m << " (want " << want_free << "), wired " << wired_m
       << " (want 0.6)";
    return {"rcm-single-bond", ok, os.str()};
}

int cluster_count_bfs(const BondConfig& cfg, const RCMParams& params) {
    const Region& r = params.volume;
    const int W = r.width(), H = r.height();
    auto vid = [&](Vertex v) { return (v.y - r.y_min) * W + (v.x - r.x_min); };
    auto wired = [&](Vertex v) {
        if (params.boundary == Boundary::Free) return false;
        bool side = v.x == r.x_min || v.x == r.x_max;
        bool top = v.y == *r.y_max;
        bool bottom = v.y == r.y_min;
        return params.boundary == Boundary::Wired ? (side || top || bottom) : (side || top);
    };
    // Components of the open subgraph alone; all components touching a
    // wired vertex then collapse into the single ghost cluster.
    std::vector<int> comp(static_cast<std::size_t>(W) * H, -1);
    int free_comps = 0;
    bool any_wired_touch = false;
    int next_id = 0;
    for (int y = r.y_min; y <= *r.y_max; ++y) {
        for (int x = r.x_min; x <= r.x_max; ++x) {
            Vertex v0{x, y};
            if (comp[static_cast<std::size_t>(vid(v0))] >= 0) continue;
            int id = next_id++;
            std::deque<Vertex> dq{v0};
            comp[static_cast<std::size_t>(vid(v0))] = id;
            bool touches = wired(v0);
            while (!dq.empty()) {
                Vertex w = dq.front();
                dq.pop_front();
                const Vertex nbrs[4] = {
                    {w.x + 1, w.y}, {w.x - 1, w.y}, {w.x, w.y + 1}, {w.x, w.y - 1}};
                for (const Vertex& n : nbrs) {
                    if (!r.contains(n) || comp[static_cast<std::size_t>(vid(n))] >= 0) continue;
                    if (!cfg.open(Bond::from_endpoints(w, n))) continue;
                    comp[static_cast<std::size_t>(vid(n))] = id;
                    if (wired(n)) touches = true;
                    dq.push_back(n);
                }
            }
            if (touches)
                any_wired_touch = true;
            else
                ++free_comps;
        }
    }
    return free_comps + (any_wired_touch ? 1 : 0);
}

Check check_cluster_count() {
    RCMParams params;
    params.q = 2.0;
    params.weights = DensityProfile::uniform(0.6);
    params.volume = Region::box(0, 2, 0, 2);
    BondConfig cfg(params.volume);
    params.boundary = Boundary::Free;
    std::fill(cfg.bits.begin(), cfg.bits.end(), 1);
    if (cluster_count(cfg, params) != 1) return {"cluster-count", false, "all open free != 1"};
    std::fill(cfg.bits.begin(), cfg.bits.end(), 0);
    if (cluster_count(cfg, params) != 9) return {"cluster-count", false, "all closed free != 9"};
    params.boundary = Boundary::Wired;
    if (cluster_count(cfg, params) != 2)
        return {"cluster-count", false, "all closed wired != 2 (ghost + center)"};
    // random configurations against the BFS oracle, both boundary kinds
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        std::uint64_t bitsrc = mix64(trial * 0x9e3779b97f4a7c15ULL + 11);
        for (std::size_t i = 0; i < cfg.bits.size(); ++i)
            cfg.bits[i] = (bitsrc >> i) & 1u ? 1 : 0;
        for (Boundary bc : {Boundary::Free, Boundary::Wired, Boundary::SemiCylinderWired}) {
            params.boundary = bc;
            if (cluster_count(cfg, params) != cluster_count_bfs(cfg, params))
                return {"cluster-count", false, "oracle mismatch at trial " + std::to_string(trial)};
        }
    }
    return {"cluster-count", true, "trivials plus 200 random configs, 3 boundary kinds"};
}

Check check_russo_exact() {
    const double p = 0.55;
    EventSpec e;
    e.kind = EventKind::WideCross;
    e.N = 1;
    e.m = 2;
    Region win = e.required_region(); // [0,1] x [0,1], 4 bonds
    BondConfig cfg(win);
    const std::int64_t nb = win.bond_count();
    double prob = 0.0, deriv = 0.0, e_omega = 0.0, e_cross = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << nb); ++mask) {
        fill_mask(cfg, mask);
        int open = 0;
        for (std::int64_t i = 0; i < nb; ++i) open += (mask >> i) & 1u;
        const int closed = static_cast<int>(nb) - open;
        const double w = std::pow(p, open) * std::pow(1 - p, closed);
        const bool x = evaluate_event(cfg, e);
        if (x) {
            prob += w;
            deriv += w * (open / p - closed / (1 - p));
            e_cross += w * open;
        }
        e_omega += w * open;
    }
    const double cov = e_cross - e_omega * prob;
    const double russo = cov / (p * (1 - p));
    bool ok = std::abs(russo - deriv) < 1e-12;
    std::ostringstream os;
    os << "d/dp " << deriv << " covariance form " << russo;
    return {"russo-exact-N1", ok, os.str()};
}

} // namespace

std::vector<Check> run_all() {
    std::vector<Check> out;
    out.push_back(check_crossing_vs_bfs());
    out.push_back(check_crossing_exact_square());
    out.push_back(check_duality_xor(2, "duality-xor-2x3"));
    out.push_back(check_duality_xor(3, "duality-xor-3x3"));
    out.push_back(check_sigma_brute());
    out.push_back(check_sigma_duality());
    out.push_back(check_dual_events_small());
    out.push_back(check_event_exact("E(N=2,M=2)", "event-exact-E22"));
    out.push_back(check_event_exact("D(N=2,M=2)", "event-exact-D22"));
    out.push_back(check_event_exact("B(N=2,M=2)", "event-exact-B22"));
    out.push_back(check_event_exact("A(N=1,M=1,T=1)", "event-exact-A11"));
    out.push_back(check_rowsampler_bitexact());
    out.push_back(check_sigma_stream_vs_slab());
    out.push_back(check_rcm_detailed_balance());
    out.push_back(check_rcm_wired_ge_free());
    out.push_back(check_rcm_single_bond());
    out.push_back(check_cluster_count());
    out.push_back(check_russo_exact());
    return out;
}

} // namespace perco::oracle
