#include "perco/rcm.hpp"

#include <algorithm>
#include <deque>

#include "perco/unionfind.hpp"

namespace perco {

namespace {

bool vertex_wired(const Region& r, Boundary bc, Vertex v) {
    switch (bc) {
    case Boundary::Free:
        return false;
    case Boundary::Wired:
        return v.x == r.x_min || v.x == r.x_max || v.y == r.y_min || v.y == *r.y_max;
    case Boundary::SemiCylinderWired:
        // wired top and sides; the bottom row stays free
        return v.x == r.x_min || v.x == r.x_max || v.y == *r.y_max;
    }
    return false;
}

struct VolumeIndex {
    const Region& r;
    int W, H;
    explicit VolumeIndex(const Region& reg) : r(reg), W(reg.width()), H(reg.height()) {}
    std::int32_t operator()(Vertex v) const {
        return static_cast<std::int32_t>((v.y - r.y_min) * W + (v.x - r.x_min));
    }
    std::size_t count() const { return static_cast<std::size_t>(W) * H; }
};

} // namespace

int cluster_count(const BondConfig& cfg, const RCMParams& params) {
    const Region& r = params.volume;
    VolumeIndex vid(r);
    DisjointSets ds(vid.count() + 1);
    const std::int32_t ghost = static_cast<std::int32_t>(vid.count());
    for (int y = r.y_min; y <= *r.y_max; ++y)
        for (int x = r.x_min; x <= r.x_max; ++x)
            if (vertex_wired(r, params.boundary, {x, y})) ds.unite(ghost, vid({x, y}));
    const std::int64_t nb = r.bond_count();
    for (std::int64_t i = 0; i < nb; ++i) {
        Bond b = r.bond_at(i);
        if (cfg.open(b)) ds.unite(vid(b.a), vid(b.b()));
    }
    std::vector<std::uint8_t> seen(vid.count() + 1, 0);
    int k = 0;
    for (std::size_t v = 0; v < vid.count(); ++v) {
        std::int32_t root = ds.find(static_cast<std::int32_t>(v));
        if (!seen[static_cast<std::size_t>(root)]) {
            seen[static_cast<std::size_t>(root)] = 1;
            ++k;
        }
    }
    return k;
}

bool endpoints_connected_off(const BondConfig& cfg, const Bond& b, const RCMParams& params) {
    const Region& r = params.volume;
    const Boundary bc = params.boundary;
    const Vertex u = b.a, v = b.b();
    if (vertex_wired(r, bc, u) && vertex_wired(r, bc, v)) return true;

    VolumeIndex vid(r);
    // BFS from u avoiding b; the ghost class is never expanded, reaching
    // a wired vertex from both sides counts as connected.
    auto bfs = [&](Vertex start, Vertex target, std::vector<std::uint8_t>& seen, bool& hit_ghost) {
        std::deque<Vertex> dq{start};
        seen[static_cast<std::size_t>(vid(start))] = 1;
        hit_ghost = vertex_wired(r, bc, start);
        while (!dq.empty()) {
            Vertex w = dq.front();
            dq.pop_front();
            if (w == target) return true;
            const Vertex nbrs[4] = {{w.x + 1, w.y}, {w.x - 1, w.y}, {w.x, w.y + 1}, {w.x, w.y - 1}};
            for (const Vertex& n : nbrs) {
                if (!r.contains(n)) continue;
                Bond e = Bond::from_endpoints(w, n);
                if (e == b || !cfg.open(e)) continue;
                auto id = static_cast<std::size_t>(vid(n));
                if (seen[id]) continue;
                seen[id] = 1;
                if (vertex_wired(r, bc, n)) hit_ghost = true;
                if (n == target) return true;
                dq.push_back(n);
            }
        }
        return false;
    };

    std::vector<std::uint8_t> seen_u(vid.count(), 0);
    bool u_ghost = false;
    if (bfs(u, v, seen_u, u_ghost)) return true;
    if (!u_ghost) return false;
    std::vector<std::uint8_t> seen_v(vid.count(), 0);
    bool v_ghost = false;
    if (bfs(v, u, seen_v, v_ghost)) return true;
    return v_ghost;
}

double heat_bath_conditional(const BondConfig& cfg, const Bond& b, const RCMParams& params) {
    if (!params.volume.contains(b)) throw std::invalid_argument("bond outside volume");
    const double p = density_of(b, params.weights, params.N);
    if (params.q == 1.0) return p; // Bernoulli collapse, connectivity irrelevant
    if (endpoints_connected_off(cfg, b, params)) return p;
    return p / (p + (1.0 - p) * params.q);
}

ExactRCM exact_rcm(const RCMParams& params) {
    params.validate();
    const Region& r = params.volume;
    const std::int64_t nb = r.bond_count();
    if (nb > 20) throw std::invalid_argument("exact_rcm volume too large (> 20 bonds)");
    std::vector<Bond> bonds = r.bonds();
    ExactRCM out;
    out.volume = r;
    out.prob.resize(static_cast<std::size_t>(1) << nb);
    double zsum = 0.0;
    BondConfig cfg(r);
    for (std::uint32_t mask = 0; mask < out.prob.size(); ++mask) {
        double w = 1.0;
        for (std::int64_t i = 0; i < nb; ++i) {
            bool open = (mask >> i) & 1u;
            cfg.bits[static_cast<std::size_t>(i)] = open ? 1 : 0;
            double p = density_of(bonds[static_cast<std::size_t>(i)], params.weights, params.N);
            w *= open ? p : 1.0 - p;
        }
        w *= std::pow(params.q, cluster_count(cfg, params));
        out.prob[mask] = w;
        zsum += w;
    }
    out.log_z = std::log(zsum);
    for (double& p : out.prob) p /= zsum;
    return out;
}

double ExactRCM::edge_marginal(std::int64_t bond_index) const {
    double m = 0.0;
    for (std::size_t mask = 0; mask < prob.size(); ++mask)
        if ((mask >> bond_index) & 1u) m += prob[mask];
    return m;
}

namespace {

double sweep_uniform(const SeedSpec& s, int sweep, std::int64_t edge) {
    KeyedRng r(s.seed);
    r.absorb(kStreamRcm).absorb(s.replica).absorb(static_cast<std::uint64_t>(sweep))
        .absorb(static_cast<std::uint64_t>(edge));
    return r.uniform();
}

void heat_bath_sweep(BondConfig& cfg, const RCMParams& params, int sweep, const SeedSpec& s) {
    const std::int64_t nb = params.volume.bond_count();
    for (std::int64_t e = 0; e < nb; ++e) {
        Bond b = params.volume.bond_at(e);
        double pc = heat_bath_conditional(cfg, b, params);
        cfg.bits[static_cast<std::size_t>(e)] = sweep_uniform(s, sweep, e) < pc ? 1 : 0;
    }
}

} // namespace

BondConfig sample_rcm(const RCMParams& params, int sweeps, const SeedSpec& s) {
    params.validate();
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    BondConfig cfg(params.volume);
    const bool wired_start = params.boundary != Boundary::Free;
    std::fill(cfg.bits.begin(), cfg.bits.end(), wired_start ? 1 : 0);
    for (int t = 0; t < sweeps; ++t) heat_bath_sweep(cfg, params, t, s);
    return cfg;
}

SandwichDiag run_sandwich(const RCMParams& params, int max_sweeps, const SeedSpec& s,
                          double gap_target, BondConfig* upper, BondConfig* lower) {
    params.validate();
    const std::int64_t nb = params.volume.bond_count();
    BondConfig hi(params.volume), lo(params.volume);
    std::fill(hi.bits.begin(), hi.bits.end(), 1);
    SandwichDiag diag;
    for (int t = 0; t < max_sweeps; ++t) {
        for (std::int64_t e = 0; e < nb; ++e) {
            Bond b = params.volume.bond_at(e);
            double u = sweep_uniform(s, t, e);
            double ph = heat_bath_conditional(hi, b, params);
            double pl = heat_bath_conditional(lo, b, params);
            hi.bits[static_cast<std::size_t>(e)] = u < ph ? 1 : 0;
            lo.bits[static_cast<std::size_t>(e)] = u < pl ? 1 : 0;
        }
        std::int64_t dis = 0;
        for (std::int64_t e = 0; e < nb; ++e)
            dis += hi.bits[static_cast<std::size_t>(e)] != lo.bits[static_cast<std::size_t>(e)];
        diag.gap.push_back(static_cast<double>(dis) / static_cast<double>(nb));
        diag.sweeps_run = t + 1;
        if (diag.gap.back() < gap_target) {
            diag.coupled = true;
            break;
        }
    }
    if (upper) *upper = hi;
    if (lower) *lower = lo;
    return diag;
}

BondConfig sample_rcm_converged(const RCMParams& params, const SeedSpec& s, int max_sweeps,
                                SandwichDiag* diag_out) {
    BondConfig hi(params.volume);
    SandwichDiag diag = run_sandwich(params, max_sweeps, s, 1e-3, &hi, nullptr);
    if (!diag.coupled)
        throw std::runtime_error("sandwich coupling did not converge within sweep budget");
    const std::int64_t nb = params.volume.bond_count();
    const int spacing =
        static_cast<int>((nb + params.N - 1) / std::max<std::int64_t>(params.N, 1));
    for (int t = 0; t < spacing; ++t)
        heat_bath_sweep(hi, params, diag.sweeps_run + t, s);
    if (diag_out) *diag_out = diag;
    return hi;
}

} // namespace perco
