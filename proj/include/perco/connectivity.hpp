#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "perco/config.hpp"
#include "perco/lattice.hpp"
#include "perco/sampler.hpp"
#include "perco/unionfind.hpp"

namespace perco {

// ---------------------------------------------------------------------
// Crossing detectors.
// ---------------------------------------------------------------------

// True iff an open path inside `within` joins some vertex of `from` to
// some vertex of `to`. Union-find over the open bonds of the window.
template <class Src>
bool crossing(const Src& src, std::span<const Vertex> from, std::span<const Vertex> to,
              const Region& within, std::uint64_t* uf_ops = nullptr) {
    if (from.empty() || to.empty()) return false;
    if (!within.bounded()) throw std::invalid_argument("crossing needs a bounded window");
    const int W = within.width(), H = within.height();
    auto vid = [&](Vertex v) {
        return std::int32_t((v.y - within.y_min) * W + (v.x - within.x_min));
    };
    DisjointSets ds(static_cast<std::size_t>(W) * H);
    const std::int64_t nb = within.bond_count();
    for (std::int64_t i = 0; i < nb; ++i) {
        Bond b = within.bond_at(i);
        if (!src.covers(b)) throw std::invalid_argument("window exceeds sampled region");
        if (src.open(b)) ds.unite(vid(b.a), vid(b.b()));
    }
    std::vector<std::uint8_t> is_from(static_cast<std::size_t>(W) * H, 0);
    for (const Vertex& v : from) {
        if (!within.contains(v)) continue;
        is_from[static_cast<std::size_t>(ds.find(vid(v)))] = 1;
    }
    bool hit = false;
    for (const Vertex& v : to) {
        if (!within.contains(v)) continue;
        if (is_from[static_cast<std::size_t>(ds.find(vid(v)))]) {
            hit = true;
            break;
        }
    }
    if (uf_ops) *uf_ops = ds.find_steps + ds.union_calls;
    return hit;
}

// Dual window with half-integer corners, stored doubled (all odd).
struct DualWindow {
    int x2_min, x2_max, y2_min, y2_max;

    bool contains(DualVertex v) const {
        return v.x2 >= x2_min && v.x2 <= x2_max && v.y2 >= y2_min && v.y2 <= y2_max;
    }
    int cols() const { return (x2_max - x2_min) / 2 + 1; }
    int rows() const { return (y2_max - y2_min) / 2 + 1; }
};

// Dual open path from `from` to `to` staying inside the window. A dual
// bond participates iff both its endpoints lie in the window; its state
// is derived from the primal partner (open iff the partner is closed),
// and the partner must be covered by the source.
template <class Src>
bool dual_crossing_window(const Src& src, std::span<const DualVertex> from,
                          std::span<const DualVertex> to, const DualWindow& win) {
    if (from.empty() || to.empty()) return false;
    const int C = win.cols(), R = win.rows();
    auto did = [&](DualVertex v) {
        return std::int32_t(((v.y2 - win.y2_min) / 2) * C + (v.x2 - win.x2_min) / 2);
    };
    DisjointSets ds(static_cast<std::size_t>(C) * R);
    for (int y2 = win.y2_min; y2 <= win.y2_max; y2 += 2) {
        for (int x2 = win.x2_min; x2 <= win.x2_max; x2 += 2) {
            DualVertex v{x2, y2};
            for (Orient o : {Orient::H, Orient::V}) {
                DualBond db{v, o};
                if (!win.contains(db.b())) continue;
                Bond pb = primal(db);
                if (!src.covers(pb))
                    throw std::invalid_argument("dual window exceeds sampled region");
                if (!src.open(pb)) ds.unite(did(db.a), did(db.b()));
            }
        }
    }
    std::vector<std::uint8_t> is_from(static_cast<std::size_t>(C) * R, 0);
    for (const DualVertex& v : from) {
        if (!win.contains(v)) continue;
        is_from[static_cast<std::size_t>(ds.find(did(v)))] = 1;
    }
    for (const DualVertex& v : to) {
        if (!win.contains(v)) continue;
        if (is_from[static_cast<std::size_t>(ds.find(did(v)))]) return true;
    }
    return false;
}

// ---------------------------------------------------------------------
// Named events.
// ---------------------------------------------------------------------

enum class EventKind {
    NoEscape,      // A_N^M: complement of {I_N <-> Z x {M} in R x [0,M]}
    DualBottom,    // B_N^M: (1/2,1/2) <->* (N+1/2,1/2) in R_N^+(M)
    DualSideAny,   // C_N^M: corner to right side, any height
    DualSideAt,    // C_N(k): corner to (N+1/2, k+1/2)
    DualBothAny,   // D_N^M: any-to-any between the sides
    DualCorner,    // E_N^M: corner to corner in R_N(M)
    WideCross,     // D~_N: left-right primal crossing of [0,N] x [0,2N^m-1]
    TallCross,     // bottom-top crossing of T(M,N) = [1,N] x [0,M]
    PointToLine,   // (0,0) <-> {x = N} in [0,N] x [-M,M]
};

struct EventSpec {
    EventKind kind = EventKind::TallCross;
    int N = 1;
    int M = 1;     // height parameter / truncation of the unbounded variants
    int k = 0;     // for DualSideAt
    int m = 2;     // for WideCross
    int trunc = -1; // width margin for NoEscape; -1 = default M + 16

    static EventSpec parse(const std::string& text);
    std::string str() const;

    int width_margin() const { return trunc >= 0 ? trunc : M + 16; }

    // Smallest primal region whose bonds the detector reads.
    Region required_region() const;
    // True for events that are increasing in the primal configuration.
    bool increasing() const {
        return kind == EventKind::WideCross || kind == EventKind::TallCross ||
               kind == EventKind::PointToLine;
    }
};

template <class Src>
bool evaluate_event(const Src& src, const EventSpec& e) {
    const int N = e.N, M = e.M;
    switch (e.kind) {
    case EventKind::NoEscape: {
        const int T = e.width_margin();
        Region win = Region::box(1 - T, N + T, 0, M);
        std::vector<Vertex> from, to;
        for (int x = 1; x <= N; ++x) from.push_back({x, 0});
        for (int x = win.x_min; x <= win.x_max; ++x) to.push_back({x, M});
        return !crossing(src, std::span<const Vertex>(from), std::span<const Vertex>(to), win);
    }
    case EventKind::DualBottom: {
        DualWindow win{1, 2 * N + 1, 1, 2 * M - 1};
        DualVertex a{1, 1}, b{2 * N + 1, 1};
        return dual_crossing_window(src, std::span<const DualVertex>(&a, 1),
                                    std::span<const DualVertex>(&b, 1), win);
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
        return dual_crossing_window(src, std::span<const DualVertex>(from),
                                    std::span<const DualVertex>(to), win);
    }
    case EventKind::WideCross: {
        std::int64_t h = 2;
        for (int i = 0; i < e.m; ++i) h *= N;
        Region win = Region::box(0, N, 0, static_cast<int>(h - 1));
        std::vector<Vertex> from, to;
        for (int y = win.y_min; y <= *win.y_max; ++y) {
            from.push_back({0, y});
            to.push_back({N, y});
        }
        return crossing(src, std::span<const Vertex>(from), std::span<const Vertex>(to), win);
    }
    case EventKind::TallCross: {
        Region win = Region::box(1, N, 0, M);
        std::vector<Vertex> from, to;
        for (int x = 1; x <= N; ++x) {
            from.push_back({x, 0});
            to.push_back({x, M});
        }
        return crossing(src, std::span<const Vertex>(from), std::span<const Vertex>(to), win);
    }
    case EventKind::PointToLine: {
        Region win = Region::box(0, N, -M, M);
        Vertex origin{0, 0};
        std::vector<Vertex> to;
        for (int y = -M; y <= M; ++y) to.push_back({N, y});
        return crossing(src, std::span<const Vertex>(&origin, 1), std::span<const Vertex>(to),
                        win);
    }
    }
    throw std::logic_error("unreachable");
}

template <class Src>
bool dual_crossing(const Src& src, const EventSpec& e) {
    switch (e.kind) {
    case EventKind::DualBottom:
    case EventKind::DualSideAny:
    case EventKind::DualSideAt:
    case EventKind::DualBothAny:
    case EventKind::DualCorner:
        return evaluate_event(src, e);
    default:
        throw std::invalid_argument("not a dual event: " + e.str());
    }
}

// ---------------------------------------------------------------------
// Traversable height.
// ---------------------------------------------------------------------

struct SigmaResult {
    std::int64_t value = 0;
    bool censored = false;
};

// Frontier over one row: component labels for the W row vertices plus a
// flag marking components that reach I_N. O(W) memory however high the
// walk gets.
class FrontierState {
public:
    explicit FrontierState(int width);

    // verticals[i]: bond from (i, row) up; horizontals[i]: bond between
    // (i, row+1) and (i+1, row+1). Returns true while some component on
    // the new row still reaches I_N.
    bool advance(const std::vector<std::uint8_t>& verticals,
                 const std::vector<std::uint8_t>& horizontals);

    // Fold the bottom row's horizontal bonds into the initial state.
    void seed_bottom(const std::vector<std::uint8_t>& horizontals);

    std::int64_t row() const { return row_; }

private:
    int width_;
    std::int64_t row_ = 0;
    std::vector<std::int32_t> comp_;   // per column, dense component id
    std::vector<std::uint8_t> flag_;   // per component, reaches I_N
    DisjointSets ds_;
    std::vector<std::int32_t> relabel_;
};

SigmaResult sigma(RowSampler& rows, std::int64_t cap);

// Same quantity evaluated on a fully sampled slab (rows y_min..y_max of
// cfg.region); the cap is the slab height.
SigmaResult sigma_slab(const BondConfig& cfg);

// Duality route: largest n with no left-right dual open crossing among
// the duals of the slab's first n rows of bonds.
SigmaResult sigma_via_duality(const BondConfig& cfg);

// Bottom-top open crossing of the rectangle r using only E_r, paired
// exhaustively against rect_dual_lr_crossing in the tests.
bool rect_bottom_top_crossing(const BondConfig& cfg, const Region& r);
// Left-right dual open crossing among the duals of E_r.
bool rect_dual_lr_crossing(const BondConfig& cfg, const Region& r);

} // namespace perco
