#include "perco/connectivity.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace perco {

// ---------------------------------------------------------------------
// EventSpec grammar: name(key=value,...), e.g. "B(N=16,M=8)".
// ---------------------------------------------------------------------

EventSpec EventSpec::parse(const std::string& text) {
    auto lp = text.find('(');
    auto rp = text.rfind(')');
    if (lp == std::string::npos || rp == std::string::npos || rp < lp)
        throw std::invalid_argument("bad event spec: " + text);
    std::string name = text.substr(0, lp);
    name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());

    std::map<std::string, double> kv;
    std::string body = text.substr(lp + 1, rp - lp - 1);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad event spec: " + text);
        std::string key = item.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        kv[key] = std::stod(item.substr(eq + 1));
    }

    EventSpec e;
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("event " + name + " needs " + key + "=");
        return it->second;
    };
    auto opt = [&](const std::string& key, double dflt) {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : it->second;
    };

    e.N = static_cast<int>(need("N"));
    if (name == "A") {
        e.kind = EventKind::NoEscape;
        e.M = static_cast<int>(need("M"));
        e.trunc = static_cast<int>(opt("T", -1));
    } else if (name == "B") {
        e.kind = EventKind::DualBottom;
        e.M = static_cast<int>(need("M"));
    } else if (name == "C") {
        e.M = static_cast<int>(need("M"));
        if (kv.count("k")) {
            e.kind = EventKind::DualSideAt;
            e.k = static_cast<int>(kv["k"]);
        } else {
            e.kind = EventKind::DualSideAny;
        }
    } else if (name == "D") {
        e.kind = EventKind::DualBothAny;
        e.M = static_cast<int>(need("M"));
    } else if (name == "E") {
        e.kind = EventKind::DualCorner;
        e.M = static_cast<int>(need("M"));
    } else if (name == "Dtilde") {
        e.kind = EventKind::WideCross;
        e.m = static_cast<int>(opt("m", 2));
    } else if (name == "cross") {
        e.kind = EventKind::TallCross;
        e.M = static_cast<int>(need("M"));
    } else if (name == "alpha") {
        e.kind = EventKind::PointToLine;
        e.M = static_cast<int>(need("W"));
    } else {
        throw std::invalid_argument("unknown event kind: " + name);
    }
    if (e.N < 1 || (e.kind != EventKind::WideCross && e.M < 1))
        throw std::invalid_argument("event parameters must satisfy N >= 1, M >= 1");
    return e;
}

std::string EventSpec::str() const {
    std::ostringstream os;
    switch (kind) {
    case EventKind::NoEscape:
        os << "A(N=" << N << ",M=" << M;
        if (trunc >= 0) os << ",T=" << trunc;
        os << ")";
        break;
    case EventKind::DualBottom: os << "B(N=" << N << ",M=" << M << ")"; break;
    case EventKind::DualSideAny: os << "C(N=" << N << ",M=" << M << ")"; break;
    case EventKind::DualSideAt: os << "C(N=" << N << ",k=" << k << ",M=" << M << ")"; break;
    case EventKind::DualBothAny: os << "D(N=" << N << ",M=" << M << ")"; break;
    case EventKind::DualCorner: os << "E(N=" << N << ",M=" << M << ")"; break;
    case EventKind::WideCross: os << "Dtilde(N=" << N << ",m=" << m << ")"; break;
    case EventKind::TallCross: os << "cross(N=" << N << ",M=" << M << ")"; break;
    case EventKind::PointToLine: os << "alpha(N=" << N << ",W=" << M << ")"; break;
    }
    return os.str();
}

Region EventSpec::required_region() const {
    switch (kind) {
    case EventKind::NoEscape: {
        const int T = width_margin();
        return Region::box(1 - T, N + T, 0, M);
    }
    case EventKind::DualBottom:
        return Region::box(0, N + 1, 0, M);
    case EventKind::DualSideAny:
    case EventKind::DualSideAt:
    case EventKind::DualBothAny:
    case EventKind::DualCorner:
        return Region::box(0, N + 1, -M, M);
    case EventKind::WideCross: {
        std::int64_t h = 2;
        for (int i = 0; i < m; ++i) h *= N;
        return Region::box(0, N, 0, static_cast<int>(h - 1));
    }
    case EventKind::TallCross:
        return Region::box(1, N, 0, M);
    case EventKind::PointToLine:
        return Region::box(0, N, -M, M);
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------
// Frontier algorithm for sigma_N.
// ---------------------------------------------------------------------

FrontierState::FrontierState(int width)
    : width_(width), comp_(static_cast<std::size_t>(width)),
      flag_(static_cast<std::size_t>(width), 1),
      ds_(2 * static_cast<std::size_t>(width)) {
    // every bottom-row vertex belongs to I_N
    for (int x = 0; x < width_; ++x) comp_[static_cast<std::size_t>(x)] = x;
}

void FrontierState::seed_bottom(const std::vector<std::uint8_t>& horizontals) {
    std::int32_t cur = 0;
    for (int x = 0; x < width_; ++x) {
        if (x > 0 && !horizontals[static_cast<std::size_t>(x - 1)]) ++cur;
        comp_[static_cast<std::size_t>(x)] = cur;
    }
    flag_.assign(static_cast<std::size_t>(cur) + 1, 1);
}

bool FrontierState::advance(const std::vector<std::uint8_t>& verticals,
                            const std::vector<std::uint8_t>& horizontals) {
    const int W = width_;
    const std::int32_t C = static_cast<std::int32_t>(flag_.size());
    // slots [0, C): old components; [C, C+W): new row vertices
    ds_.reset(static_cast<std::size_t>(C + W));
    for (int x = 0; x < W; ++x)
        if (verticals[static_cast<std::size_t>(x)])
            ds_.unite(C + x, comp_[static_cast<std::size_t>(x)]);
    for (int x = 0; x + 1 < W; ++x)
        if (horizontals[static_cast<std::size_t>(x)]) ds_.unite(C + x, C + x + 1);

    relabel_.assign(static_cast<std::size_t>(C + W), -1);
    std::vector<std::uint8_t> new_flag;
    std::int32_t next = 0;
    for (int x = 0; x < W; ++x) {
        std::int32_t root = ds_.find(C + x);
        std::int32_t& id = relabel_[static_cast<std::size_t>(root)];
        if (id < 0) {
            id = next++;
            new_flag.push_back(0);
        }
        comp_[static_cast<std::size_t>(x)] = id;
    }
    for (std::int32_t c = 0; c < C; ++c) {
        if (!flag_[static_cast<std::size_t>(c)]) continue;
        std::int32_t id = relabel_[static_cast<std::size_t>(ds_.find(c))];
        if (id >= 0) new_flag[static_cast<std::size_t>(id)] = 1;
    }
    flag_ = std::move(new_flag);
    ++row_;
    for (std::uint8_t f : flag_)
        if (f) return true;
    return false;
}

namespace {

template <class RowFn>
SigmaResult sigma_core(int width, std::int64_t cap,
                       const std::vector<std::uint8_t>& bottom_horizontals, RowFn next) {
    if (cap < 1) throw std::invalid_argument("sigma cap must be >= 1");
    FrontierState fs(width);
    fs.seed_bottom(bottom_horizontals);
    std::vector<std::uint8_t> vert, hor;
    for (std::int64_t n = 1; n <= cap; ++n) {
        next(n - 1, vert, hor);
        if (!fs.advance(vert, hor)) return {n - 1, false};
    }
    return {cap, true};
}

} // namespace

SigmaResult sigma(RowSampler& rows, std::int64_t cap) {
    std::vector<std::uint8_t> bottom;
    rows.base_row(bottom, rows.row);
    return sigma_core(rows.width(), cap, bottom,
                      [&](std::int64_t, std::vector<std::uint8_t>& v,
                          std::vector<std::uint8_t>& h) { rows.next_row(v, h); });
}

SigmaResult sigma_slab(const BondConfig& cfg) {
    const Region& r = cfg.region;
    const int W = r.width();
    const std::int64_t cap = r.height() - 1;
    std::vector<std::uint8_t> bottom(static_cast<std::size_t>(W - 1));
    for (int i = 0; i + 1 < W; ++i)
        bottom[static_cast<std::size_t>(i)] = cfg.open({Vertex{r.x_min + i, r.y_min}, Orient::H});
    return sigma_core(W, cap, bottom,
                      [&](std::int64_t row, std::vector<std::uint8_t>& v,
                          std::vector<std::uint8_t>& h) {
                          const int y = r.y_min + static_cast<int>(row);
                          v.resize(static_cast<std::size_t>(W));
                          h.resize(static_cast<std::size_t>(W - 1));
                          for (int i = 0; i < W; ++i)
                              v[static_cast<std::size_t>(i)] =
                                  cfg.open({Vertex{r.x_min + i, y}, Orient::V});
                          for (int i = 0; i + 1 < W; ++i)
                              h[static_cast<std::size_t>(i)] =
                                  cfg.open({Vertex{r.x_min + i, y + 1}, Orient::H});
                      });
}

// ---------------------------------------------------------------------
// Rectangle duality.
// ---------------------------------------------------------------------

bool rect_bottom_top_crossing(const BondConfig& cfg, const Region& r) {
    std::vector<Vertex> from, to;
    for (int x = r.x_min; x <= r.x_max; ++x) {
        from.push_back({x, r.y_min});
        to.push_back({x, *r.y_max});
    }
    return crossing(cfg, std::span<const Vertex>(from), std::span<const Vertex>(to), r);
}

namespace {

// Union-find over the dual vertices touched by the duals of E_r, with
// two virtual nodes for the left and right sides of the dual window.
struct DualSideTracker {
    // dual vertex (c + 1/2 + x_min, j - 1/2 + y_min), c in 0..W-1? widths:
    // columns c = 0..W (x2 = 2(x_min+c) - 1), rows j = 0..H+1
    int W, H, x_min, y_min;
    DisjointSets ds;
    std::int32_t L, R;

    DualSideTracker(const Region& r)
        : W(r.width()), H(r.height()), x_min(r.x_min), y_min(r.y_min),
          ds(static_cast<std::size_t>(W + 1) * (H + 2) + 2),
          L(static_cast<std::int32_t>((W + 1) * (H + 2))), R(L + 1) {}

    std::int32_t id(DualVertex v) const {
        int c = (v.x2 + 1) / 2 - x_min;           // 0..W
        int j = (v.y2 + 1) / 2 - y_min;           // 0..H+1
        return static_cast<std::int32_t>(j * (W + 1) + c);
    }

    void add_dual_of(const Bond& b, bool primal_open) {
        if (primal_open) return;
        DualBond d = dual(b);
        std::int32_t ia = id(d.a), ib = id(d.b());
        ds.unite(ia, ib);
        attach_sides(d.a);
        attach_sides(d.b());
    }

    void attach_sides(DualVertex v) {
        int c = (v.x2 + 1) / 2 - x_min;
        if (c == 0) ds.unite(L, id(v));
        if (c == W) ds.unite(R, id(v));
    }

    bool lr_connected() { return ds.connected(L, R); }
};

} // namespace

bool rect_dual_lr_crossing(const BondConfig& cfg, const Region& r) {
    DualSideTracker t(r);
    const std::int64_t nb = r.bond_count();
    for (std::int64_t i = 0; i < nb; ++i) {
        Bond b = r.bond_at(i);
        t.add_dual_of(b, cfg.open(b));
    }
    return t.lr_connected();
}

SigmaResult sigma_via_duality(const BondConfig& cfg) {
    const Region& r = cfg.region;
    const int W = r.width();
    const std::int64_t cap = r.height() - 1;
    DualSideTracker t(r);
    // row 0 horizontals
    for (int i = 0; i + 1 < W; ++i) {
        Bond b{Vertex{r.x_min + i, r.y_min}, Orient::H};
        t.add_dual_of(b, cfg.open(b));
    }
    for (std::int64_t n = 1; n <= cap; ++n) {
        const int y = r.y_min + static_cast<int>(n);
        for (int i = 0; i < W; ++i) {
            Bond b{Vertex{r.x_min + i, y - 1}, Orient::V};
            t.add_dual_of(b, cfg.open(b));
        }
        for (int i = 0; i + 1 < W; ++i) {
            Bond b{Vertex{r.x_min + i, y}, Orient::H};
            t.add_dual_of(b, cfg.open(b));
        }
        if (t.lr_connected()) return {n - 1, false};
    }
    return {cap, true};
}

} // namespace perco
