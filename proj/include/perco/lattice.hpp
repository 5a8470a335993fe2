#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace perco {

struct Vertex {
    int x = 0;
    int y = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

enum class Orient : std::uint8_t { H = 0, V = 1 };

// A bond is stored by its lexicographically smaller endpoint plus the
// orientation, which makes equality orientation-free by construction.
struct Bond {
    Vertex a; // min endpoint
    Orient o = Orient::H;

    Vertex b() const {
        return o == Orient::H ? Vertex{a.x + 1, a.y} : Vertex{a.x, a.y + 1};
    }
    // X(b) = min{x_1, y_1} of the two endpoints' first coordinates.
    int strip_coord() const { return a.x; }

    static Bond from_endpoints(Vertex u, Vertex v) {
        if (u.x == v.x + 1 && u.y == v.y) std::swap(u, v);
        if (u.y == v.y + 1 && u.x == v.x) std::swap(u, v);
        if (v.x == u.x + 1 && v.y == u.y) return {u, Orient::H};
        if (v.y == u.y + 1 && v.x == u.x) return {u, Orient::V};
        throw std::invalid_argument("bond endpoints must be at l1-distance 1");
    }
    friend bool operator==(const Bond&, const Bond&) = default;
};

// Dual vertices live on Z^2 + (1/2,1/2); coordinates are stored doubled
// so all geometry stays integer-exact. Both members are always odd.
struct DualVertex {
    int x2 = 0;
    int y2 = 0;
    friend bool operator==(const DualVertex&, const DualVertex&) = default;
};

struct DualBond {
    DualVertex a; // min endpoint, doubled coordinates
    Orient o = Orient::H;

    DualVertex b() const {
        return o == Orient::H ? DualVertex{a.x2 + 2, a.y2} : DualVertex{a.x2, a.y2 + 2};
    }
    friend bool operator==(const DualBond&, const DualBond&) = default;
};

// {(x,y),(x+1,y)} -> {(x+1/2,y-1/2),(x+1/2,y+1/2)}
// {(x,y),(x,y+1)} -> {(x-1/2,y+1/2),(x+1/2,y+1/2)}
inline DualBond dual(const Bond& b) {
    if (b.o == Orient::H)
        return {DualVertex{2 * b.a.x + 1, 2 * b.a.y - 1}, Orient::V};
    return {DualVertex{2 * b.a.x - 1, 2 * b.a.y + 1}, Orient::H};
}

inline Bond primal(const DualBond& d) {
    if (d.o == Orient::V)
        return {Vertex{(d.a.x2 - 1) / 2, (d.a.y2 + 1) / 2}, Orient::H};
    return {Vertex{(d.a.x2 + 1) / 2, (d.a.y2 - 1) / 2}, Orient::V};
}

// Axis-aligned vertex window. y_max empty marks the semi-cylinder; bond
// enumeration then requires an explicit height cap.
struct Region {
    int x_min = 0, x_max = 0;
    int y_min = 0;
    std::optional<int> y_max;

    static Region box(int x0, int x1, int y0, int y1) {
        if (x0 > x1 || y0 > y1) throw std::invalid_argument("empty region");
        return Region{x0, x1, y0, y1};
    }
    static Region semi_cylinder(int x0, int x1, int y0 = 0) {
        if (x0 > x1) throw std::invalid_argument("empty region");
        return Region{x0, x1, y0, std::nullopt};
    }

    friend bool operator==(const Region&, const Region&) = default;

    bool bounded() const { return y_max.has_value(); }
    int width() const { return x_max - x_min + 1; }
    int height() const { return *y_max - y_min + 1; }

    bool contains(Vertex v) const {
        return v.x >= x_min && v.x <= x_max && v.y >= y_min &&
               (!y_max || v.y <= *y_max);
    }
    bool contains(const Bond& b) const { return contains(b.a) && contains(b.b()); }

    // Enumeration order: per row y, horizontal bonds left to right, then
    // vertical bonds y -> y+1 left to right. Row-major streaming order.
    std::int64_t bond_count() const {
        if (!bounded()) throw std::invalid_argument("unbounded region needs a cap");
        std::int64_t W = width(), H = height();
        return H * (W - 1) + (H - 1) * W;
    }

    std::int64_t index_of(const Bond& b) const {
        if (!contains(b)) throw std::out_of_range("bond outside region");
        std::int64_t W = width();
        std::int64_t row = b.a.y - y_min;
        std::int64_t base = row * (2 * W - 1);
        if (b.o == Orient::H) return base + (b.a.x - x_min);
        return base + (W - 1) + (b.a.x - x_min);
    }

    Bond bond_at(std::int64_t idx) const {
        std::int64_t W = width();
        std::int64_t row = idx / (2 * W - 1);
        std::int64_t off = idx % (2 * W - 1);
        if (off < W - 1) return {Vertex{int(x_min + off), int(y_min + row)}, Orient::H};
        return {Vertex{int(x_min + off - (W - 1)), int(y_min + row)}, Orient::V};
    }

    std::vector<Bond> bonds() const {
        std::vector<Bond> out;
        out.reserve(static_cast<std::size_t>(bond_count()));
        for (int y = y_min; y <= *y_max; ++y) {
            for (int x = x_min; x < x_max; ++x) out.push_back({Vertex{x, y}, Orient::H});
            if (y < *y_max)
                for (int x = x_min; x <= x_max; ++x) out.push_back({Vertex{x, y}, Orient::V});
        }
        return out;
    }
};

// Piecewise-constant strip densities: K weights k_i summing to 1 and a
// density p_i per strip.
struct DensityProfile {
    std::vector<double> k;
    std::vector<double> p;

    DensityProfile() = default;
    DensityProfile(std::vector<double> k_, std::vector<double> p_)
        : k(std::move(k_)), p(std::move(p_)) {
        validate();
    }
    static DensityProfile uniform(double p) { return DensityProfile({1.0}, {p}); }

    // Equal-width strips sampling rho at the right strip boundaries l_i.
    static DensityProfile from_rho(const std::function<double(double)>& rho, int strips) {
        if (strips < 1) throw std::invalid_argument("strips must be >= 1");
        std::vector<double> k(strips, 1.0 / strips), p(strips);
        for (int i = 0; i < strips; ++i) p[i] = rho(double(i + 1) / strips);
        return DensityProfile(std::move(k), std::move(p));
    }

    std::size_t strips() const { return k.size(); }

    void validate() const {
        if (k.empty() || k.size() != p.size())
            throw std::invalid_argument("profile needs matching nonempty k and p");
        double sum = 0;
        for (double w : k) {
            if (w <= 0) throw std::invalid_argument("strip weights must be positive");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("strip weights must sum to 1");
        for (double d : p)
            if (!(d >= 0.0 && d <= 1.0))
                throw std::invalid_argument("densities must lie in [0,1]");
    }

    // Degenerate densities 0 and 1 are fine for sampling but break the
    // finite-energy property the experiments rely on.
    void validate_strict() const {
        validate();
        for (double d : p)
            if (!(d > 0.0 && d < 1.0))
                throw std::invalid_argument("densities must lie in the open interval (0,1)");
    }

    // Cumulative boundaries l_0 = 0 < l_1 < ... < l_K = 1.
    std::vector<double> boundaries() const {
        std::vector<double> l(k.size() + 1, 0.0);
        for (std::size_t i = 0; i < k.size(); ++i) l[i + 1] = l[i] + k[i];
        l.back() = 1.0;
        return l;
    }

    double min_density() const {
        double m = 1.0;
        for (double d : p) m = std::min(m, d);
        return m;
    }
};

// Strip assignment: half-open windows [ceil(l_{i-1} N), ceil(l_i N)),
// last strip closed; everything left of strip 1 clamps to 1 and right of
// strip K clamps to K. Returns a 0-based index.
inline std::size_t strip_of(const Bond& b, const DensityProfile& prof, int N) {
    const int X = b.strip_coord();
    const std::size_t K = prof.strips();
    if (K == 1) return 0;
    auto l = prof.boundaries();
    for (std::size_t i = 1; i < K; ++i) {
        int hi = static_cast<int>(std::ceil(l[i] * N));
        if (X < hi) return i - 1;
    }
    return K - 1;
}

inline double density_of(const Bond& b, const DensityProfile& prof, int N) {
    return prof.p[strip_of(b, prof, N)];
}

} // namespace perco
