#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "perco/config.hpp"
#include "perco/lattice.hpp"
#include "perco/rng.hpp"

namespace perco {

// The uniform attached to a bond depends only on (seed, replica) and the
// bond's canonical coordinates, so any two consumers that look at the
// same bond under the same SeedSpec see the same number. The key is
// derived per lattice row so row streaming can amortize the hashing.
inline std::uint64_t bond_row_key(const SeedSpec& s, int y) {
    KeyedRng r(s.seed);
    r.absorb(kStreamBond).absorb(s.replica).absorb_i(y);
    return r.state;
}

inline double bond_uniform_in_row(std::uint64_t row_key, int x, Orient o) {
    const std::uint64_t z =
        static_cast<std::uint64_t>(2 * static_cast<std::int64_t>(x) +
                                   static_cast<std::int64_t>(o)) *
        0x9e3779b97f4a7c15ULL;
    return static_cast<double>(mix64(row_key ^ z) >> 11) * 0x1.0p-53;
}

inline double bond_uniform(const SeedSpec& s, const Bond& b) {
    return bond_uniform_in_row(bond_row_key(s, b.a.y), b.a.x, b.o);
}

// Bond source that materializes nothing: open/closed is recomputed from
// the keyed uniform on every query. Covers the whole lattice. The last
// row key is memoized; detectors scan in row order.
struct LazyBonds {
    SeedSpec s;
    DensityProfile prof;
    int N = 1;
    mutable int cached_y = 0;
    mutable std::uint64_t cached_key = 0;
    mutable bool has_cache = false;

    bool open(const Bond& b) const {
        if (!has_cache || b.a.y != cached_y) {
            cached_y = b.a.y;
            cached_key = bond_row_key(s, b.a.y);
            has_cache = true;
        }
        return bond_uniform_in_row(cached_key, b.a.x, b.o) < density_of(b, prof, N);
    }
    bool covers(const Bond&) const { return true; }
};

inline BondConfig sample_config(const Region& r, const DensityProfile& prof, int N,
                                const SeedSpec& s) {
    prof.validate();
    if (!r.bounded()) throw std::invalid_argument("sample_config needs a bounded region");
    BondConfig cfg(r);
    std::int64_t n = r.bond_count();
    for (std::int64_t i = 0; i < n; ++i) {
        Bond b = r.bond_at(i);
        cfg.bits[static_cast<std::size_t>(i)] =
            bond_uniform(s, b) < density_of(b, prof, N) ? 1 : 0;
    }
    return cfg;
}

// One uniform per bond drives both configs; the low config's open set is
// a subset of the high config's by construction.
inline std::pair<BondConfig, BondConfig> sample_coupled(const Region& r,
                                                        const DensityProfile& lo,
                                                        const DensityProfile& hi, int N,
                                                        const SeedSpec& s) {
    lo.validate();
    hi.validate();
    if (lo.strips() != hi.strips())
        throw std::invalid_argument("coupled profiles need equal strip counts");
    for (std::size_t i = 0; i < lo.strips(); ++i)
        if (lo.p[i] > hi.p[i])
            throw std::invalid_argument("coupled profiles must be pointwise ordered");
    BondConfig a(r), b(r);
    std::int64_t n = r.bond_count();
    for (std::int64_t i = 0; i < n; ++i) {
        Bond bd = r.bond_at(i);
        double u = bond_uniform(s, bd);
        std::size_t strip = strip_of(bd, lo, N);
        a.bits[static_cast<std::size_t>(i)] = u < lo.p[strip] ? 1 : 0;
        b.bits[static_cast<std::size_t>(i)] = u < hi.p[strip] ? 1 : 0;
    }
    return {std::move(a), std::move(b)};
}

// Streaming generator for the semi-cylinder [x_min, x_max] x [y0, inf).
// Step n emits the vertical bonds row n -> n+1 followed by the horizontal
// bonds of row n+1, in left-to-right order; bit-exact with sample_config
// restricted to those bonds under the same SeedSpec.
struct RowSampler {
    SeedSpec s;
    DensityProfile prof;
    int N = 1;
    int x_min = 1, x_max = 1;
    int row = 0; // next step emits bonds between `row` and `row + 1`

    RowSampler(SeedSpec seed, DensityProfile profile, int n, int x0, int x1, int y0 = 0)
        : s(seed), prof(std::move(profile)), N(n), x_min(x0), x_max(x1), row(y0) {
        prof.validate();
    }

    int width() const { return x_max - x_min + 1; }

    // verticals[i]: bond {(x_min+i,row),(x_min+i,row+1)};
    // horizontals[i]: bond {(x_min+i,row+1),(x_min+i+1,row+1)}.
    void next_row(std::vector<std::uint8_t>& verticals, std::vector<std::uint8_t>& horizontals) {
        const int W = width();
        verticals.resize(static_cast<std::size_t>(W));
        horizontals.resize(static_cast<std::size_t>(W - 1));
        ensure_densities();
        const std::uint64_t key_v = bond_row_key(s, row);
        const std::uint64_t key_h = bond_row_key(s, row + 1);
        for (int i = 0; i < W; ++i)
            verticals[static_cast<std::size_t>(i)] =
                bond_uniform_in_row(key_v, x_min + i, Orient::V) <
                        col_density_[static_cast<std::size_t>(i)]
                    ? 1
                    : 0;
        for (int i = 0; i + 1 < W; ++i)
            horizontals[static_cast<std::size_t>(i)] =
                bond_uniform_in_row(key_h, x_min + i, Orient::H) <
                        col_density_[static_cast<std::size_t>(i)]
                    ? 1
                    : 0;
        ++row;
    }

    // Bottom-row horizontals, needed once before streaming upward.
    void base_row(std::vector<std::uint8_t>& horizontals, int y) const {
        const int W = width();
        horizontals.resize(static_cast<std::size_t>(W - 1));
        for (int i = 0; i + 1 < W; ++i) {
            Bond b{Vertex{x_min + i, y}, Orient::H};
            horizontals[static_cast<std::size_t>(i)] =
                bond_uniform(s, b) < density_of(b, prof, N) ? 1 : 0;
        }
    }

private:
    // Strip density per column; the profile only depends on X(b).
    mutable std::vector<double> col_density_;
    void ensure_densities() const {
        if (!col_density_.empty()) return;
        const int W = width();
        col_density_.resize(static_cast<std::size_t>(W));
        for (int i = 0; i < W; ++i) {
            Bond b{Vertex{x_min + i, 0}, Orient::V};
            col_density_[static_cast<std::size_t>(i)] = density_of(b, prof, N);
        }
    }
};

} // namespace perco
