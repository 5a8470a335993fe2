#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "perco/lattice.hpp"

namespace perco {

// One open/closed assignment over a bounded region's bonds. Dual states
// are derived (dual open iff primal closed), never stored.
struct BondConfig {
    Region region;
    std::vector<std::uint8_t> bits;

    BondConfig() = default;
    explicit BondConfig(Region r) : region(r), bits(static_cast<std::size_t>(r.bond_count()), 0) {}

    bool open(const Bond& b) const {
        return bits[static_cast<std::size_t>(region.index_of(b))] != 0;
    }
    void set(const Bond& b, bool v) {
        bits[static_cast<std::size_t>(region.index_of(b))] = v ? 1 : 0;
    }
    bool covers(const Bond& b) const { return region.contains(b); }

    std::size_t open_count() const {
        std::size_t n = 0;
        for (auto v : bits) n += v;
        return n;
    }

    friend bool operator==(const BondConfig&, const BondConfig&) = default;
};

// Export format: 16-byte header (magic "PCF1", region extents as i16,
// bond count u32) followed by u32 run lengths alternating closed/open,
// starting with a closed run.
inline std::vector<std::uint8_t> rle_export(const BondConfig& cfg) {
    std::vector<std::uint8_t> out;
    auto put32 = [&](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    };
    auto put16 = [&](std::int16_t v) {
        std::uint16_t u;
        std::memcpy(&u, &v, 2);
        out.push_back(static_cast<std::uint8_t>(u & 0xff));
        out.push_back(static_cast<std::uint8_t>(u >> 8));
    };
    put32(0x31464350u); // "PCF1"
    put16(static_cast<std::int16_t>(cfg.region.x_min));
    put16(static_cast<std::int16_t>(cfg.region.x_max));
    put16(static_cast<std::int16_t>(cfg.region.y_min));
    put16(static_cast<std::int16_t>(*cfg.region.y_max));
    put32(static_cast<std::uint32_t>(cfg.bits.size()));
    std::uint8_t cur = 0;
    std::uint32_t run = 0;
    for (auto b : cfg.bits) {
        if (b == cur) {
            ++run;
        } else {
            put32(run);
            cur = b;
            run = 1;
        }
    }
    put32(run);
    return out;
}

inline BondConfig rle_import(const std::vector<std::uint8_t>& buf) {
    if (buf.size() < 16) throw std::invalid_argument("truncated config stream");
    std::size_t pos = 0;
    auto get32 = [&]() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(buf.at(pos++)) << (8 * i);
        return v;
    };
    auto get16 = [&]() {
        std::uint16_t u = std::uint16_t(buf.at(pos)) | std::uint16_t(buf.at(pos + 1)) << 8;
        pos += 2;
        std::int16_t v;
        std::memcpy(&v, &u, 2);
        return v;
    };
    if (get32() != 0x31464350u) throw std::invalid_argument("bad config magic");
    int x0 = get16(), x1 = get16(), y0 = get16(), y1 = get16();
    std::uint32_t n = get32();
    BondConfig cfg(Region::box(x0, x1, y0, y1));
    if (cfg.bits.size() != n) throw std::invalid_argument("bond count mismatch");
    std::size_t i = 0;
    std::uint8_t cur = 0;
    while (i < n) {
        std::uint32_t run = get32();
        if (i + run > n) throw std::invalid_argument("run overflow");
        for (std::uint32_t j = 0; j < run; ++j) cfg.bits[i++] = cur;
        cur ^= 1;
    }
    return cfg;
}

} // namespace perco
