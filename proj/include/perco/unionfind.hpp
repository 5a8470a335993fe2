#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace perco {

// Union by rank with path halving. Operation counters back the
// complexity assertions in the tests.
struct DisjointSets {
    std::vector<std::int32_t> parent;
    std::vector<std::int8_t> rnk;
    mutable std::uint64_t find_steps = 0;
    std::uint64_t union_calls = 0;

    explicit DisjointSets(std::size_t n = 0) { reset(n); }

    void reset(std::size_t n) {
        parent.resize(n);
        std::iota(parent.begin(), parent.end(), 0);
        rnk.assign(n, 0);
        find_steps = 0;
        union_calls = 0;
    }

    std::int32_t find(std::int32_t i) const {
        while (parent[i] != i) {
            ++find_steps;
            const_cast<DisjointSets*>(this)->parent[i] = parent[parent[i]];
            i = parent[i];
        }
        ++find_steps;
        return i;
    }

    bool unite(std::int32_t i, std::int32_t j) {
        ++union_calls;
        i = find(i);
        j = find(j);
        if (i == j) return false;
        if (rnk[i] < rnk[j]) std::swap(i, j);
        parent[j] = i;
        if (rnk[i] == rnk[j]) ++rnk[i];
        return true;
    }

    bool connected(std::int32_t i, std::int32_t j) const { return find(i) == find(j); }
};

} // namespace perco
