#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perco/config.hpp"
#include "perco/connectivity.hpp"

namespace perco::oracle {

// Independent reference implementations (breadth-first search instead of
// union-find, direct definitions instead of incremental algorithms) used
// to cross-check the production detectors by exhaustive enumeration.

bool connected_bfs(const BondConfig& cfg, const Region& win, const std::vector<Vertex>& from,
                   const std::vector<Vertex>& to);

bool dual_connected_bfs(const BondConfig& cfg, const DualWindow& win,
                        const std::vector<DualVertex>& from,
                        const std::vector<DualVertex>& to);

// Event evaluated through the BFS oracles with the same geometry as
// evaluate_event.
bool event_bfs(const BondConfig& cfg, const EventSpec& e);

// sigma from its definition: largest n with the bottom row connected to
// row y_min + n inside the slab, each n checked by a fresh BFS.
std::int64_t sigma_brute(const BondConfig& slab);

// Indices (into region's enumeration) of the bonds an event detector can
// read; every other bond of the region is irrelevant to the event.
std::vector<std::int64_t> relevant_bonds(const EventSpec& e, const Region& region);

// Exact P(event) by enumerating the relevant bonds (all others closed),
// once through the production detector and once through the BFS oracle.
struct ExactEventProb {
    double detector = 0.0;
    double bfs = 0.0;
    std::int64_t relevant = 0;
};
ExactEventProb exact_event_prob(const EventSpec& e, const DensityProfile& prof, int N);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Check> run_all();

} // namespace perco::oracle
