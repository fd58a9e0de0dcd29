#pragma once

// Independent test oracles. These deliberately avoid the library's own
// computation paths: they recompute expected values by brute force so the
// main implementation can be checked against them.

#include "twistlab/config.hpp"
#include "twistlab/curve.hpp"

#include <optional>
#include <vector>

namespace twistlab::oracle {

// Orientability by explicit cycle enumeration: every subset of bands that
// forms a closed cycle in the band graph must have even flip weight.
// Exponential in the number of bands; intended for n <= 4.
bool orientable_by_cycle_basis(const Configuration& cfg);

// Euler characteristic from explicit cell counts of the rectangle complex
// (vertices, edges, faces assembled from scratch).
int euler_by_cell_counts(const Configuration& cfg);

// Parity of a band walk, recomputed without the library's Band accessor.
int walk_flip_parity(const Configuration& cfg, const std::vector<BandStep>& walk);

// All configurations with the given n: every b_order, every even-parity flip
// pair. Caps left open. Deterministic order.
std::vector<Configuration> enumerate_bare_configurations(int n);

// Exhaustive bounded-move search for the minimal crossing count of `c`
// against a core. Moves are sound isotopies: cancelling null turn-backs,
// poking a finger through a side (inserting a turn-back pair), and sliding a
// contiguous stretch of the word across a disk-capped boundary region.
// Returns the minimum over all words reachable within the length budget, or
// nullopt if the state cap was hit before exhausting the frontier.
struct MoveSearchLimits {
    int extra_steps = 4;      // allowed word growth over the input length
    int max_states = 200000;  // BFS state cap
};
std::optional<int> min_crossings_by_moves(const Configuration& cfg, const Curve& c,
                                          CoreId core, MoveSearchLimits limits = {});

} // namespace twistlab::oracle
