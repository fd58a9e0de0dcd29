#pragma once

#include "twistlab/arrangement.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twistlab {

// Bigon detection and removal against a core (Epstein reductions), plus the
// word normalization that cancels null turn-back excursions.

struct Bigon {
    int region = -1;
    std::vector<int> steps_c;    // word indices of the curve arc (A to B)
    std::vector<int> rects_core; // rectangles visited by the core arc (A to B)
};

// Removes steps that enter and leave a rectangle through the same half-side
// (null excursions into a band and back). These cancellations are free
// isotopies. Throws on degenerate words. Sign-changing turn-backs are left
// alone.
Curve normalize_word(const Configuration& cfg, Curve c);

// Finds the innermost bigon between c and the core (lowest region id), if
// any. c must be a valid turn-back-free word.
std::optional<Bigon> find_bigon(const Configuration& cfg, const Curve& c,
                                CoreId core);

// Bigon between two curves (no surgery support; detection only).
std::optional<Bigon> find_bigon_curves(const Configuration& cfg, const Curve& c,
                                       const Curve& other);

struct ReductionEventBasic {
    int region = -1;
    int crossings_before = 0;
    int crossings_after = 0;
};

struct ReduceResult {
    Curve curve;
    std::vector<ReductionEventBasic> trace;
};

// Repeatedly removes innermost bigons between c and the core until none
// remain; the result realizes the geometric intersection number against the
// core. Deterministic: always the lowest region id first.
ReduceResult reduce_to_minimal(const Configuration& cfg, Curve c, CoreId core);

// One bigon removal step (exposed for the twist engine, which schedules
// removals by type). The bigon must come from find_bigons on the drawing
// {c as Lanes, core}.
Curve remove_bigon(const Configuration& cfg, const Curve& c, CoreId core,
                   const Arrangement& arr, const BigonFind& bf);

} // namespace twistlab
