#pragma once

#include "twistlab/reduce.hpp"
#include "twistlab/validate.hpp"

#include <stdexcept>
#include <vector>

namespace twistlab {

// Dehn twists about the cores. The raw image inserts |k| monotone loops
// along the twisting core at every crossing; reductions of types I-III then
// remove the removable crossings with the other core, giving a certified
// minimal-position representative.

enum class Hand { Left, Right };

struct TwistError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReductionEvent {
    enum class Kind { I, II, III } kind;
    int region = -1;       // witnessing region id at the time of removal
    int segment_band = -1; // II/III: band of the removed segment arc
    int before = 0;        // |d ∩ other core| before/after
    int after = 0;
};

struct TwistTrace {
    Curve raw, d1, d2, d3;
    std::vector<ReductionEvent> events;
    int raw_cross_core = 0;  // |d ∩ core| (must equal |c ∩ core|)
    int raw_cross_other = 0; // |d ∩ other core|
    bool certified = false;  // d3 bigon-free against both cores
    IntersectionReport report; // curve_info of d3

    int events_of(ReductionEvent::Kind k) const {
        int n = 0;
        for (const auto& e : events)
            if (e.kind == k)
                ++n;
        return n;
    }
};

// The raw twisted curve t_core^k(c) with the stated handedness. c must be a
// valid turn-back-free word; crossings of c with the twisting core each
// receive |k| full loops. Arcs crossing the core once are emitted in the
// straightened monotone form.
Curve apply_twist_raw(const Configuration& cfg, const Curve& c, CoreId core,
                      int k, Hand hand = Hand::Right);

// Typed reduction stages against the other core: all type I (bigon arc of
// the other core inside one rectangle), then type II (arc spanning one
// two-sided segment), then type III (one-sided segment). Hard errors on
// certificate failure or on bigons outside the paper's classification.
TwistTrace twist_minimal(const Configuration& cfg, const Curve& c, CoreId core,
                         int k, Hand hand = Hand::Right);

} // namespace twistlab
