#pragma once

#include "twistlab/config.hpp"
#include "twistlab/curve.hpp"

#include <stdexcept>
#include <vector>

namespace twistlab {

// Resolving a set of curve words into an actual drawing on the complex:
// every side crossing gets a position along its side, strands through a band
// keep their transverse order (reversed across flipped bands), and inside
// every rectangle the chords of one curve are mutually non-crossing.
//
// Positions along a side are grouped into five buckets:
//   OUTLO < MINUS < MID < PLUS < OUTHI
// Normal curves occupy the signed buckets next to the cores, the cores
// themselves cross at MID (the point the side's half-sides meet), and the
// boundary pushoffs of N_a / N_b run in the outer buckets beyond all lanes.

enum class PlacementKind {
    Lanes,     // ordinary curve in the signed lanes
    CoreA,     // the a-core through the side midpoints
    CoreB,
    BoundaryA, // pushoff of a component of the boundary of N_a (outer lanes)
    BoundaryB,
};

struct PlacedCurve {
    Curve curve;
    PlacementKind kind = PlacementKind::Lanes;
};

struct PlacementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum Bucket : int { OUTLO = 0, MINUS = 1, MID = 2, PLUS = 3, OUTHI = 4 };

// One crossing of a side interface by a curve. Transition `trans` of curve
// `curve` runs between steps trans and trans+1; its tail end sits on the exit
// side of step trans, its head end on the entry side of step trans+1.
struct Instance {
    int curve = 0;
    int trans = 0;
    int end = 0; // 0 tail, 1 head
    int rect = 0;
    Side side = Side::L;
    int bucket = MINUS;
};

struct Placement {
    std::vector<Instance> instances;
    // For each (rect, side): instance ids in ascending axis order
    // (upward for L/R, rightward for B/T).
    std::vector<std::vector<int>> side_lists; // indexed rect*4 + side
    std::vector<int> pos_in_side;             // instance id -> index

    int side_index(int rect, Side s) const {
        return rect * 4 + static_cast<int>(s);
    }
    const std::vector<int>& side_list(int rect, Side s) const {
        return side_lists[static_cast<size_t>(side_index(rect, s))];
    }
};

// The partner of an instance across its band: tail(t) <-> head(t).
int partner_instance(const std::vector<Instance>& instances, int inst);

// Computes a placement for the curves or throws PlacementError when the
// words are not embeddable / not canonically placeable. All curves must be
// word-valid and free of turn-back steps.
Placement place_curves(const Configuration& cfg,
                       const std::vector<PlacedCurve>& curves);

// Boundary pushoff words for the outer lanes, one per boundary component of
// the core's neighbourhood. Two-sided cores have exactly two.
std::vector<Curve> boundary_pushoffs(const Configuration& cfg, CoreId core);

} // namespace twistlab
