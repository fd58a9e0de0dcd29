#pragma once

#include "twistlab/config.hpp"

#include <string>
#include <vector>

namespace twistlab {

// A curve in the rectangle complex: a cyclic word of rectangle passages.
// Step k enters its rectangle through the half-side `in` and leaves through
// `out`; consecutive steps are joined through the unique band glued at the
// exit side, with the sign transported through the band's flip bit.
//
// Chords are monotone: a step crosses each core at most once, and it does so
// iff its endpoint parities relative to that core differ. Steps with
// in.side == out.side (turn-backs) are not members of the curve family C;
// they appear transiently in search moves and are rejected by validation.

struct Step {
    int rect;
    HalfSide in;
    HalfSide out;

    bool operator==(const Step&) const = default;
};

struct Curve {
    std::vector<Step> steps; // cyclic

    int size() const { return static_cast<int>(steps.size()); }
    const Step& step(int k) const { return steps[static_cast<size_t>(mod(k))]; }
    int mod(int k) const {
        int m = size();
        return ((k % m) + m) % m;
    }

    bool operator==(const Curve&) const = default;
};

// --- word-level checks and counts -----------------------------------------

// Structural validity: nonempty, rect indices in range, and every transition
// consistent with the band transports. Returns human-readable problems.
std::vector<std::string> word_errors(const Configuration& cfg, const Curve& c);
bool word_valid(const Configuration& cfg, const Curve& c);

bool has_turn_backs(const Curve& c);

// Number of steps whose chord crosses the given core.
int crossing_count(const Configuration& cfg, const Curve& c, CoreId core);

// Number of transitions of c through bands of the given core. J(c,a) is the
// number of components of c minus N_a, i.e. the b-band transitions.
int band_transitions(const Configuration& cfg, const Curve& c, CoreId band_core);

struct JCounts {
    int j_a = 0; // components of c \ N_a
    int j_b = 0;
    bool degenerate_a = false; // c never leaves N_a
    bool degenerate_b = false;
};
JCounts j_counts(const Configuration& cfg, const Curve& c);

// Sidedness of the curve: parity of the flips traversed along the word.
Sidedness curve_sidedness(const Configuration& cfg, const Curve& c);

// True iff every crossing rectangle contains a chord of c joining the two
// sides parallel to the core (for core = b: a B<->T chord in every
// rectangle), which is the sufficient and necessary rectangle condition for
// c winding around the core.
bool winds_around(const Configuration& cfg, const Curve& c, CoreId core);

// --- canonical representatives --------------------------------------------

// The standard pushoff word of a core: for A, steps (i, L s_i, R s_i) in
// index order; for B, steps (b_order[j], B t_j, T t_j) in b-order. The start
// sign picks one of the two parallel pushoffs.
Curve core_curve(const Configuration& cfg, CoreId core, Sign start = Sign::Minus);

// Cyclic rotation to the lexicographically smallest word; used for
// deduplication in enumeration.
Curve canonical_rotation(const Curve& c);

// Orientation reversal: steps reversed and in/out swapped.
Curve reversed(const Curve& c);

// --- arcs of c within a core neighbourhood ---------------------------------

// Arcs of c within N_a are the maximal runs of steps between b-band
// transitions (symmetric for N_b). Types follow the four local
// configurations of such an arc:
//   A: crosses the core, no along-core band traversal;
//   B: crosses the core after one along-core band, with the plain rectangle
//      on the side the twist direction comes from;
//   C: same but with the plain rectangle on the side the twist direction
//      flows toward (the pattern removed by a type-I reduction);
//   D: does not cross the core.
// B/C are distinguished relative to a twist direction; `direction` is the
// default right-handed positive twist (+1).
enum class ArcType { A, B, C, D };

struct Arc {
    int first_step = 0;   // word index of the arc's first step
    int step_count = 0;
    int core_crossings = 0; // crossings with the frame core
    int band_passes = 0;    // along-core band traversals inside the arc
    ArcType type = ArcType::D;
    bool unclassified = false; // pattern outside A-D (reported, not guessed)
};

struct ArcDecomposition {
    std::vector<Arc> arcs;
    int n_a = 0, n_b = 0, n_c = 0, n_d = 0;
    int unclassified = 0;
    bool whole_curve = false; // c never leaves the neighbourhood (degenerate)
};

ArcDecomposition classify_arcs(const Configuration& cfg, const Curve& c,
                               CoreId core, int direction = +1);

// --- curve files -----------------------------------------------------------

Curve parse_curve(const std::string& text);
Curve load_curve(const std::string& path);
std::string format_curve(const Curve& c);

} // namespace twistlab
