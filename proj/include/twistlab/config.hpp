#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twistlab {

// A configuration describes the rectangle complex of a regular neighbourhood
// of two transverse two-sided circles a and b on a surface.
//
// There are n crossing rectangles, visited by a in index order 0,1,...,n-1
// and by b in the order given by b_order. Inside rectangle r the a-core runs
// from side L to side R and the b-core from side B to side T. Each side is
// split by the core crossing it into two signed halves:
//   L/R sides: sign '+' is above the a-core, '-' below;
//   B/T sides: sign '+' is right of the b-core, '-' left.
//
// a-band i joins side R of rectangle i to side L of rectangle i+1 (mod n);
// b-band j joins side T of rectangle b_order[j] to side B of rectangle
// b_order[j+1]. A band with flip bit 1 is glued with a transverse reversal:
// the sign and the linear order of strands across the band are inverted.

enum class Side : std::uint8_t { L = 0, R = 1, B = 2, T = 3 };
enum class Sign : std::uint8_t { Minus = 0, Plus = 1 };
enum class CoreId : std::uint8_t { A = 0, B = 1 };

const char* side_name(Side s);
char sign_char(Sign s);
CoreId other_core(CoreId c);

struct HalfSide {
    Side side;
    Sign sign;

    bool operator==(const HalfSide&) const = default;
};

// Parse tokens of the curve file format: Lp, Lm, Rp, Rm, Bp, Bm, Tp, Tm.
std::optional<HalfSide> parse_half_side(const std::string& token);
std::string half_side_token(HalfSide h);

// Whether a chord with these two endpoints crosses the a-core (resp. b-core)
// of its rectangle. Chords are monotone: they cross each core at most once.
bool chord_crosses_a(HalfSide in, HalfSide out);
bool chord_crosses_b(HalfSide in, HalfSide out);
bool chord_crosses(CoreId core, HalfSide in, HalfSide out);

enum class CapKind : std::uint8_t { Open, Disk, PuncturedDisk, Mobius, Other };

struct Cap {
    CapKind kind = CapKind::Open;
    int punctures = 0; // only for PuncturedDisk (>= 1)

    bool operator==(const Cap&) const = default;
};

std::string cap_to_string(const Cap& cap);

// One end of a band: the side of a rectangle it is glued to.
struct BandEnd {
    int rect;
    Side side;

    bool operator==(const BandEnd&) const = default;
};

struct Band {
    CoreId core;  // A for a-bands, B for b-bands
    int index;    // band index along its core
    BandEnd from; // a-band: (i, R); b-band: (b_order[j], T)
    BandEnd to;   // a-band: (i+1, L); b-band: (b_order[j+1], B)
    int flip;     // 1 = transverse reversal
};

// Rectangle corners, used as the vertices of the boundary walk. Corner of
// rectangle r on the (aside, bside) pair, aside in {L,R}, bside in {B,T}.
struct Corner {
    int rect;
    Side aside;
    Side bside;

    bool operator==(const Corner&) const = default;
};

// A free (boundary) edge of a band. Each band has two, named by the sign of
// the half-sides adjacent at the `from` end of the band.
struct FreeEdge {
    CoreId core;
    int band;
    Sign gside; // at the `from` end: side of the band core the edge runs along

    bool operator==(const FreeEdge&) const = default;
};

// Item of a region boundary walk: a free band edge together with the
// direction it is traversed in (from->to end of the band or reverse).
struct WalkItem {
    FreeEdge edge;
    bool forward; // true: traversed from the band's `from` end to its `to` end

    bool operator==(const WalkItem&) const = default;
};

struct Region {
    int id = 0;
    std::vector<WalkItem> walk; // cyclic, alternating a-band and b-band edges
    int a_arcs = 0;             // edges along ∂N_a (a-band free edges)
    int b_arcs = 0;
    Cap cap;
};

struct Configuration {
    int n = 0;
    std::vector<int> b_order; // permutation of 0..n-1
    std::vector<int> a_flips; // length n, bits
    std::vector<int> b_flips; // length n, bits
    std::map<int, Cap> caps;  // region id -> cap; absent means Open

    // --- derived topology ---

    int pos_in_b(int rect) const; // j with b_order[j] == rect
    Band band(CoreId core, int index) const;
    int band_count() const { return 2 * n; }

    // The unique band glued at (rect, side), and whether (rect, side) is its
    // `from` end.
    struct Attachment {
        CoreId core;
        int band;
        bool at_from;
    };
    Attachment attachment(int rect, Side side) const;

    // Transport of a half-side sign through the band at (rect, side):
    // returns the matching (rect', side', sign') on the far side.
    struct Transport {
        int rect;
        Side side;
        Sign sign;
    };
    Transport transport(int rect, Side side, Sign sign) const;

    Cap cap_of(int region_id) const;

    bool operator==(const Configuration& o) const {
        return n == o.n && b_order == o.b_order && a_flips == o.a_flips &&
               b_flips == o.b_flips && caps == o.caps;
    }
};

// --- parsing -------------------------------------------------------------

struct ParseError {
    int line = 0;
    std::string message;
};

// Parses the configuration file format. Throws std::runtime_error with a
// line-tagged message on malformed input. Does not run semantic validation
// beyond structural requirements (permutation, lengths, parity is NOT
// checked here).
Configuration parse_configuration(const std::string& text);
Configuration load_configuration(const std::string& path);
std::string format_configuration(const Configuration& cfg);

// Endpoints of a free band edge: the corner at the band's `from` end first.
std::pair<Corner, Corner> free_edge_corners(const Configuration& cfg,
                                            const FreeEdge& e);
int corner_index(const Corner& c);

// --- boundary regions ----------------------------------------------------

// Deterministic enumeration of the boundary regions of the complex.
// Region ids are assigned by walk order; walks start at the lexicographically
// smallest unused corner and proceed by the corner-turning rule (at each
// corner the walk leaves through the unique other free edge).
// Cap assignments from cfg.caps are attached to the result.
std::vector<Region> boundary_regions(const Configuration& cfg);

// --- predicates ----------------------------------------------------------

// True iff every cycle of the band graph has even total flip weight.
bool is_orientable_neighbourhood(const Configuration& cfg);

// Flip parity along a core circle (sum of that core's band flips).
bool core_is_two_sided(const Configuration& cfg, CoreId core);

enum class Sidedness { OneSided, TwoSided };

// A closed walk in the band graph, given as a sequence of (core, band index,
// +/- direction); sidedness is the parity of the traversed flips.
struct BandStep {
    CoreId core;
    int band;
};
Sidedness closed_walk_sidedness(const Configuration& cfg,
                                const std::vector<BandStep>& walk);

// Euler characteristic of the rectangle complex (always -n; exposed for the
// consistency test against explicit cell counts).
int euler_characteristic(const Configuration& cfg);

} // namespace twistlab
