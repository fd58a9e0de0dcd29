#pragma once

#include "twistlab/config.hpp"
#include "twistlab/curve.hpp"
#include "twistlab/placement.hpp"

#include <optional>
#include <vector>

namespace twistlab {

// The planar-glued arrangement of a drawing: the rectangle complex cut along
// the drawn curves. Faces are the elementary pieces (rectangle cells and
// band strips), edges carry provenance, and complement regions are unions of
// faces glued across side segments. Regions know their Euler characteristic,
// orientability, attached caps and rim circles, which is enough to classify
// them as disks, punctured disks or Moebius pieces and to locate bigons.

struct Arrangement {
    enum class EdgeKind { Gap, Strand, Free, ChordSeg };

    struct Edge {
        EdgeKind kind;
        int a = -1, b = -1; // node ids
        int curve = -1;     // Strand / ChordSeg
        int trans = -1;     // Strand
        int step = -1;      // ChordSeg
        int seg = -1;       // ChordSeg: segment index from the in endpoint
        FreeEdge free{};    // Free
    };

    struct Dart {
        int edge;
        bool fwd;
        bool operator==(const Dart&) const = default;
    };

    struct Face {
        std::vector<Dart> cycle;
        bool in_band = false;
        int rect = -1; // or band key for strips
    };

    struct Crossing {
        int node;
        int curve1, step1, seg1; // crossing sits after segment seg1 of chord 1
        int curve2, step2, seg2;
    };

    struct Rim {
        std::vector<Dart> darts;    // boundary traversal of the cut region
        std::vector<int> faces;     // face carrying each dart
        bool all_free = false;      // a boundary circle of the complex
        int cfg_region = -1;        // for all_free rims: the Region id
    };

    struct RegionInfo {
        int id = 0;
        std::vector<int> faces;
        int chi_cells = 0;      // V-E+F of the closed subcomplex
        bool cells_orientable = true;
        int disk_caps = 0;
        int punctures = 0;
        bool mobius_cap = false;
        bool other_cap = false;
        bool open_boundary = false;
        std::vector<Rim> rims;

        int chi_effective() const { return chi_cells + disk_caps; }
        bool orientable() const { return cells_orientable && !mobius_cap; }
        int wall_rims() const {
            int k = 0;
            for (const auto& r : rims)
                if (!r.all_free)
                    ++k;
            return k;
        }
        // A genuine disk after capping: what a bigon or a bounding test needs.
        bool is_disk(int max_punctures = 0) const {
            return chi_effective() == 1 && orientable() && !other_cap &&
                   !open_boundary && punctures <= max_punctures;
        }
        bool is_unpunctured_mobius() const {
            return chi_effective() == 0 && !orientable() && !other_cap &&
                   !open_boundary && punctures == 0 && wall_rims() == 1;
        }
    };

    Configuration cfg;
    std::vector<PlacedCurve> curves;
    Placement placement;

    int corner_nodes = 0;
    int instance_nodes = 0;
    std::vector<Edge> edges;
    std::vector<Face> faces;
    std::vector<Crossing> crossings;
    std::vector<int> face_region;
    std::vector<RegionInfo> regions;

    int node_count = 0;

    // Lookup helpers.
    int crossing_count_between(int curve1, int curve2) const;
    const RegionInfo& region_of_face(int face) const {
        return regions[static_cast<size_t>(face_region[static_cast<size_t>(face)])];
    }
};

// Builds the arrangement; throws PlacementError if the curves cannot be
// placed.
Arrangement build_arrangement(const Configuration& cfg,
                              std::vector<PlacedCurve> curves);

// Endpoints of a free edge as corners (exposed for the arrangement and the
// tests; also used by boundary_regions internally).
std::pair<Corner, Corner> free_edge_corners(const Configuration& cfg,
                                            const FreeEdge& e);

// A bigon between the two drawn curves: a disk region whose rim is one arc
// of each. Reported with enough provenance to drive the removal surgery.
struct BigonFind {
    int region = -1;
    // Rim decomposed into the two maximal runs (darts in rim order).
    int curve_x = 0, curve_y = 1;
    std::vector<Arrangement::Dart> run_x, run_y;
    std::vector<int> run_x_faces, run_y_faces;
};

// All bigons between curves[x] and curves[y] in the drawing, ordered by
// region id. Regions whose caps carry punctures, Moebius pieces or open
// boundary are never bigons.
std::vector<BigonFind> find_bigons(const Arrangement& arr, int x, int y);

} // namespace twistlab
