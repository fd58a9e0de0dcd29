#pragma once

#include "twistlab/config.hpp"

#include <vector>

namespace twistlab {

// Segments of one circle with respect to the other: a segment of b is an arc
// of b meeting a exactly in its endpoints, i.e. exactly the core of one
// b-band. Oriented segments carry a direction along their host circle.
//
// Oriented segment ids: band * 2 for the forward direction (along the host's
// traversal), band * 2 + 1 for the reverse.

struct OrientedSegment {
    CoreId host = CoreId::B;
    int band = 0;
    bool forward = true;
    int initial_rect = 0;  // crossing the segment departs from
    int terminal_rect = 0;
    int initial_side = 0;  // boundary circle of the other core's neighbourhood
    int terminal_side = 0;
    Sidedness sidedness = Sidedness::TwoSided;

    int id() const { return band * 2 + (forward ? 0 : 1); }
};

int reversed_segment_id(int id);

std::vector<OrientedSegment> segments_of(const Configuration& cfg, CoreId host);

Sidedness segment_sidedness(const Configuration& cfg, CoreId host, int band);

// Oriented adjacency: both segments one-sided and some unpunctured
// disk-capped region realizes the square whose boundary consists of the two
// host band edges and two arcs of the other core, with p traversed forward
// and q backward around the disk.
bool adjacent(const Configuration& cfg, const OrientedSegment& p,
              const OrientedSegment& q);

struct Joinability {
    CoreId host = CoreId::B;
    std::vector<int> class_of;             // by oriented segment id
    std::vector<std::vector<int>> classes; // members per class, sorted

    bool joinable(int seg1, int seg2) const {
        return seg1 != seg2 && class_of[static_cast<size_t>(seg1)] ==
                                   class_of[static_cast<size_t>(seg2)];
    }
};

// Connected components of the adjacency graph on oriented segments.
Joinability joinability_classes(const Configuration& cfg, CoreId host);

struct DoubleSegment {
    int point = 0; // crossing rectangle index
    int seg1 = 0;  // oriented segment ids with this initial point
    int seg2 = 0;
};

// Exactly n double segments, indexed by their initial crossing.
std::vector<DoubleSegment> double_segments(const Configuration& cfg, CoreId host);

// Double segments Q != P such that no member of Q is joinable to a member
// of P.
std::vector<int> non_joinable_to(const Configuration& cfg, CoreId host, int point);

} // namespace twistlab
