#pragma once

#include "twistlab/freeness.hpp"

#include <optional>

namespace twistlab {

// Searches for the counterexample families: configurations and curves on
// which a twist fails to change the intersection pattern the way it must on
// orientable surfaces.

struct MinedExample {
    Configuration cfg;
    Curve c;
    IntersectionReport info_c;
    IntersectionReport info_tc; // of t_a(c) reduced
};

struct MineBounds {
    int max_steps = 10;
    int node_budget = 2000000;
    bool orientable_only = false; // for the control sweep
};

// Type of Example 3.1: I(a,b) = 2, I(c,a) = 2m > I(c,b) = m, both preserved
// exactly by t_a. Deterministic enumeration; first hit wins.
std::optional<MinedExample> mine_ex31(int m, const MineBounds& bounds);

// Type of Example 3.2: I(a,b) = 2m, I(c,a) = 2 > I(c,b) = 1 preserved by
// t_a.
std::optional<MinedExample> mine_ex32(int m, const MineBounds& bounds);

// Example 3.3: a configuration where core a bounds an unpunctured Moebius
// piece (one side capped mobius), with |a∩b| = 2m computable. Validation of
// such a configuration must flag a as non-generic.
std::optional<Configuration> mine_mob(int m);

// The shipped fixtures are the first hits of the miners at the paper's
// published sizes.
Configuration fixture_or2();
Configuration fixture_no2();

} // namespace twistlab
