#pragma once

#include "twistlab/arrangement.hpp"
#include "twistlab/reduce.hpp"

#include <string>
#include <vector>

namespace twistlab {

struct CheckLine {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckLine> checks;
    bool orientable_neighbourhood = true; // finding, not part of the verdict
    bool ok = true;
};

// Semantic validation: two-sidedness of the cores, structural cap entries,
// minimal position (no unpunctured disk cap on a bigon region) and
// genericity of both cores. Orientability of the neighbourhood is reported
// as a finding.
ValidationReport validate_configuration(const Configuration& cfg);

// True iff the core bounds neither a disk with fewer than two punctures nor
// an unpunctured Moebius band, judged from the capped complement regions of
// the core. Throws std::runtime_error for one-sided cores.
bool is_generic_core(const Configuration& cfg, CoreId core);

// Same test for an arbitrary embedded curve; one-sided curves bound nothing
// and are generic by definition.
bool is_generic_curve(const Configuration& cfg, const Curve& c);

struct CurveReport {
    bool word_ok = false;
    bool no_turn_backs = false;
    bool embeddable = false;
    bool generic = false;
    bool in_family = false; // all of the above
    Sidedness sidedness = Sidedness::TwoSided;
    std::vector<std::string> problems;
};

CurveReport validate_in_C(const Configuration& cfg, const Curve& c);

struct IntersectionReport {
    int raw_a = 0, raw_b = 0;
    int min_a = 0, min_b = 0;
    int j_a = 0, j_b = 0;
    bool j_a_degenerate = false, j_b_degenerate = false;
    int n_A = 0, n_B = 0, n_C = 0, n_D = 0; // arcs of c within N_a
    int unclassified_arcs = 0;
    bool winds_a = false, winds_b = false;
    bool x_a = false, x_b = false;
    bool xt_a = false, xt_b = false;
};

// Full curve report: raw and minimal crossing numbers, J counts, arc types
// against N_a, winding flags, and membership in X_a/X_b and their J-based
// variants.
IntersectionReport curve_info(const Configuration& cfg, const Curve& c);

std::string format_intersection_report(const IntersectionReport& r);

} // namespace twistlab
