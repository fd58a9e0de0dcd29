#include "twistlab/validate.hpp"
#include <set>

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace twistlab {

namespace {

// A region "bounds" the curve when its single wall rim covers each wall edge
// of the drawing exactly once (so the rim is the curve itself, not a double
// cover).
bool region_bounds_curve(const Arrangement& arr, const Arrangement::RegionInfo& reg) {
    const Arrangement::Rim* wall = nullptr;
    for (const auto& rim : reg.rims) {
        if (rim.all_free)
            continue;
        if (wall)
            return false;
        wall = &rim;
    }
    if (!wall)
        return false;
    int total_wall_edges = 0;
    for (const auto& e : arr.edges)
        if (e.kind == Arrangement::EdgeKind::Strand ||
            e.kind == Arrangement::EdgeKind::ChordSeg)
            ++total_wall_edges;
    if (static_cast<int>(wall->darts.size()) != total_wall_edges)
        return false;
    std::set<int> seen;
    for (const auto& d : wall->darts)
        if (!seen.insert(d.edge).second)
            return false;
    return true;
}

bool bounds_bad_piece(const Arrangement& arr) {
    for (const auto& reg : arr.regions) {
        if (!region_bounds_curve(arr, reg))
            continue;
        if (reg.is_disk(1))
            return true; // disk with fewer than two punctures
        if (reg.is_unpunctured_mobius())
            return true;
    }
    return false;
}

} // namespace

bool is_generic_core(const Configuration& cfg, CoreId core) {
    if (!core_is_two_sided(cfg, core))
        throw std::runtime_error("core is one-sided; configuration invalid here");
    auto arr = build_arrangement(
        cfg, {{core_curve(cfg, core),
               core == CoreId::A ? PlacementKind::CoreA : PlacementKind::CoreB}});
    return !bounds_bad_piece(arr);
}

bool is_generic_curve(const Configuration& cfg, const Curve& c) {
    if (curve_sidedness(cfg, c) == Sidedness::OneSided)
        return true; // boundaries of subsurfaces are two-sided
    auto arr = build_arrangement(cfg, {{c, PlacementKind::Lanes}});
    return !bounds_bad_piece(arr);
}

ValidationReport validate_configuration(const Configuration& cfg) {
    ValidationReport rep;
    auto add = [&](std::string name, bool pass, std::string detail = {}) {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
        rep.ok = rep.ok && pass;
    };

    add("n >= 2", cfg.n >= 2,
        cfg.n < 2 ? "the theory needs at least two intersection points" : "");

    bool a2 = core_is_two_sided(cfg, CoreId::A);
    bool b2 = core_is_two_sided(cfg, CoreId::B);
    add("a two-sided (even flip parity)", a2);
    add("b two-sided (even flip parity)", b2);

    rep.orientable_neighbourhood = is_orientable_neighbourhood(cfg);
    rep.checks.push_back({"orientable neighbourhood", true,
                          rep.orientable_neighbourhood ? "true" : "false"});

    auto regions = boundary_regions(cfg);
    bool caps_ok = true;
    for (const auto& [rid, cap] : cfg.caps) {
        (void)cap;
        if (rid < 0 || rid >= static_cast<int>(regions.size()))
            caps_ok = false;
    }
    add("caps reference existing regions", caps_ok);

    // Minimal position: an unpunctured disk cap on a two-corner region is a
    // bigon of a and b.
    bool bigon_free = true;
    for (const auto& r : regions)
        if (r.a_arcs == 1 && r.b_arcs == 1 && r.cap.kind == CapKind::Disk)
            bigon_free = false;
    add("a, b in minimal position (no capped bigon)", bigon_free);

    if (a2 && b2 && caps_ok) {
        add("a generic", is_generic_core(cfg, CoreId::A));
        add("b generic", is_generic_core(cfg, CoreId::B));
    } else {
        add("a generic", false, "not checkable");
        add("b generic", false, "not checkable");
    }
    return rep;
}

CurveReport validate_in_C(const Configuration& cfg, const Curve& c) {
    CurveReport rep;
    rep.problems = word_errors(cfg, c);
    rep.word_ok = rep.problems.empty();
    if (!rep.word_ok)
        return rep;
    rep.no_turn_backs = !has_turn_backs(c);
    if (!rep.no_turn_backs) {
        rep.problems.push_back("word has turn-back steps (family condition 3)");
        return rep;
    }
    rep.sidedness = curve_sidedness(cfg, c);
    try {
        place_curves(cfg, {{c, PlacementKind::Lanes}});
        rep.embeddable = true;
    } catch (const PlacementError& e) {
        rep.problems.push_back(e.what());
        return rep;
    }
    rep.generic = is_generic_curve(cfg, c);
    if (!rep.generic)
        rep.problems.push_back("curve bounds a low-complexity piece (not generic)");
    rep.in_family = rep.word_ok && rep.no_turn_backs && rep.embeddable && rep.generic;
    return rep;
}

IntersectionReport curve_info(const Configuration& cfg, const Curve& c) {
    IntersectionReport r;
    r.raw_a = crossing_count(cfg, c, CoreId::A);
    r.raw_b = crossing_count(cfg, c, CoreId::B);
    r.min_a = crossing_count(cfg, reduce_to_minimal(cfg, c, CoreId::A).curve, CoreId::A);
    r.min_b = crossing_count(cfg, reduce_to_minimal(cfg, c, CoreId::B).curve, CoreId::B);
    auto j = j_counts(cfg, c);
    r.j_a = j.j_a;
    r.j_b = j.j_b;
    r.j_a_degenerate = j.degenerate_a;
    r.j_b_degenerate = j.degenerate_b;
    auto dec = classify_arcs(cfg, c, CoreId::A);
    r.n_A = dec.n_a;
    r.n_B = dec.n_b;
    r.n_C = dec.n_c;
    r.n_D = dec.n_d;
    r.unclassified_arcs = dec.unclassified;
    r.winds_a = winds_around(cfg, c, CoreId::A);
    r.winds_b = winds_around(cfg, c, CoreId::B);
    bool minimal = r.raw_a == r.min_a && r.raw_b == r.min_b;
    r.x_a = minimal && r.min_a < r.min_b && r.winds_a;
    r.x_b = minimal && r.min_b < r.min_a && r.winds_b;
    r.xt_a = r.j_a < r.j_b && r.winds_a;
    r.xt_b = r.j_b < r.j_a && r.winds_b;
    return r;
}

std::string format_intersection_report(const IntersectionReport& r) {
    std::ostringstream out;
    auto flag = [](bool v) { return v ? 1 : 0; };
    out << "raw_a=" << r.raw_a << " raw_b=" << r.raw_b << " min_a=" << r.min_a
        << " min_b=" << r.min_b << " J_a=" << r.j_a << " J_b=" << r.j_b
        << " nA=" << r.n_A << " nB=" << r.n_B << " nC=" << r.n_C
        << " nD=" << r.n_D << " winds_a=" << flag(r.winds_a)
        << " winds_b=" << flag(r.winds_b) << " X_a=" << flag(r.x_a)
        << " X_b=" << flag(r.x_b) << " Xt_a=" << flag(r.xt_a)
        << " Xt_b=" << flag(r.xt_b);
    return out.str();
}

} // namespace twistlab
