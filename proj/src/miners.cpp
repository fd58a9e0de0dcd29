#include "twistlab/miners.hpp"

#include "twistlab/validate.hpp"

#include <algorithm>

namespace twistlab {

namespace {

// All capped variants of a bare configuration with caps drawn from
// {open, disk} that pass validation, in deterministic order.
std::vector<Configuration> capped_variants(const Configuration& bare) {
    std::vector<Configuration> out;
    auto regions = boundary_regions(bare);
    const int r = static_cast<int>(regions.size());
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        Configuration cfg = bare;
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i))
                cfg.caps[regions[static_cast<size_t>(i)].id] = Cap{CapKind::Disk, 0};
        if (validate_configuration(cfg).ok)
            out.push_back(cfg);
    }
    return out;
}

std::vector<Configuration> bare_configurations(int n, bool orientable_only) {
    std::vector<Configuration> out;
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        perm[static_cast<size_t>(i)] = i;
    std::sort(perm.begin(), perm.end());
    do {
        for (std::uint32_t am = 0; am < (1u << n); ++am) {
            if (__builtin_popcount(am) % 2)
                continue;
            for (std::uint32_t bm = 0; bm < (1u << n); ++bm) {
                if (__builtin_popcount(bm) % 2)
                    continue;
                Configuration cfg;
                cfg.n = n;
                cfg.b_order = perm;
                for (int i = 0; i < n; ++i) {
                    cfg.a_flips.push_back((am >> i) & 1);
                    cfg.b_flips.push_back((bm >> i) & 1);
                }
                if (orientable_only && !is_orientable_neighbourhood(cfg))
                    continue;
                out.push_back(cfg);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Candidate curves: enumerated family members with the exact crossing
// counts, then checked for twist preservation.
std::optional<MinedExample> scan(const Configuration& cfg, int want_a, int want_b,
                                 const MineBounds& bounds) {
    SampleOptions opt;
    opt.max_steps = bounds.max_steps;
    opt.budget = bounds.node_budget;
    opt.rng_seed = 0; // deterministic order, no shuffle
    opt.require_reduced = true;
    for (const auto& c : sample_curves(cfg, opt)) {
        auto info = curve_info(cfg, c);
        if (info.min_a != want_a || info.min_b != want_b)
            continue;
        if (info.raw_a != info.min_a || info.raw_b != info.min_b)
            continue;
        try {
            auto tr = twist_minimal(cfg, c, CoreId::A, 1);
            if (tr.report.min_a == want_a && tr.report.min_b == want_b) {
                MinedExample ex;
                ex.cfg = cfg;
                ex.c = c;
                ex.info_c = info;
                ex.info_tc = tr.report;
                return ex;
            }
        } catch (const std::exception&) {
            continue;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<MinedExample> mine_ex31(int m, const MineBounds& bounds) {
    for (const auto& bare : bare_configurations(2, bounds.orientable_only))
        for (const auto& cfg : capped_variants(bare))
            if (auto hit = scan(cfg, 2 * m, m, bounds))
                return hit;
    return std::nullopt;
}

std::optional<MinedExample> mine_ex32(int m, const MineBounds& bounds) {
    for (const auto& bare : bare_configurations(2 * m, bounds.orientable_only))
        for (const auto& cfg : capped_variants(bare))
            if (auto hit = scan(cfg, 2, 1, bounds))
                return hit;
    return std::nullopt;
}

std::optional<Configuration> mine_mob(int m) {
    for (const auto& bare : bare_configurations(2 * m, false)) {
        if (!core_is_two_sided(bare, CoreId::A) ||
            !core_is_two_sided(bare, CoreId::B))
            continue;
        auto regions = boundary_regions(bare);
        const int r = static_cast<int>(regions.size());
        // One region capped mobius, the rest open or disk: the Moebius side
        // of a needs all of its boundary circles closed off.
        int total = 1;
        for (int i = 0; i < r; ++i)
            total *= 2;
        for (int mob = 0; mob < r; ++mob)
            for (int mask = 0; mask < total; ++mask) {
                if (mask & (1 << mob))
                    continue;
                Configuration cfg = bare;
                cfg.caps[regions[static_cast<size_t>(mob)].id] =
                    Cap{CapKind::Mobius, 0};
                for (int i = 0; i < r; ++i)
                    if (mask & (1 << i))
                        cfg.caps[regions[static_cast<size_t>(i)].id] =
                            Cap{CapKind::Disk, 0};
                bool a_generic = is_generic_core(cfg, CoreId::A);
                bool b_generic = is_generic_core(cfg, CoreId::B);
                // Minimality must still hold (no capped bigon).
                bool bigon_free = true;
                for (const auto& rg : boundary_regions(cfg))
                    if (rg.a_arcs == 1 && rg.b_arcs == 1 &&
                        rg.cap.kind == CapKind::Disk)
                        bigon_free = false;
                if (!a_generic && b_generic && bigon_free)
                    return cfg;
            }
    }
    return std::nullopt;
}

Configuration fixture_or2() {
    Configuration cfg;
    cfg.n = 2;
    cfg.b_order = {0, 1};
    cfg.a_flips = {0, 0};
    cfg.b_flips = {0, 0};
    return cfg;
}

Configuration fixture_no2() {
    Configuration cfg;
    cfg.n = 2;
    cfg.b_order = {0, 1};
    cfg.a_flips = {1, 1};
    cfg.b_flips = {0, 0};
    return cfg;
}

} // namespace twistlab
