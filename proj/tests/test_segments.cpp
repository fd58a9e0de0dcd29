#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/oracles.hpp"
#include "twistlab/segments.hpp"
#include "twistlab/validate.hpp"

using namespace twistlab;

namespace {

Configuration make_cfg(int n, std::vector<int> border, std::vector<int> af,
                       std::vector<int> bf) {
    Configuration cfg;
    cfg.n = n;
    cfg.b_order = std::move(border);
    cfg.a_flips = std::move(af);
    cfg.b_flips = std::move(bf);
    return cfg;
}

Configuration cfg_or2() { return make_cfg(2, {0, 1}, {0, 0}, {0, 0}); }
Configuration cfg_no2() { return make_cfg(2, {0, 1}, {1, 1}, {0, 0}); }

// Joinability by repeated squaring of the adjacency matrix (closure oracle).
std::vector<std::vector<bool>> closure_by_squaring(const Configuration& cfg,
                                                   CoreId host) {
    auto segs = segments_of(cfg, host);
    const size_t m = segs.size();
    std::vector<std::vector<bool>> r(m, std::vector<bool>(m, false));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (i != j && (adjacent(cfg, segs[i], segs[j]) ||
                           adjacent(cfg, segs[j], segs[i])))
                r[i][j] = true;
    for (size_t i = 0; i < m; ++i)
        r[i][i] = true;
    for (size_t it = 0; it < m; ++it) {
        auto next = r;
        for (size_t i = 0; i < m; ++i)
            for (size_t k = 0; k < m; ++k)
                if (r[i][k])
                    for (size_t j = 0; j < m; ++j)
                        if (r[k][j])
                            next[i][j] = true;
        r = std::move(next);
    }
    return r;
}

} // namespace

TEST_CASE("segments enumerate with both orientations and side labels") {
    for (const auto& cfg : {cfg_or2(), cfg_no2(),
                            make_cfg(3, {0, 2, 1}, {0, 0, 0}, {1, 1, 0})}) {
        for (CoreId host : {CoreId::A, CoreId::B}) {
            auto segs = segments_of(cfg, host);
            CHECK(static_cast<int>(segs.size()) == 2 * cfg.n);
            for (const auto& s : segs) {
                // Reversal swaps endpoints and side labels.
                const auto& r = segs[static_cast<size_t>(reversed_segment_id(s.id()))];
                CHECK(r.initial_rect == s.terminal_rect);
                CHECK(r.initial_side == s.terminal_side);
                CHECK(r.sidedness == s.sidedness);
            }
        }
    }
}

TEST_CASE("segment sidedness is the flip parity of band plus connecting arc") {
    auto cfg = cfg_no2();
    // b-band 0 with the a-arc through a-band 0: parity 0 + 1 = odd.
    CHECK(segment_sidedness(cfg, CoreId::B, 0) == Sidedness::OneSided);
    CHECK(segment_sidedness(cfg, CoreId::B, 1) == Sidedness::OneSided);
    CHECK(segment_sidedness(cfg_or2(), CoreId::B, 0) == Sidedness::TwoSided);
}

TEST_CASE("no caps means no adjacency and all singleton classes") {
    for (const auto& cfg : {cfg_or2(), cfg_no2()}) {
        auto segs = segments_of(cfg, CoreId::B);
        for (const auto& p : segs)
            for (const auto& q : segs)
                if (p.id() != q.id())
                    CHECK_FALSE(adjacent(cfg, p, q));
        auto join = joinability_classes(cfg, CoreId::B);
        for (const auto& cls : join.classes)
            CHECK(cls.size() == 1);
        // All double segments are mutually non-joinable.
        for (int p = 0; p < cfg.n; ++p)
            CHECK(static_cast<int>(non_joinable_to(cfg, CoreId::B, p).size()) ==
                  cfg.n - 1);
    }
}

TEST_CASE("two-sided segments are never adjacent even across a capped disk") {
    auto cfg = cfg_or2();
    // Cap every region with a disk: adjacency still requires one-sidedness.
    auto regions = boundary_regions(cfg);
    for (const auto& r : regions)
        cfg.caps[r.id] = Cap{CapKind::Disk, 0};
    auto segs = segments_of(cfg, CoreId::B);
    for (const auto& p : segs)
        for (const auto& q : segs)
            if (p.id() != q.id())
                CHECK_FALSE(adjacent(cfg, p, q));
}

TEST_CASE("joinability classes agree with the matrix-closure oracle") {
    // Sweep small configurations with a single disk cap in every position.
    for (int n = 2; n <= 3; ++n) {
        for (auto cfg : oracle::enumerate_bare_configurations(n)) {
            auto regions = boundary_regions(cfg);
            for (const auto& reg : regions) {
                auto capped = cfg;
                capped.caps[reg.id] = Cap{CapKind::Disk, 0};
                for (CoreId host : {CoreId::A, CoreId::B}) {
                    auto join = joinability_classes(capped, host);
                    auto closure = closure_by_squaring(capped, host);
                    auto segs = segments_of(capped, host);
                    for (size_t i = 0; i < segs.size(); ++i)
                        for (size_t j = 0; j < segs.size(); ++j) {
                            bool impl = join.joinable(static_cast<int>(i),
                                                      static_cast<int>(j));
                            bool want = i != j && closure[i][j];
                            CHECK(impl == want);
                        }
                }
            }
        }
    }
}

TEST_CASE("props 4.2 and 4.3 hold on capped small configurations") {
    // Every double segment has a non-joinable partner (n >= 2), two of them
    // when n >= 3. Checked over all bare configurations at n = 2, 3 with all
    // single-disk cappings that pass validation.
    for (int n = 2; n <= 3; ++n) {
        for (auto cfg : oracle::enumerate_bare_configurations(n)) {
            auto regions = boundary_regions(cfg);
            std::vector<std::map<int, Cap>> cappings;
            cappings.push_back({});
            for (const auto& reg : regions)
                cappings.push_back({{reg.id, Cap{CapKind::Disk, 0}}});
            for (const auto& caps : cappings) {
                auto capped = cfg;
                capped.caps = caps;
                if (!validate_configuration(capped).ok)
                    continue;
                for (int p = 0; p < n; ++p) {
                    auto nj = non_joinable_to(capped, CoreId::B, p);
                    CAPTURE(format_configuration(capped));
                    CHECK(static_cast<int>(nj.size()) >= (n >= 3 ? 2 : 1));
                }
            }
        }
    }
}

TEST_CASE("prop 4.1(1): joinable segments start on the same side") {
    for (int n = 2; n <= 3; ++n) {
        for (auto cfg : oracle::enumerate_bare_configurations(n)) {
            auto regions = boundary_regions(cfg);
            for (const auto& reg : regions) {
                auto capped = cfg;
                capped.caps[reg.id] = Cap{CapKind::Disk, 0};
                if (!validate_configuration(capped).ok)
                    continue;
                auto segs = segments_of(capped, CoreId::B);
                auto join = joinability_classes(capped, CoreId::B);
                for (const auto& cls : join.classes) {
                    for (size_t x = 0; x < cls.size(); ++x)
                        for (size_t y = x + 1; y < cls.size(); ++y) {
                            const auto& p = segs[static_cast<size_t>(cls[x])];
                            const auto& q = segs[static_cast<size_t>(cls[y])];
                            CAPTURE(format_configuration(capped));
                            CHECK(p.initial_side == q.initial_side);
                        }
                }
            }
        }
    }
}

TEST_CASE("prop 4.1(2): segments starting at a terminal point are not joinable") {
    for (int n = 2; n <= 3; ++n) {
        for (auto cfg : oracle::enumerate_bare_configurations(n)) {
            auto regions = boundary_regions(cfg);
            for (const auto& reg : regions) {
                auto capped = cfg;
                capped.caps[reg.id] = Cap{CapKind::Disk, 0};
                if (!validate_configuration(capped).ok)
                    continue;
                auto segs = segments_of(capped, CoreId::B);
                auto join = joinability_classes(capped, CoreId::B);
                for (const auto& p : segs)
                    for (const auto& q : segs)
                        if (q.initial_rect == p.terminal_rect)
                            CHECK_FALSE(join.joinable(p.id(), q.id()));
            }
        }
    }
}
