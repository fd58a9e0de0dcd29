#include "twistlab/placement.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace twistlab {

namespace {

int bucket_for(PlacementKind kind, Sign sign) {
    switch (kind) {
    case PlacementKind::Lanes: return sign == Sign::Plus ? PLUS : MINUS;
    case PlacementKind::CoreA:
    case PlacementKind::CoreB: return MID;
    case PlacementKind::BoundaryA:
    case PlacementKind::BoundaryB: return sign == Sign::Plus ? OUTHI : OUTLO;
    }
    return MINUS;
}

// Slot circle: 20 positions counterclockwise around a rectangle, five
// buckets per side. ccw runs axis-up along B and R, axis-down along T and L.
int slot_of(Side side, int bucket) {
    switch (side) {
    case Side::B: return bucket;
    case Side::R: return 5 + bucket;
    case Side::T: return 10 + (4 - bucket);
    case Side::L: return 15 + (4 - bucket);
    }
    return 0;
}

int ccw_dir(Side side) {
    return (side == Side::B || side == Side::R) ? +1 : -1;
}

struct Walker {
    const Configuration& cfg;
    const std::vector<PlacedCurve>& curves;
    const std::vector<Instance>& instances;

    const Step& step_of(int curve, int k) const {
        return curves[static_cast<size_t>(curve)].curve.step(k);
    }

    // The chord the walk enters when leaving instance `i` into its rectangle:
    // returns (exit half-side, instance at the chord's other end).
    std::pair<HalfSide, int> into_rect(int i) const {
        const Instance& e = instances[static_cast<size_t>(i)];
        const auto& cur = curves[static_cast<size_t>(e.curve)].curve;
        int m = cur.size();
        if (e.end == 1) {
            // head of transition e.trans = in-instance of step trans+1
            int k = cur.mod(e.trans + 1);
            return {cur.step(k).out, instance_id(e.curve, k, 0, m)};
        }
        // tail of transition e.trans = out-instance of step trans
        int k = e.trans;
        return {cur.step(k).in, instance_id(e.curve, cur.mod(k - 1), 1, m)};
    }

    int instance_id(int curve, int trans, int end, int m) const {
        // Instances are laid out per curve: 2 per transition.
        int base = 0;
        for (int c = 0; c < curve; ++c)
            base += 2 * curves[static_cast<size_t>(c)].curve.size();
        (void)m;
        return base + 2 * trans + end;
    }

    int partner(int i) const {
        const Instance& e = instances[static_cast<size_t>(i)];
        int m = curves[static_cast<size_t>(e.curve)].curve.size();
        return instance_id(e.curve, e.trans, 1 - e.end, m);
    }

    int band_flip_at(int rect, Side side) const {
        auto at = cfg.attachment(rect, side);
        return cfg.band(at.core, at.band).flip;
    }
};

// Result of the divergence walk: +1 means the first instance lies at a
// strictly larger axis position, -1 smaller, 0 tie (parallel forever).
//
// The pair's relative axis order transforms along the walk: crossing a
// flipped band reverses it, and so does following parallel chords around
// the BR or TL corner of a rectangle (nested chords swap their axis order
// there); the transport multiplier is -ccw(S) * ccw(S') through a rectangle
// from side S to side S'.
int walk_compare(const Walker& w, int i1, int i2, bool hop_first) {
    int a = i1, b = i2;
    int mult = 1;
    if (hop_first) {
        const Instance& e = w.instances[static_cast<size_t>(a)];
        if (w.band_flip_at(e.rect, e.side))
            mult = -mult;
        a = w.partner(a);
        b = w.partner(b);
    }
    std::set<std::pair<int, int>> seen;
    while (true) {
        if (!seen.insert({a, b}).second)
            return 0; // revisited: parallel cycle (tie)
        const Instance& ea = w.instances[static_cast<size_t>(a)];
        const Instance& eb = w.instances[static_cast<size_t>(b)];
        assert(ea.rect == eb.rect && ea.side == eb.side);
        auto [xa, na] = w.into_rect(a);
        auto [xb, nb] = w.into_rect(b);
        int slot_entry = slot_of(ea.side, w.instances[static_cast<size_t>(a)].bucket);
        int sa = slot_of(xa.side, bucket_for(w.curves[static_cast<size_t>(ea.curve)].kind, xa.sign));
        int sb = slot_of(xb.side, bucket_for(w.curves[static_cast<size_t>(eb.curve)].kind, xb.sign));
        if (sa != sb) {
            int da = (sa - slot_entry + 20) % 20;
            int db = (sb - slot_entry + 20) % 20;
            assert(da != 0 && db != 0);
            // Exit ccw-earlier => entry ccw-later.
            int cmp = (da < db ? +1 : -1) * ccw_dir(ea.side);
            return cmp * mult;
        }
        // Parallel: follow the chords across and hop the next band.
        mult *= -ccw_dir(ea.side) * ccw_dir(xa.side);
        const Instance& fa = w.instances[static_cast<size_t>(na)];
        if (w.band_flip_at(fa.rect, fa.side))
            mult = -mult;
        a = w.partner(na);
        b = w.partner(nb);
    }
}

} // namespace

int partner_instance(const std::vector<Instance>& instances, int inst) {
    const Instance& e = instances[static_cast<size_t>(inst)];
    // Tail and head of a transition are adjacent ids by construction.
    return e.end == 0 ? inst + 1 : inst - 1;
}

std::vector<Curve> boundary_pushoffs(const Configuration& cfg, CoreId core) {
    if (!core_is_two_sided(cfg, core))
        throw PlacementError("boundary pushoffs need a two-sided core");
    // With even flip parity the Plus and Minus sign tracks are complementary
    // at every rectangle, giving the two boundary circles.
    return {core_curve(cfg, core, Sign::Plus), core_curve(cfg, core, Sign::Minus)};
}

Placement place_curves(const Configuration& cfg,
                       const std::vector<PlacedCurve>& curves) {
    for (const auto& pc : curves) {
        auto errs = word_errors(cfg, pc.curve);
        if (!errs.empty())
            throw PlacementError("invalid curve word: " + errs.front());
        if (has_turn_backs(pc.curve))
            throw PlacementError("curve has turn-back steps; normalize first");
    }

    Placement p;
    // Build instances: two per transition, tail then head.
    for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
        const Curve& c = curves[static_cast<size_t>(ci)].curve;
        PlacementKind kind = curves[static_cast<size_t>(ci)].kind;
        for (int t = 0; t < c.size(); ++t) {
            const Step& s = c.step(t);
            const Step& nxt = c.step(t + 1);
            Instance tail{ci, t, 0, s.rect, s.out.side, bucket_for(kind, s.out.sign)};
            Instance head{ci, t, 1, nxt.rect, nxt.in.side,
                          bucket_for(kind, nxt.in.sign)};
            p.instances.push_back(tail);
            p.instances.push_back(head);
        }
    }

    Walker w{cfg, curves, p.instances};

    // Group instances per (rect, side, bucket).
    std::map<std::tuple<int, int, int>, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(p.instances.size()); ++i) {
        const Instance& e = p.instances[static_cast<size_t>(i)];
        groups[{e.rect, static_cast<int>(e.side), e.bucket}].push_back(i);
    }

    // Singleton buckets for cores and boundary pushoffs.
    for (const auto& [key, list] : groups) {
        int bucket = std::get<2>(key);
        if ((bucket == MID || bucket == OUTLO || bucket == OUTHI) && list.size() > 1)
            throw PlacementError("special lane bucket occupied twice");
    }

    // Pairwise orders: comparator result, with ties resolved by orbit
    // propagation (choice consistent along the whole parallel family).
    std::map<std::pair<int, int>, int> order; // (i,j) -> +1 if i above j
    auto set_order = [&](int i, int j, int v) {
        auto it = order.find({i, j});
        if (it != order.end()) {
            if (it->second != v)
                throw PlacementError("contradictory parallel strand placement");
            return;
        }
        order[{i, j}] = v;
        order[{j, i}] = -v;
    };

    auto resolve_tie = [&](int i, int j) {
        // Propagate a base choice along the orbit of the tied pair, applying
        // the same transport multipliers as walk_compare and also recording
        // the chord-other-end pairs. If the orbit closes with a reversed
        // multiplier the strands are forced to cross; set_order throws then.
        const int base = +1; // i above j
        int a = i, b = j, mult = 1;
        std::set<std::tuple<int, int, int>> seen;
        while (seen.insert({a, b, mult}).second) {
            set_order(a, b, base * mult);
            const Instance& ea = p.instances[static_cast<size_t>(a)];
            auto [xa, na] = w.into_rect(a);
            auto [xb, nb] = w.into_rect(b);
            (void)xb;
            mult *= -ccw_dir(ea.side) * ccw_dir(xa.side);
            set_order(na, nb, base * mult);
            const Instance& fa = p.instances[static_cast<size_t>(na)];
            if (w.band_flip_at(fa.rect, fa.side))
                mult = -mult;
            a = w.partner(na);
            b = w.partner(nb);
        }
    };

    for (const auto& [key, list] : groups) {
        int bucket = std::get<2>(key);
        if (bucket != MINUS && bucket != PLUS)
            continue;
        for (size_t x = 0; x < list.size(); ++x)
            for (size_t y = x + 1; y < list.size(); ++y) {
                int i = list[x], j = list[y];
                if (order.count({i, j}))
                    continue;
                int c = walk_compare(w, i, j, false);
                if (c == 0)
                    c = walk_compare(w, i, j, true);
                if (c != 0)
                    set_order(i, j, c);
                else
                    resolve_tie(i, j);
            }
    }

    // Assemble per-side orders.
    p.side_lists.assign(static_cast<size_t>(cfg.n * 4), {});
    p.pos_in_side.assign(p.instances.size(), -1);
    for (int rect = 0; rect < cfg.n; ++rect)
        for (Side side : {Side::L, Side::R, Side::B, Side::T}) {
            std::vector<int> all;
            for (int bucket = 0; bucket <= 4; ++bucket) {
                auto it = groups.find({rect, static_cast<int>(side), bucket});
                if (it == groups.end())
                    continue;
                std::vector<int> g = it->second;
                if (g.size() > 1) {
                    // Selection sort by the order matrix, then verify.
                    std::sort(g.begin(), g.end(), [&](int a, int b) {
                        auto jt = order.find({a, b});
                        if (jt == order.end())
                            throw PlacementError("missing pairwise order");
                        return jt->second < 0; // a below b
                    });
                    for (size_t x = 0; x < g.size(); ++x)
                        for (size_t y = x + 1; y < g.size(); ++y)
                            if (order[{g[x], g[y]}] != -1)
                                throw PlacementError(
                                    "inconsistent strand order (not embeddable)");
                }
                for (int id : g)
                    all.push_back(id);
            }
            auto& lst = p.side_lists[static_cast<size_t>(p.side_index(rect, side))];
            lst = std::move(all);
            for (size_t k = 0; k < lst.size(); ++k)
                p.pos_in_side[static_cast<size_t>(lst[k])] = static_cast<int>(k);
        }

    // --- verification -------------------------------------------------------

    // Band transport: orders across each side pair must match (reversed
    // across flipped bands), and partner signs must agree with the flip.
    for (int rect = 0; rect < cfg.n; ++rect)
        for (Side side : {Side::R, Side::T}) {
            auto at = cfg.attachment(rect, side);
            Band bd = cfg.band(at.core, at.band);
            assert(at.at_from);
            const auto& near = p.side_list(rect, side);
            const auto& far = p.side_list(bd.to.rect, bd.to.side);
            if (near.size() != far.size())
                throw PlacementError("band strand mismatch");
            const int m = static_cast<int>(near.size());
            for (int k = 0; k < m; ++k) {
                int mate = partner_instance(p.instances, near[static_cast<size_t>(k)]);
                int want = bd.flip ? (m - 1 - k) : k;
                if (p.pos_in_side[static_cast<size_t>(mate)] != want)
                    throw PlacementError("strand order breaks across a band");
            }
        }

    // Chord planarity: same-curve chords must not interleave.
    auto coord_of = [&](int inst) {
        const Instance& e = p.instances[static_cast<size_t>(inst)];
        const auto& lst = p.side_list(e.rect, e.side);
        int k = p.pos_in_side[static_cast<size_t>(inst)];
        int sub = ccw_dir(e.side) > 0 ? k : static_cast<int>(lst.size()) - 1 - k;
        // Coarse slot by side only; refine by position within the side.
        int side_base = 0;
        switch (e.side) {
        case Side::B: side_base = 0; break;
        case Side::R: side_base = 1; break;
        case Side::T: side_base = 2; break;
        case Side::L: side_base = 3; break;
        }
        return std::pair<int, int>(side_base, sub);
    };
    struct ChordRef {
        int curve;
        int step;
        std::pair<int, int> a, b; // ccw coordinates of endpoints
    };
    std::vector<std::vector<ChordRef>> per_rect(static_cast<size_t>(cfg.n));
    for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
        const Curve& c = curves[static_cast<size_t>(ci)].curve;
        for (int k = 0; k < c.size(); ++k) {
            int in_inst = w.instance_id(ci, c.mod(k - 1), 1, c.size());
            int out_inst = w.instance_id(ci, k, 0, c.size());
            per_rect[static_cast<size_t>(c.step(k).rect)].push_back(
                ChordRef{ci, k, coord_of(in_inst), coord_of(out_inst)});
        }
    }
    auto ccw_less = [](std::pair<int, int> a, std::pair<int, int> b) { return a < b; };
    auto interleave = [&](const ChordRef& c1, const ChordRef& c2) {
        // Count endpoints of c2 inside the open ccw interval (c1.a, c1.b).
        auto inside = [&](std::pair<int, int> p) {
            if (ccw_less(c1.a, c1.b))
                return ccw_less(c1.a, p) && ccw_less(p, c1.b);
            return ccw_less(c1.a, p) || ccw_less(p, c1.b);
        };
        return inside(c2.a) != inside(c2.b);
    };
    for (const auto& chords : per_rect)
        for (size_t x = 0; x < chords.size(); ++x)
            for (size_t y = x + 1; y < chords.size(); ++y)
                if (chords[x].curve == chords[y].curve &&
                    interleave(chords[x], chords[y]))
                    throw PlacementError("curve crosses itself (chord interleave)");

    return p;
}

} // namespace twistlab
