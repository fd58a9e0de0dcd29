#include "twistlab/reduce.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace twistlab {

Curve normalize_word(const Configuration& cfg, Curve c) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k < c.size(); ++k) {
            const Step& s = c.step(k);
            if (!(s.in.side == s.out.side && s.in.sign == s.out.sign))
                continue;
            if (c.size() < 3)
                throw std::runtime_error("normalize: degenerate word");
            int p = c.mod(k - 1), q = c.mod(k + 1);
            const Step& sp = c.step(p);
            const Step& sq = c.step(q);
            if (sp.rect != sq.rect)
                throw std::logic_error("normalize: inconsistent null excursion");
            Step merged{sp.rect, sp.in, sq.out};
            Curve next;
            for (int t = 0; t < c.size(); ++t) {
                if (t == k || t == q)
                    continue;
                next.steps.push_back(t == p ? merged : c.step(t));
            }
            c = std::move(next);
            changed = true;
            break;
        }
    }
    auto errs = word_errors(cfg, c);
    if (!errs.empty())
        throw std::logic_error("normalize produced an invalid word: " + errs.front());
    return c;
}

namespace {

PlacementKind core_kind(CoreId core) {
    return core == CoreId::A ? PlacementKind::CoreA : PlacementKind::CoreB;
}

Bigon bigon_report(const Arrangement& arr, const BigonFind& bf) {
    Bigon b;
    b.region = bf.region;
    for (const auto& d : bf.run_x) {
        const auto& e = arr.edges[static_cast<size_t>(d.edge)];
        if (e.kind == Arrangement::EdgeKind::ChordSeg) {
            if (b.steps_c.empty() || b.steps_c.back() != e.step)
                b.steps_c.push_back(e.step);
        }
    }
    for (const auto& d : bf.run_y) {
        const auto& e = arr.edges[static_cast<size_t>(d.edge)];
        if (e.kind == Arrangement::EdgeKind::ChordSeg) {
            int rect = arr.curves[static_cast<size_t>(e.curve)].curve.step(e.step).rect;
            if (b.rects_core.empty() || b.rects_core.back() != rect)
                b.rects_core.push_back(rect);
        }
    }
    return b;
}

} // namespace

std::optional<Bigon> find_bigon(const Configuration& cfg, const Curve& c,
                                CoreId core) {
    auto arr = build_arrangement(
        cfg, {{c, PlacementKind::Lanes}, {core_curve(cfg, core), core_kind(core)}});
    auto bigons = find_bigons(arr, 0, 1);
    if (bigons.empty())
        return std::nullopt;
    return bigon_report(arr, bigons.front());
}

std::optional<Bigon> find_bigon_curves(const Configuration& cfg, const Curve& c,
                                       const Curve& other) {
    auto arr = build_arrangement(
        cfg, {{c, PlacementKind::Lanes}, {other, PlacementKind::Lanes}});
    auto bigons = find_bigons(arr, 0, 1);
    if (bigons.empty())
        return std::nullopt;
    return bigon_report(arr, bigons.front());
}

Curve remove_bigon(const Configuration& cfg, const Curve& c, CoreId core,
                   const Arrangement& arr, const BigonFind& bf) {
    const Curve& core_word = arr.curves[1].curve;
    assert(bf.curve_x == 0 && bf.curve_y == 1);

    // Normalize so run_c travels word-forward from corner A to corner B and
    // run_k follows the core from A to B as well. The rim cycle is run_c then
    // run_k, so when run_c already goes forward the core run must be flipped.
    auto run_c = bf.run_x;
    auto run_k = bf.run_y;
    {
        assert(!run_c.empty());
        bool fwd = run_c.front().fwd;
        for (const auto& d : run_c)
            if (d.fwd != fwd)
                throw std::logic_error("curve run changes direction on the rim");
        if (fwd) {
            std::reverse(run_k.begin(), run_k.end());
            for (auto& d : run_k)
                d.fwd = !d.fwd;
        } else {
            std::reverse(run_c.begin(), run_c.end());
            for (auto& d : run_c)
                d.fwd = !d.fwd;
        }
    }

    // Steps of c covered by the curve run.
    std::vector<int> steps_c;
    for (const auto& d : run_c) {
        const auto& e = arr.edges[static_cast<size_t>(d.edge)];
        if (e.kind == Arrangement::EdgeKind::ChordSeg) {
            if (steps_c.empty() || steps_c.back() != e.step)
                steps_c.push_back(e.step);
        } else {
            assert(e.kind == Arrangement::EdgeKind::Strand);
        }
    }
    assert(!steps_c.empty());
    const int i_a = steps_c.front();
    const int i_b = steps_c.back();
    {
        // The run must cover a contiguous forward range of steps.
        int span = c.mod(i_b - i_a) + 1;
        if (static_cast<int>(steps_c.size()) != span)
            throw std::logic_error("bigon curve run is not a contiguous arc");
    }

    // Core path from A to B: rectangles and the band exits between them.
    struct Hop {
        Side exit_side; // side of the previous rect
        Sign sign_flip; // unused; flips handled via transport
    };
    std::vector<int> rects;
    std::vector<Side> exits; // exit side of rects[t] toward rects[t+1]
    for (const auto& d : run_k) {
        const auto& e = arr.edges[static_cast<size_t>(d.edge)];
        if (e.kind == Arrangement::EdgeKind::ChordSeg) {
            int rect = core_word.step(e.step).rect;
            if (rects.empty() || rects.back() != rect)
                rects.push_back(rect);
        } else {
            assert(e.kind == Arrangement::EdgeKind::Strand);
            const Step& st = core_word.step(e.trans);
            if (d.fwd) {
                // word-forward: exits st.rect via st.out.side
                assert(!rects.empty() && rects.back() == st.rect);
                exits.push_back(st.out.side);
            } else {
                // backward: exits the *next* step's rect via its in side
                const Step& nx = core_word.step(e.trans + 1);
                assert(!rects.empty() && rects.back() == nx.rect);
                exits.push_back(nx.in.side);
            }
        }
    }
    assert(exits.size() + 1 == rects.size());

    // Bigon side of the core at each rect it passes (for the sign of the new
    // parallel strand). Rect faces are traced with the face on the left of
    // each dart, and core chords run L->R (a) or B->T (b), so the face on the
    // fwd side of a core segment sits above the a-core / left of the b-core.
    auto opp_bigon_sign = [&](const Arrangement::Dart& d) {
        const auto& e = arr.edges[static_cast<size_t>(d.edge)];
        assert(e.kind == Arrangement::EdgeKind::ChordSeg && e.curve == 1);
        int region = bf.region;
        // Which side is the bigon on: look at the fwd incidence's region.
        int fwd_face = -1, bwd_face = -1;
        for (int f = 0; f < static_cast<int>(arr.faces.size()); ++f)
            for (const auto& dd : arr.faces[static_cast<size_t>(f)].cycle)
                if (dd.edge == d.edge)
                    (dd.fwd ? fwd_face : bwd_face) = f;
        assert(fwd_face >= 0 && bwd_face >= 0);
        bool bigon_on_fwd_side =
            arr.face_region[static_cast<size_t>(fwd_face)] == region;
        bool bigon_on_bwd_side =
            arr.face_region[static_cast<size_t>(bwd_face)] == region;
        if (bigon_on_fwd_side == bigon_on_bwd_side)
            throw std::logic_error("bigon side ambiguous along the core run");
        if (core == CoreId::A) {
            // fwd side = above the a-core (Plus).
            Sign bigon = bigon_on_fwd_side ? Sign::Plus : Sign::Minus;
            return bigon == Sign::Plus ? Sign::Minus : Sign::Plus;
        }
        // fwd side = left of the b-core (Minus).
        Sign bigon = bigon_on_fwd_side ? Sign::Minus : Sign::Plus;
        return bigon == Sign::Plus ? Sign::Minus : Sign::Plus;
    };

    // Signs per rect of the path (first core segment of each position).
    std::vector<Sign> new_sign(rects.size(), Sign::Minus);
    {
        std::vector<bool> have(rects.size(), false);
        size_t idx = 0;
        for (const auto& d : run_k) {
            const auto& e = arr.edges[static_cast<size_t>(d.edge)];
            if (e.kind == Arrangement::EdgeKind::Strand) {
                ++idx;
                continue;
            }
            assert(idx < rects.size());
            if (!have[idx]) {
                new_sign[idx] = opp_bigon_sign(d);
                have[idx] = true;
            }
        }
        for (bool h : have)
            if (!h)
                throw std::logic_error("core run misses a rectangle segment");
    }

    // Build the replacement steps.
    const Step& first = c.step(i_a);
    const Step& last = c.step(i_b);
    std::vector<Step> replacement;
    if (rects.size() == 1) {
        replacement.push_back(Step{rects[0], first.in, last.out});
    } else {
        replacement.push_back(Step{rects[0], first.in, {exits[0], new_sign[0]}});
        auto cur = cfg.transport(rects[0], exits[0], new_sign[0]);
        for (size_t t = 1; t + 1 < rects.size(); ++t) {
            assert(cur.rect == rects[t]);
            if (cur.sign != new_sign[t])
                throw std::logic_error("bigon side inconsistent along the core run");
            replacement.push_back(
                Step{rects[t], {cur.side, cur.sign}, {exits[t], cur.sign}});
            cur = cfg.transport(rects[t], exits[t], cur.sign);
        }
        assert(cur.rect == rects.back());
        if (cur.sign != new_sign.back())
            throw std::logic_error("bigon side inconsistent at the last rectangle");
        replacement.push_back(Step{rects.back(), {cur.side, cur.sign}, last.out});
    }

    // Splice: keep steps strictly between i_b and i_a (cyclically), insert
    // the replacement in place of [i_a .. i_b].
    const int span = static_cast<int>(steps_c.size());
    (void)span;
    Curve out;
    for (const Step& s : replacement)
        out.steps.push_back(s);
    for (int t = c.mod(i_b + 1); t != i_a; t = c.mod(t + 1))
        out.steps.push_back(c.step(t));

    out = normalize_word(cfg, out);
    if (has_turn_backs(out))
        throw std::logic_error("bigon removal left a sign-changing turn-back");
    return out;
}

ReduceResult reduce_to_minimal(const Configuration& cfg, Curve c, CoreId core) {
    ReduceResult res;
    while (true) {
        auto arr = build_arrangement(
            cfg,
            {{c, PlacementKind::Lanes}, {core_curve(cfg, core), core_kind(core)}});
        auto bigons = find_bigons(arr, 0, 1);
        if (bigons.empty())
            break;
        int before = crossing_count(cfg, c, core);
        Curve next = remove_bigon(cfg, c, core, arr, bigons.front());
        int after = crossing_count(cfg, next, core);
        if (after != before - 2)
            throw std::logic_error("bigon removal must drop exactly two crossings");
        res.trace.push_back({bigons.front().region, before, after});
        c = std::move(next);
    }
    res.curve = std::move(c);
    return res;
}

} // namespace twistlab
