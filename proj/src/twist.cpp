#include "twistlab/twist.hpp"

#include "twistlab/segments.hpp"

#include <algorithm>
#include <cassert>

namespace twistlab {

namespace {

// Frame for working along one core: columns are positions along the core,
// contact sides are where the other core's bands attach.
struct Frame {
    const Configuration& cfg;
    CoreId core;

    int col_of(int rect) const {
        return core == CoreId::A ? rect : cfg.pos_in_b(rect);
    }
    int rect_of(int col) const {
        int n = cfg.n;
        col = ((col % n) + n) % n;
        return core == CoreId::A ? col : cfg.b_order[static_cast<size_t>(col)];
    }
    // Side exited when moving in direction +1 / -1 along the core.
    Side exit_side(int dir) const {
        if (core == CoreId::A)
            return dir > 0 ? Side::R : Side::L;
        return dir > 0 ? Side::T : Side::B;
    }
    Side entry_side(int dir) const { return exit_side(-dir); }
    bool is_along_side(Side s) const {
        if (core == CoreId::A)
            return s == Side::L || s == Side::R;
        return s == Side::B || s == Side::T;
    }
    // Flip bit of the core band between col and col+1.
    int band_flip(int col) const {
        int n = cfg.n;
        col = ((col % n) + n) % n;
        return (core == CoreId::A ? cfg.a_flips : cfg.b_flips)[static_cast<size_t>(col)];
    }
    // Transverse level of a half-side: which side of the core it sits on.
    Sign level(HalfSide h) const {
        if (core == CoreId::A) {
            switch (h.side) {
            case Side::T: return Sign::Plus;
            case Side::B: return Sign::Minus;
            default: return h.sign;
            }
        }
        switch (h.side) {
        case Side::R: return Sign::Plus;
        case Side::L: return Sign::Minus;
        default: return h.sign;
        }
    }
    // Orientation of the local chart of a column against column 0: odd means
    // the transverse direction is inverted there.
    int omega(int col) const {
        int n = cfg.n;
        col = ((col % n) + n) % n;
        int parity = 0;
        for (int t = 0; t < col; ++t)
            parity ^= band_flip(t);
        return parity;
    }
    // Offset of a point within its column, in quarter-column units; column
    // centers sit at 4*col, interfaces at 4*col +- 2.
    int off(HalfSide h) const {
        if (is_along_side(h.side))
            return (h.side == exit_side(+1)) ? 2 : -2;
        return h.sign == Sign::Plus ? 1 : -1;
    }
};

Sign flip_sign(Sign s, int flip) {
    if (!flip)
        return s;
    return s == Sign::Plus ? Sign::Minus : Sign::Plus;
}

// Transverse height of an endpoint: contact sides sit on the boundary of the
// core's neighbourhood, lanes just off the core.
int height_of(const Frame& fr, HalfSide h) {
    if (fr.is_along_side(h.side))
        return fr.level(h) == Sign::Plus ? +1 : -1;
    bool top = fr.level(h) == Sign::Plus;
    return top ? +100 : -100;
}

// Straightened monotone emission of one core-crossing piece: from the entry
// point, wind to the unwrapped exit. The shear drags all strands alike, so
// the core crossing sits where a linear height profile reaches the core:
// strands stay parallel and the image is embedded. Entries or exits sitting
// on a column interface in the travel direction get a null excursion step so
// the word stays transport-consistent; those cancel under normalize_word.
std::vector<Step> emit_straightened(const Frame& fr, int entry_col, HalfSide entry,
                                    HalfSide exit, int exit_col_unwrapped) {
    const int u0 = 4 * entry_col + fr.off(entry);
    const int u1 = 4 * exit_col_unwrapped + fr.off(exit);
    assert(u0 != u1);
    const int dir = u1 > u0 ? +1 : -1;

    // Crossing position along the span: u_cross = u0 + (u1-u0) * f where
    // f = -v_in / (v_out - v_in), measured in the chart of the entry column
    // (flipped bands invert the local charts along the way).
    int path_parity = 0;
    for (int c = std::min(entry_col, exit_col_unwrapped);
         c < std::max(entry_col, exit_col_unwrapped); ++c)
        path_parity ^= fr.band_flip(c);
    const long long v_in = height_of(fr, entry);
    long long v_out = height_of(fr, exit);
    if (path_parity)
        v_out = -v_out;
    assert((v_in < 0) != (v_out < 0));
    // Crossing fraction along the travel: f = |v_in| / (|v_in| + |v_out|).
    const long long fp = v_in < 0 ? -v_in : v_in;
    const long long fq = fp + (v_out < 0 ? -v_out : v_out);
    auto before_cross = [&](long long u) {
        long long lhs = fq * (u - u0);
        long long rhs = fp * (static_cast<long long>(u1) - u0);
        return dir > 0 ? lhs < rhs : lhs > rhs;
    };

    // Backward level transport from the exit: level of the strand after the
    // crossing, at each column.
    auto level_after_cross_at = [&](int col) {
        Sign s = fr.level(exit);
        int c = exit_col_unwrapped;
        while (c != col) {
            // move one column toward `col` (against dir)
            int band_col = dir > 0 ? c - 1 : c;
            s = flip_sign(s, fr.band_flip(band_col));
            c -= dir;
        }
        return s;
    };

    std::vector<Step> out;
    int col = entry_col;
    Sign level = fr.level(entry);
    HalfSide in = entry;
    int u = u0;
    bool crossed = false;

    if (fr.is_along_side(entry.side) && entry.side == fr.exit_side(dir)) {
        // Starts on the interface it travels across: null step, then proceed
        // from the next column.
        out.push_back(Step{fr.rect_of(col), entry, entry});
        level = flip_sign(level, fr.band_flip(dir > 0 ? col : col - 1));
        in = HalfSide{fr.entry_side(dir), level};
        col += dir;
    }
    const bool exit_at_interface =
        fr.is_along_side(exit.side) && exit.side == fr.entry_side(dir);

    for (;;) {
        int next = u;
        do {
            next += dir;
        } while (((next % 4) + 4) % 4 != 2);
        bool last = dir > 0 ? next >= u1 : next <= u1;
        if (last) {
            if (exit_at_interface) {
                // The path ends on the interface between col and col+dir;
                // finish inside col and add the null handoff step.
                int band_col = dir > 0 ? col : col - 1;
                Sign s = flip_sign(exit.sign, fr.band_flip(band_col));
                out.push_back(Step{fr.rect_of(col), in, {fr.exit_side(dir), s}});
                out.push_back(Step{fr.rect_of(col + dir), exit, exit});
            } else {
                out.push_back(Step{fr.rect_of(col), in, exit});
            }
            break;
        }
        Sign out_level;
        if (!crossed && !before_cross(next)) {
            crossed = true;
            out_level = level_after_cross_at(col);
        } else {
            out_level = crossed ? level_after_cross_at(col) : level;
        }
        out.push_back(Step{fr.rect_of(col), in, {fr.exit_side(dir), out_level}});
        int band_col = dir > 0 ? col : col - 1;
        Sign next_level = flip_sign(out_level, fr.band_flip(band_col));
        if (!crossed)
            level = next_level;
        in = HalfSide{fr.entry_side(dir), next_level};
        col += dir;
        u = next;
    }
    return out;
}

} // namespace

Curve apply_twist_raw(const Configuration& cfg, const Curve& c, CoreId core,
                      int k, Hand hand) {
    if (k == 0)
        throw TwistError("twist power must be nonzero");
    if (!core_is_two_sided(cfg, core))
        throw TwistError("cannot twist about a one-sided core");
    {
        auto errs = word_errors(cfg, c);
        if (!errs.empty())
            throw TwistError("invalid curve word: " + errs.front());
        if (has_turn_backs(c))
            throw TwistError("curve has turn-back steps");
    }

    Frame fr{cfg, core};
    const int dir = (hand == Hand::Right ? +1 : -1) * (k > 0 ? +1 : -1);
    const int loops = k > 0 ? k : -k;

    auto dec = classify_arcs(cfg, c, core, dir);
    if (dec.whole_curve)
        return c; // parallel to the core: the twist fixes it up to isotopy

    Curve out;
    for (const auto& arc : dec.arcs) {
        if (arc.core_crossings == 0) {
            for (int t = 0; t < arc.step_count; ++t)
                out.steps.push_back(c.step(arc.first_step + t));
            continue;
        }
        // A strand's winding direction is the global twist direction times
        // its global vertical orientation: in a complex with flipped bands,
        // pieces entering the annulus from globally opposite sides wind
        // opposite ways under the same twist.
        auto piece_dir = [&](HalfSide entry, int entry_col) {
            bool rising_local = fr.level(entry) == Sign::Minus;
            bool rising_global = rising_local != (fr.omega(entry_col) == 1);
            return rising_global ? dir : -dir;
        };
        if (arc.core_crossings == 1) {
            // Straightened arc-level image.
            const Step& first = c.step(arc.first_step);
            const Step& last = c.step(arc.first_step + arc.step_count - 1);
            int col = fr.col_of(first.rect);
            int entry_col = col;
            // Unwrapped column of the exit: follow the internal band passes.
            for (int t = 0; t + 1 < arc.step_count; ++t) {
                const Step& s = c.step(arc.first_step + t);
                col += (s.out.side == fr.exit_side(+1)) ? +1 : -1;
            }
            int exit_col = col + cfg.n * loops * piece_dir(first.in, entry_col);
            auto emitted =
                emit_straightened(fr, entry_col, first.in, last.out, exit_col);
            for (const Step& s : emitted)
                out.steps.push_back(s);
            continue;
        }
        // Multiple crossings on one arc (no winding hypothesis): splice the
        // loops at each crossing chord separately.
        for (int t = 0; t < arc.step_count; ++t) {
            const Step& s = c.step(arc.first_step + t);
            if (!chord_crosses(core, s.in, s.out)) {
                out.steps.push_back(s);
                continue;
            }
            int col0 = fr.col_of(s.rect);
            auto spl = emit_straightened(
                fr, col0, s.in, s.out,
                col0 + cfg.n * loops * piece_dir(s.in, col0));
            for (const Step& e : spl)
                out.steps.push_back(e);
        }
    }

    auto errs = word_errors(cfg, out);
    if (!errs.empty())
        throw std::logic_error("twist produced an invalid word: " + errs.front());
    out = normalize_word(cfg, out);
    if (crossing_count(cfg, out, core) != crossing_count(cfg, c, core))
        throw std::logic_error("twist must preserve crossings with its own core");
    return out;
}

namespace {

PlacementKind kind_of(CoreId core) {
    return core == CoreId::A ? PlacementKind::CoreA : PlacementKind::CoreB;
}

// Classification of a bigon between d and the other core by its core run.
struct BigonClass {
    ReductionEvent::Kind kind;
    int band = -1;
};

BigonClass classify_bigon(const Configuration& cfg, const Arrangement& arr,
                          const BigonFind& bf, CoreId other) {
    int strands = 0;
    int band = -1;
    for (const auto& d : bf.run_y) {
        const auto& e = arr.edges[static_cast<size_t>(d.edge)];
        if (e.kind == Arrangement::EdgeKind::Strand) {
            ++strands;
            const Step& st = arr.curves[1].curve.step(e.trans);
            band = cfg.attachment(st.rect, st.out.side).band;
        }
    }
    if (strands == 0)
        return {ReductionEvent::Kind::I, -1};
    if (strands == 1) {
        Sidedness sd = segment_sidedness(cfg, other, band);
        return {sd == Sidedness::TwoSided ? ReductionEvent::Kind::II
                                          : ReductionEvent::Kind::III,
                band};
    }
    throw TwistError("bigon arc spans several segments of the other core; "
                     "this contradicts the locality of the reductions");
}

} // namespace

TwistTrace twist_minimal(const Configuration& cfg, const Curve& c, CoreId core,
                         int k, Hand hand) {
    if (!is_generic_core(cfg, core))
        throw TwistError("twisting core is not generic; the twist is trivial");
    const CoreId other = other_core(core);

    // Pre: c reduced against both cores.
    if (find_bigon(cfg, c, core).has_value() || find_bigon(cfg, c, other).has_value())
        throw TwistError("curve must be reduced against both cores before twisting");

    TwistTrace tr;
    tr.raw = apply_twist_raw(cfg, c, core, k, hand);
    tr.raw_cross_core = crossing_count(cfg, tr.raw, core);
    tr.raw_cross_other = crossing_count(cfg, tr.raw, other);

    Curve d = tr.raw;
    auto stage = [&](ReductionEvent::Kind want, bool forbid_earlier) {
        while (true) {
            auto arr = build_arrangement(
                cfg, {{d, PlacementKind::Lanes},
                      {core_curve(cfg, other), kind_of(other)}});
            auto bigons = find_bigons(arr, 0, 1);
            const BigonFind* pick = nullptr;
            BigonClass pick_class{ReductionEvent::Kind::I, -1};
            for (const auto& bf : bigons) {
                auto cls = classify_bigon(cfg, arr, bf, other);
                if (forbid_earlier && static_cast<int>(cls.kind) <
                                          static_cast<int>(want))
                    throw TwistError("an earlier-stage reduction reappeared");
                if (cls.kind == want && !pick) {
                    pick = &bf;
                    pick_class = cls;
                }
            }
            if (!pick)
                return;
            int before = crossing_count(cfg, d, other);
            d = remove_bigon(cfg, d, other, arr, *pick);
            int after = crossing_count(cfg, d, other);
            tr.events.push_back(
                {want, pick->region, pick_class.band, before, after});
        }
    };

    stage(ReductionEvent::Kind::I, false);
    tr.d1 = d;
    stage(ReductionEvent::Kind::II, true);
    tr.d2 = d;
    stage(ReductionEvent::Kind::III, true);
    tr.d3 = d;

    // Certificate: no bigon against either core survives.
    if (find_bigon(cfg, d, other).has_value())
        throw std::logic_error("twist certificate failed against the other core");
    if (find_bigon(cfg, d, core).has_value())
        throw std::logic_error("twist certificate failed against the twisting core");
    tr.certified = true;
    tr.report = curve_info(cfg, d);
    return tr;
}

} // namespace twistlab
