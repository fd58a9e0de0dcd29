#include "twistlab/curve.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twistlab {

std::vector<std::string> word_errors(const Configuration& cfg, const Curve& c) {
    std::vector<std::string> errs;
    if (c.steps.empty()) {
        errs.push_back("empty word");
        return errs;
    }
    for (int k = 0; k < c.size(); ++k) {
        const Step& s = c.steps[static_cast<size_t>(k)];
        if (s.rect < 0 || s.rect >= cfg.n) {
            errs.push_back("step " + std::to_string(k) + ": rect out of range");
            return errs;
        }
    }
    for (int k = 0; k < c.size(); ++k) {
        const Step& s = c.step(k);
        const Step& t = c.step(k + 1);
        auto tr = cfg.transport(s.rect, s.out.side, s.out.sign);
        if (tr.rect != t.rect || tr.side != t.in.side || tr.sign != t.in.sign) {
            errs.push_back("transition " + std::to_string(k) + "->" +
                           std::to_string(c.mod(k + 1)) + ": step exits " +
                           side_name(s.out.side) + sign_char(s.out.sign) +
                           " of rect " + std::to_string(s.rect) +
                           " but next step enters " + side_name(t.in.side) +
                           sign_char(t.in.sign) + " of rect " + std::to_string(t.rect));
        }
    }
    return errs;
}

bool word_valid(const Configuration& cfg, const Curve& c) {
    return word_errors(cfg, c).empty();
}

bool has_turn_backs(const Curve& c) {
    for (const Step& s : c.steps)
        if (s.in.side == s.out.side)
            return true;
    return false;
}

int crossing_count(const Configuration& cfg, const Curve& c, CoreId core) {
    (void)cfg;
    int count = 0;
    for (const Step& s : c.steps)
        if (chord_crosses(core, s.in, s.out))
            ++count;
    return count;
}

int band_transitions(const Configuration& cfg, const Curve& c, CoreId band_core) {
    int count = 0;
    for (const Step& s : c.steps) {
        auto at = cfg.attachment(s.rect, s.out.side);
        if (at.core == band_core)
            ++count;
    }
    return count;
}

JCounts j_counts(const Configuration& cfg, const Curve& c) {
    JCounts j;
    j.j_a = band_transitions(cfg, c, CoreId::B);
    j.j_b = band_transitions(cfg, c, CoreId::A);
    j.degenerate_a = (j.j_a == 0);
    j.degenerate_b = (j.j_b == 0);
    return j;
}

Sidedness curve_sidedness(const Configuration& cfg, const Curve& c) {
    int parity = 0;
    for (const Step& s : c.steps) {
        auto at = cfg.attachment(s.rect, s.out.side);
        parity ^= cfg.band(at.core, at.band).flip;
    }
    return parity ? Sidedness::OneSided : Sidedness::TwoSided;
}

bool winds_around(const Configuration& cfg, const Curve& c, CoreId core) {
    // Chord parallel to the core: joins the two sides the core joins.
    Side s0 = core == CoreId::A ? Side::L : Side::B;
    Side s1 = core == CoreId::A ? Side::R : Side::T;
    std::vector<bool> has(static_cast<size_t>(cfg.n), false);
    for (const Step& s : c.steps) {
        if ((s.in.side == s0 && s.out.side == s1) ||
            (s.in.side == s1 && s.out.side == s0))
            has[static_cast<size_t>(s.rect)] = true;
    }
    return std::all_of(has.begin(), has.end(), [](bool b) { return b; });
}

Curve core_curve(const Configuration& cfg, CoreId core, Sign start) {
    Curve c;
    Sign s = start;
    if (core == CoreId::A) {
        for (int i = 0; i < cfg.n; ++i) {
            c.steps.push_back(Step{i, {Side::L, s}, {Side::R, s}});
            if (cfg.a_flips[static_cast<size_t>(i)])
                s = s == Sign::Plus ? Sign::Minus : Sign::Plus;
        }
    } else {
        for (int j = 0; j < cfg.n; ++j) {
            c.steps.push_back(Step{cfg.b_order[static_cast<size_t>(j)],
                                   {Side::B, s}, {Side::T, s}});
            if (cfg.b_flips[static_cast<size_t>(j)])
                s = s == Sign::Plus ? Sign::Minus : Sign::Plus;
        }
    }
    return c;
}

namespace {

std::tuple<int, int, int, int, int> step_key(const Step& s) {
    return {s.rect, static_cast<int>(s.in.side), static_cast<int>(s.in.sign),
            static_cast<int>(s.out.side), static_cast<int>(s.out.sign)};
}

} // namespace

Curve canonical_rotation(const Curve& c) {
    const int m = c.size();
    int best = 0;
    for (int r = 1; r < m; ++r) {
        for (int k = 0; k < m; ++k) {
            auto a = step_key(c.step(r + k));
            auto b = step_key(c.step(best + k));
            if (a < b) {
                best = r;
                break;
            }
            if (a > b)
                break;
        }
    }
    Curve out;
    out.steps.reserve(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k)
        out.steps.push_back(c.step(best + k));
    return out;
}

Curve reversed(const Curve& c) {
    Curve out;
    out.steps.reserve(c.steps.size());
    for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it)
        out.steps.push_back(Step{it->rect, it->out, it->in});
    return out;
}

ArcDecomposition classify_arcs(const Configuration& cfg, const Curve& c,
                               CoreId core, int direction) {
    ArcDecomposition dec;
    const CoreId contact = other_core(core); // bands delimiting the arcs
    const int m = c.size();

    // Find the transitions through contact-core bands.
    std::vector<int> cut; // arc starts: step indices entered from a contact band
    for (int k = 0; k < m; ++k) {
        auto at = cfg.attachment(c.step(k).rect, c.step(k).out.side);
        if (at.core == contact)
            cut.push_back(c.mod(k + 1));
    }
    if (cut.empty()) {
        dec.whole_curve = true;
        return dec;
    }
    std::sort(cut.begin(), cut.end());

    auto along_col = [&](int rect) {
        return core == CoreId::A ? rect : cfg.pos_in_b(rect);
    };

    for (size_t a = 0; a < cut.size(); ++a) {
        int first = cut[a];
        int next = cut[(a + 1) % cut.size()];
        int len = next - first;
        if (len <= 0)
            len += m;

        Arc arc;
        arc.first_step = first;
        arc.step_count = len;
        int crossing_at = -1; // step offset of the crossing chord
        for (int t = 0; t < len; ++t) {
            const Step& s = c.step(first + t);
            if (chord_crosses(core, s.in, s.out)) {
                ++arc.core_crossings;
                crossing_at = t;
            }
            if (t + 1 < len) {
                auto at = cfg.attachment(s.rect, s.out.side);
                assert(at.core == core);
                (void)at;
                ++arc.band_passes;
            }
        }

        if (arc.core_crossings == 0) {
            arc.type = ArcType::D;
        } else if (arc.core_crossings > 1) {
            arc.unclassified = true;
        } else if (arc.band_passes == 0) {
            arc.type = ArcType::A;
        } else if (arc.band_passes == 1) {
            // The crossing chord sits in one rectangle, the plain chord in
            // the neighbouring one, joined by a single along-core band. Type
            // C iff the plain rectangle lies on the side this strand's
            // winding flows toward. The winding direction of the strand is
            // the global twist direction times its global vertical
            // orientation (flipped bands invert the local charts).
            const Step& s0 = c.step(first);
            int band_dir = s0.out.side ==
                                   (core == CoreId::A ? Side::R : Side::T)
                               ? +1
                               : -1; // travel direction of the internal band
            int excursion = (crossing_at == 1) ? -band_dir : band_dir;
            // Global vertical orientation of the arc at its entry.
            const auto& flips = core == CoreId::A ? cfg.a_flips : cfg.b_flips;
            int entry_col = along_col(s0.rect);
            int omega = 0;
            for (int t = 0; t < entry_col; ++t)
                omega ^= flips[static_cast<size_t>(t)];
            Sign entry_level;
            if (core == CoreId::A)
                entry_level = s0.in.side == Side::T   ? Sign::Plus
                              : s0.in.side == Side::B ? Sign::Minus
                                                      : s0.in.sign;
            else
                entry_level = s0.in.side == Side::R   ? Sign::Plus
                              : s0.in.side == Side::L ? Sign::Minus
                                                      : s0.in.sign;
            bool rising_global = (entry_level == Sign::Minus) != (omega == 1);
            int dir_piece = rising_global ? direction : -direction;
            // The strand's loops run toward dir_piece; an excursion on the
            // opposite side gets dragged back over itself, which is the
            // pattern a type-I reduction removes.
            arc.type = (excursion == -dir_piece) ? ArcType::C : ArcType::B;
        } else {
            arc.unclassified = true;
        }
        (void)along_col;

        if (arc.unclassified)
            ++dec.unclassified;
        else
            switch (arc.type) {
            case ArcType::A: ++dec.n_a; break;
            case ArcType::B: ++dec.n_b; break;
            case ArcType::C: ++dec.n_c; break;
            case ArcType::D: ++dec.n_d; break;
            }
        dec.arcs.push_back(arc);
    }
    return dec;
}

// --- curve files -----------------------------------------------------------

Curve parse_curve(const std::string& text) {
    Curve c;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool saw_version = false;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        std::string key;
        if (!(ls >> key))
            continue;
        if (key == "curve-version") {
            int v;
            if (!(ls >> v) || v != 1)
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": unsupported curve-version");
            saw_version = true;
        } else if (key == "step") {
            int rect;
            std::string t0, t1;
            if (!(ls >> rect >> t0 >> t1))
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": step expects <rect> <half-side> <half-side>");
            auto h0 = parse_half_side(t0);
            auto h1 = parse_half_side(t1);
            if (!h0 || !h1)
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": bad half-side token");
            c.steps.push_back(Step{rect, *h0, *h1});
        } else {
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
        }
    }
    (void)saw_version;
    if (c.steps.empty())
        throw std::runtime_error("curve file has no steps");
    return c;
}

Curve load_curve(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open curve file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_curve(ss.str());
}

std::string format_curve(const Curve& c) {
    std::ostringstream out;
    out << "curve-version 1\n";
    for (const Step& s : c.steps)
        out << "step " << s.rect << ' ' << half_side_token(s.in) << ' '
            << half_side_token(s.out) << "\n";
    return out.str();
}

} // namespace twistlab
