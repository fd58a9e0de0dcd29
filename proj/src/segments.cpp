#include "twistlab/segments.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <functional>
#include <map>

namespace twistlab {

int reversed_segment_id(int id) { return id ^ 1; }

namespace {

// Boundary circle of the other core's neighbourhood met by the given side of
// a rectangle. Circle 0 is the one containing the Plus position of the
// first rectangle along the other core.
int circle_of_side(const Configuration& cfg, CoreId other, int rect, Side side) {
    // Sign track of the Plus-started pushoff of `other` at this rect.
    const auto& flips = other == CoreId::A ? cfg.a_flips : cfg.b_flips;
    int pos = other == CoreId::A ? rect : cfg.pos_in_b(rect);
    int parity = 0;
    for (int t = 0; t < pos; ++t)
        parity ^= flips[static_cast<size_t>(t)];
    Sign plus_track = parity ? Sign::Minus : Sign::Plus;
    // Which sign position does `side` belong to?
    Sign this_side;
    if (other == CoreId::A)
        this_side = (side == Side::T) ? Sign::Plus : Sign::Minus;
    else
        this_side = (side == Side::R) ? Sign::Plus : Sign::Minus;
    return this_side == plus_track ? 0 : 1;
}

} // namespace

Sidedness segment_sidedness(const Configuration& cfg, CoreId host, int band) {
    // Flip of the host band plus the flips along either connecting arc of
    // the other core; the two arc choices agree because total parity is even.
    Band bd = cfg.band(host, band);
    int parity = bd.flip;
    const auto& other_flips = host == CoreId::B ? cfg.a_flips : cfg.b_flips;
    int u, v; // positions along the other core
    if (host == CoreId::B) {
        u = bd.from.rect;
        v = bd.to.rect;
    } else {
        u = cfg.pos_in_b(bd.from.rect);
        v = cfg.pos_in_b(bd.to.rect);
    }
    for (int t = u; t != v; t = (t + 1) % cfg.n)
        parity ^= other_flips[static_cast<size_t>(t)];
    return parity ? Sidedness::OneSided : Sidedness::TwoSided;
}

std::vector<OrientedSegment> segments_of(const Configuration& cfg, CoreId host) {
    std::vector<OrientedSegment> out;
    CoreId other = other_core(host);
    for (int band = 0; band < cfg.n; ++band) {
        Band bd = cfg.band(host, band);
        Sidedness sd = segment_sidedness(cfg, host, band);
        for (bool forward : {true, false}) {
            OrientedSegment s;
            s.host = host;
            s.band = band;
            s.forward = forward;
            BandEnd ini = forward ? bd.from : bd.to;
            BandEnd ter = forward ? bd.to : bd.from;
            s.initial_rect = ini.rect;
            s.terminal_rect = ter.rect;
            s.initial_side = circle_of_side(cfg, other, ini.rect, ini.side);
            s.terminal_side = circle_of_side(cfg, other, ter.rect, ter.side);
            s.sidedness = sd;
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const OrientedSegment& x, const OrientedSegment& y) {
                  return x.id() < y.id();
              });
    return out;
}

bool adjacent(const Configuration& cfg, const OrientedSegment& p,
              const OrientedSegment& q) {
    if (p.host != q.host || p.id() == q.id())
        return false;
    if (p.sidedness != Sidedness::OneSided || q.sidedness != Sidedness::OneSided)
        return false;
    auto regions = boundary_regions(cfg);
    for (const auto& reg : regions) {
        if (reg.cap.kind != CapKind::Disk)
            continue;
        if (reg.walk.size() != 4)
            continue;
        // Try the walk in both directions and all rotations: need
        // [edge of band p traversed along p, arc, edge of band q traversed
        // against q, arc].
        for (int dir = 0; dir < 2; ++dir) {
            std::vector<WalkItem> walk = reg.walk;
            if (dir == 1) {
                std::reverse(walk.begin(), walk.end());
                for (auto& item : walk)
                    item.forward = !item.forward;
            }
            for (int rot = 0; rot < 4; ++rot) {
                const WalkItem& w0 = walk[static_cast<size_t>(rot)];
                const WalkItem& w2 = walk[static_cast<size_t>((rot + 2) % 4)];
                if (w0.edge.core != p.host || w2.edge.core != p.host)
                    continue;
                bool match_p = w0.edge.band == p.band && w0.forward == p.forward;
                bool match_q = w2.edge.band == q.band && w2.forward != q.forward;
                if (match_p && match_q)
                    return true;
            }
        }
    }
    return false;
}

Joinability joinability_classes(const Configuration& cfg, CoreId host) {
    auto segs = segments_of(cfg, host);
    const int m = static_cast<int>(segs.size());
    std::vector<int> uf(static_cast<size_t>(m));
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[static_cast<size_t>(x)] != x)
            x = uf[static_cast<size_t>(x)] =
                uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
        return x;
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (adjacent(cfg, segs[static_cast<size_t>(i)], segs[static_cast<size_t>(j)]) ||
                adjacent(cfg, segs[static_cast<size_t>(j)], segs[static_cast<size_t>(i)]))
                uf[static_cast<size_t>(find(i))] = find(j);

    Joinability out;
    out.host = host;
    out.class_of.assign(static_cast<size_t>(m), -1);
    std::map<int, int> root_class;
    for (int i = 0; i < m; ++i) {
        int r = find(i);
        auto it = root_class.find(r);
        if (it == root_class.end()) {
            it = root_class.emplace(r, static_cast<int>(out.classes.size())).first;
            out.classes.push_back({});
        }
        out.class_of[static_cast<size_t>(i)] = it->second;
        out.classes[static_cast<size_t>(it->second)].push_back(i);
    }
    return out;
}

std::vector<DoubleSegment> double_segments(const Configuration& cfg, CoreId host) {
    std::vector<DoubleSegment> out(static_cast<size_t>(cfg.n));
    for (int band = 0; band < cfg.n; ++band) {
        Band bd = cfg.band(host, band);
        // Forward segment of this band starts at bd.from.rect.
        auto& fwd_ds = out[static_cast<size_t>(bd.from.rect)];
        fwd_ds.point = bd.from.rect;
        fwd_ds.seg1 = band * 2;
        // Backward segment starts at bd.to.rect.
        auto& bwd_ds = out[static_cast<size_t>(bd.to.rect)];
        bwd_ds.point = bd.to.rect;
        bwd_ds.seg2 = band * 2 + 1;
    }
    return out;
}

std::vector<int> non_joinable_to(const Configuration& cfg, CoreId host, int point) {
    auto join = joinability_classes(cfg, host);
    auto ds = double_segments(cfg, host);
    std::vector<int> out;
    const auto& p = ds[static_cast<size_t>(point)];
    for (int q = 0; q < cfg.n; ++q) {
        if (q == point)
            continue;
        const auto& dq = ds[static_cast<size_t>(q)];
        bool joinable = false;
        for (int sp : {p.seg1, p.seg2})
            for (int sq : {dq.seg1, dq.seg2})
                if (join.joinable(sp, sq))
                    joinable = true;
        if (!joinable)
            out.push_back(q);
    }
    return out;
}

} // namespace twistlab
