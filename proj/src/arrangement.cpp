#include "twistlab/arrangement.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace twistlab {

namespace {

// ---------------------------------------------------------------------------
// construction scratch state

struct Builder {
    const Configuration& cfg;
    const std::vector<PlacedCurve>& curves;
    const Placement& pl;
    Arrangement& arr;

    // node ids: corners [0, 4n), instances [4n, 4n+I), crossings after.
    int inst_base;
    int next_node;

    std::map<std::tuple<int, int, int>, int> gap_ids; // (rect, side, k) -> edge
    std::map<std::tuple<int, int, int>, int> free_ids; // (core, band, gside)

    // Per edge: incidences (face, position in cycle, forward?).
    struct Incidence {
        int face;
        int pos;
        bool fwd;
    };
    std::vector<std::vector<Incidence>> edge_faces;

    int instance_node(int inst) const { return inst_base + inst; }

    int add_edge(Arrangement::Edge e) {
        arr.edges.push_back(e);
        return static_cast<int>(arr.edges.size()) - 1;
    }
};

// Axis-min and axis-max corners of a side.
Corner side_corner_lo(int rect, Side s) {
    switch (s) {
    case Side::L: return {rect, Side::L, Side::B};
    case Side::R: return {rect, Side::R, Side::B};
    case Side::B: return {rect, Side::L, Side::B};
    case Side::T: return {rect, Side::L, Side::T};
    }
    return {rect, Side::L, Side::B};
}
Corner side_corner_hi(int rect, Side s) {
    switch (s) {
    case Side::L: return {rect, Side::L, Side::T};
    case Side::R: return {rect, Side::R, Side::T};
    case Side::B: return {rect, Side::R, Side::B};
    case Side::T: return {rect, Side::R, Side::T};
    }
    return {rect, Side::L, Side::B};
}

int ccw_dir_of(Side side) {
    return (side == Side::B || side == Side::R) ? +1 : -1;
}

} // namespace

int Arrangement::crossing_count_between(int curve1, int curve2) const {
    int k = 0;
    for (const auto& x : crossings)
        if ((x.curve1 == curve1 && x.curve2 == curve2) ||
            (x.curve1 == curve2 && x.curve2 == curve1))
            ++k;
    return k;
}

Arrangement build_arrangement(const Configuration& cfg,
                              std::vector<PlacedCurve> curves) {
    Arrangement arr;
    arr.cfg = cfg;
    arr.curves = std::move(curves);
    arr.placement = place_curves(cfg, arr.curves);
    const Placement& pl = arr.placement;
    const int n = cfg.n;

    Builder bld{cfg, arr.curves, pl, arr, 4 * n,
                4 * n + static_cast<int>(pl.instances.size()),
                {}, {}, {}};

    // --- gap edges ----------------------------------------------------------
    for (int rect = 0; rect < n; ++rect)
        for (Side side : {Side::L, Side::R, Side::B, Side::T}) {
            const auto& lst = pl.side_list(rect, side);
            int lo = corner_index(side_corner_lo(rect, side));
            int hi = corner_index(side_corner_hi(rect, side));
            for (int k = 0; k <= static_cast<int>(lst.size()); ++k) {
                int a = k == 0 ? lo : bld.instance_node(lst[static_cast<size_t>(k - 1)]);
                int b = k == static_cast<int>(lst.size())
                            ? hi
                            : bld.instance_node(lst[static_cast<size_t>(k)]);
                int id = bld.add_edge({Arrangement::EdgeKind::Gap, a, b});
                bld.gap_ids[{rect, static_cast<int>(side), k}] = id;
            }
        }

    // --- strand edges (one per transition) -----------------------------------
    // Laid out in the same order as instances: strand of transition t of
    // curve c joins its tail and head instance nodes.
    std::map<std::pair<int, int>, int> strand_ids; // (curve, trans) -> edge
    {
        int inst = 0;
        for (int ci = 0; ci < static_cast<int>(arr.curves.size()); ++ci) {
            const Curve& c = arr.curves[static_cast<size_t>(ci)].curve;
            for (int t = 0; t < c.size(); ++t) {
                int tail = inst, head = inst + 1;
                inst += 2;
                int id = bld.add_edge({Arrangement::EdgeKind::Strand,
                                       bld.instance_node(tail),
                                       bld.instance_node(head), ci, t});
                strand_ids[{ci, t}] = id;
            }
        }
    }

    // --- free edges -----------------------------------------------------------
    for (int core = 0; core < 2; ++core)
        for (int band = 0; band < n; ++band)
            for (Sign g : {Sign::Minus, Sign::Plus}) {
                FreeEdge fe{static_cast<CoreId>(core), band, g};
                auto [c0, c1] = free_edge_corners(cfg, fe);
                Arrangement::Edge e{Arrangement::EdgeKind::Free,
                                    corner_index(c0), corner_index(c1)};
                e.free = fe;
                int id = bld.add_edge(e);
                bld.free_ids[{core, band, g == Sign::Plus ? 1 : 0}] = id;
            }

    // --- per-rectangle chord arrangements -------------------------------------

    struct ChordInfo {
        int curve, step;
        int node_in, node_out;  // instance nodes
        int pos_in, pos_out;    // ccw positions on the rect circle
        std::vector<int> cross; // crossing ids ordered from the in endpoint
        std::vector<int> segs;  // chord segment edge ids, in -> out
    };

    // ccw boundary circle per rect: node ids and a position for each.
    struct RectLocal {
        std::vector<int> circle;          // node ids in ccw order
        std::map<int, int> pos_of;        // node -> position
        std::vector<ChordInfo> chords;
        std::map<int, std::pair<int, int>> chord_of_instance; // inst node -> (chord, end)
    };
    std::vector<RectLocal> locals(static_cast<size_t>(n));

    for (int rect = 0; rect < n; ++rect) {
        RectLocal& L = locals[static_cast<size_t>(rect)];
        auto add_node = [&](int node) {
            L.pos_of[node] = static_cast<int>(L.circle.size());
            L.circle.push_back(node);
        };
        // ccw: BL, B asc, BR, R asc, TR, T desc, TL, L desc.
        add_node(corner_index({rect, Side::L, Side::B}));
        for (int i : pl.side_list(rect, Side::B))
            add_node(bld.instance_node(i));
        add_node(corner_index({rect, Side::R, Side::B}));
        for (int i : pl.side_list(rect, Side::R))
            add_node(bld.instance_node(i));
        add_node(corner_index({rect, Side::R, Side::T}));
        {
            auto lst = pl.side_list(rect, Side::T);
            for (auto it = lst.rbegin(); it != lst.rend(); ++it)
                add_node(bld.instance_node(*it));
        }
        add_node(corner_index({rect, Side::L, Side::T}));
        {
            auto lst = pl.side_list(rect, Side::L);
            for (auto it = lst.rbegin(); it != lst.rend(); ++it)
                add_node(bld.instance_node(*it));
        }
    }

    // Chords: every step of every curve.
    {
        int inst = 0;
        std::vector<int> inst_of_curve_trans_tail, inst_of_curve_trans_head;
        for (int ci = 0; ci < static_cast<int>(arr.curves.size()); ++ci) {
            const Curve& c = arr.curves[static_cast<size_t>(ci)].curve;
            int base = inst;
            inst += 2 * c.size();
            for (int k = 0; k < c.size(); ++k) {
                int in_inst = base + 2 * c.mod(k - 1) + 1; // head of trans k-1
                int out_inst = base + 2 * k;               // tail of trans k
                RectLocal& L = locals[static_cast<size_t>(c.step(k).rect)];
                ChordInfo ch;
                ch.curve = ci;
                ch.step = k;
                ch.node_in = bld.instance_node(in_inst);
                ch.node_out = bld.instance_node(out_inst);
                ch.pos_in = L.pos_of.at(ch.node_in);
                ch.pos_out = L.pos_of.at(ch.node_out);
                int idx = static_cast<int>(L.chords.size());
                L.chords.push_back(ch);
                L.chord_of_instance[ch.node_in] = {idx, 0};
                L.chord_of_instance[ch.node_out] = {idx, 1};
            }
        }
    }

    // Crossings and chord segments.
    bld.next_node = bld.inst_base + static_cast<int>(pl.instances.size());
    for (int rect = 0; rect < n; ++rect) {
        RectLocal& L = locals[static_cast<size_t>(rect)];
        const int m = static_cast<int>(L.circle.size());
        auto in_ccw_arc = [&](int p, int from, int to) {
            // p strictly inside the ccw arc from `from` to `to`.
            if (from < to)
                return from < p && p < to;
            return p > from || p < to;
        };
        auto interleaves = [&](const ChordInfo& c1, const ChordInfo& c2) {
            bool x = in_ccw_arc(c2.pos_in, c1.pos_in, c1.pos_out);
            bool y = in_ccw_arc(c2.pos_out, c1.pos_in, c1.pos_out);
            return x != y;
        };
        (void)m;
        // Pairwise crossings.
        std::vector<std::vector<int>> chord_crossings(L.chords.size());
        for (size_t x = 0; x < L.chords.size(); ++x)
            for (size_t y = x + 1; y < L.chords.size(); ++y) {
                if (!interleaves(L.chords[x], L.chords[y]))
                    continue;
                if (L.chords[x].curve == L.chords[y].curve)
                    throw PlacementError("self-crossing chords in a rectangle");
                int node = bld.next_node++;
                Arrangement::Crossing cr;
                cr.node = node;
                cr.curve1 = L.chords[x].curve;
                cr.step1 = L.chords[x].step;
                cr.curve2 = L.chords[y].curve;
                cr.step2 = L.chords[y].step;
                int id = static_cast<int>(arr.crossings.size());
                arr.crossings.push_back(cr);
                chord_crossings[x].push_back(id);
                chord_crossings[y].push_back(id);
            }
        // Order crossings along each chord (separation from the in endpoint)
        // and create segment edges.
        for (size_t x = 0; x < L.chords.size(); ++x) {
            ChordInfo& ch = L.chords[x];
            auto& xs = chord_crossings[x];
            auto other_chord = [&](int crossing) -> const ChordInfo& {
                const auto& cr = arr.crossings[static_cast<size_t>(crossing)];
                for (const auto& cand : L.chords)
                    if ((cand.curve == cr.curve1 && cand.step == cr.step1) ||
                        (cand.curve == cr.curve2 && cand.step == cr.step2))
                        if (!(cand.curve == ch.curve && cand.step == ch.step))
                            return cand;
                throw std::logic_error("crossing without partner chord");
            };
            std::sort(xs.begin(), xs.end(), [&](int ca, int cb) {
                const ChordInfo& da = other_chord(ca);
                const ChordInfo& db = other_chord(cb);
                // da before db iff da separates the in endpoint from db:
                // both db endpoints on the non-in side of da.
                bool db_in_side_in =
                    in_ccw_arc(db.pos_in, da.pos_in, da.pos_out) ==
                    in_ccw_arc(ch.pos_in, da.pos_in, da.pos_out);
                bool db_out_side_in =
                    in_ccw_arc(db.pos_out, da.pos_in, da.pos_out) ==
                    in_ccw_arc(ch.pos_in, da.pos_in, da.pos_out);
                return !db_in_side_in && !db_out_side_in;
            });
            ch.cross = xs;
            int prev = ch.node_in;
            for (size_t s = 0; s <= xs.size(); ++s) {
                int nxt = s == xs.size()
                              ? ch.node_out
                              : arr.crossings[static_cast<size_t>(xs[s])].node;
                Arrangement::Edge e{Arrangement::EdgeKind::ChordSeg, prev, nxt};
                e.curve = ch.curve;
                e.step = ch.step;
                e.seg = static_cast<int>(s);
                ch.segs.push_back(bld.add_edge(e));
                prev = nxt;
            }
            // Record per-crossing segment indices.
            for (size_t s = 0; s < xs.size(); ++s) {
                auto& cr = arr.crossings[static_cast<size_t>(xs[s])];
                if (cr.curve1 == ch.curve && cr.step1 == ch.step)
                    cr.seg1 = static_cast<int>(s);
                else
                    cr.seg2 = static_cast<int>(s);
            }
        }
    }
    arr.node_count = bld.next_node;

    // --- face tracing inside each rectangle ------------------------------------

    // Rotation system: for each node, incident darts in ccw order.
    // A dart here is (edge, fwd). Rotations are built per rectangle.
    bld.edge_faces.assign(arr.edges.size(), {});

    auto register_face = [&](std::vector<Arrangement::Dart> cycle, bool in_band,
                             int rect) {
        int f = static_cast<int>(arr.faces.size());
        for (size_t i = 0; i < cycle.size(); ++i)
            bld.edge_faces[static_cast<size_t>(cycle[i].edge)].push_back(
                {f, static_cast<int>(i), cycle[i].fwd});
        arr.faces.push_back({std::move(cycle), in_band, rect});
        return f;
    };

    for (int rect = 0; rect < n; ++rect) {
        RectLocal& L = locals[static_cast<size_t>(rect)];
        const int m = static_cast<int>(L.circle.size());

        // Boundary edges between consecutive circle nodes, ccw direction.
        // These are exactly the gap edges; recover ids side by side.
        struct BDart {
            int edge;
            bool fwd; // true if the edge's (a -> b) direction is ccw
        };
        std::vector<BDart> bdarts; // bdarts[k]: from circle[k] to circle[k+1]
        {
            // Walk sides in ccw order, collecting their gaps with direction.
            auto push_side = [&](Side side) {
                const auto& lst = pl.side_list(rect, side);
                int gaps = static_cast<int>(lst.size()) + 1;
                if (ccw_dir_of(side) > 0)
                    for (int k = 0; k < gaps; ++k)
                        bdarts.push_back(
                            {bld.gap_ids.at({rect, static_cast<int>(side), k}), true});
                else
                    for (int k = gaps - 1; k >= 0; --k)
                        bdarts.push_back(
                            {bld.gap_ids.at({rect, static_cast<int>(side), k}), false});
            };
            push_side(Side::B);
            push_side(Side::R);
            push_side(Side::T);
            push_side(Side::L);
        }
        assert(static_cast<int>(bdarts.size()) == m);

        // Rotations.
        std::map<int, std::vector<Arrangement::Dart>> rot;
        for (int k = 0; k < m; ++k) {
            int node = L.circle[static_cast<size_t>(k)];
            std::vector<Arrangement::Dart> r;
            // ccw tangent: boundary dart leaving ccw.
            r.push_back({bdarts[static_cast<size_t>(k)].edge,
                         bdarts[static_cast<size_t>(k)].fwd});
            // inward chord end, if an instance with a chord here.
            auto it = L.chord_of_instance.find(node);
            if (it != L.chord_of_instance.end()) {
                const ChordInfo& ch = L.chords[static_cast<size_t>(it->second.first)];
                if (it->second.second == 0)
                    r.push_back({ch.segs.front(), true}); // from in endpoint inward
                else
                    r.push_back({ch.segs.back(), false}); // from out endpoint inward
            }
            // cw tangent: boundary dart leaving cw (reverse of previous bdart).
            int prev = (k + m - 1) % m;
            r.push_back({bdarts[static_cast<size_t>(prev)].edge,
                         !bdarts[static_cast<size_t>(prev)].fwd});
            rot[node] = std::move(r);
        }
        for (size_t x = 0; x < L.chords.size(); ++x) {
            const ChordInfo& ch = L.chords[x];
            for (size_t s = 0; s < ch.cross.size(); ++s) {
                int crossing = ch.cross[s];
                const auto& cr = arr.crossings[static_cast<size_t>(crossing)];
                if (!(cr.curve1 == ch.curve && cr.step1 == ch.step))
                    continue; // handle each crossing once, from chord 1
                // gamma = this chord, delta = the other one.
                const ChordInfo* delta = nullptr;
                for (const auto& cand : L.chords)
                    if (cand.curve == cr.curve2 && cand.step == cr.step2)
                        delta = &cand;
                assert(delta);
                int sd = cr.seg2;
                // gamma darts at the crossing.
                Arrangement::Dart g_to_u{ch.segs[s], false};
                Arrangement::Dart g_to_v{ch.segs[s + 1], true};
                Arrangement::Dart d_to_p{delta->segs[static_cast<size_t>(sd)], false};
                Arrangement::Dart d_to_q{delta->segs[static_cast<size_t>(sd + 1)], true};
                bool p_in_uv = [&] {
                    // p (= delta's in endpoint) inside ccw arc (u -> v)?
                    int u = ch.pos_in, v = ch.pos_out, p = delta->pos_in;
                    if (u < v)
                        return u < p && p < v;
                    return p > u || p < v;
                }();
                std::vector<Arrangement::Dart> r;
                if (p_in_uv)
                    r = {g_to_v, d_to_q, g_to_u, d_to_p};
                else
                    r = {g_to_v, d_to_p, g_to_u, d_to_q};
                rot[cr.node] = std::move(r);
            }
        }

        // Face tracing: next dart of a face = rotation-successor of the
        // reversed dart at its head node.
        auto head_of = [&](Arrangement::Dart d) {
            const auto& e = arr.edges[static_cast<size_t>(d.edge)];
            return d.fwd ? e.b : e.a;
        };
        // Face-on-the-left successor: rotation-previous of the reversed dart
        // (rotations are counterclockwise).
        auto succ = [&](Arrangement::Dart d) {
            int node = head_of(d);
            const auto& r = rot.at(node);
            Arrangement::Dart rev{d.edge, !d.fwd};
            for (size_t i = 0; i < r.size(); ++i)
                if (r[i] == rev)
                    return r[(i + r.size() - 1) % r.size()];
            throw std::logic_error("dart missing from rotation");
        };

        std::set<std::pair<int, bool>> used;
        // Collect all darts of this rect-local graph.
        std::vector<Arrangement::Dart> all;
        for (const auto& [node, r] : rot)
            for (const auto& d : r)
                all.push_back(d);
        for (const auto& d0 : all) {
            if (used.count({d0.edge, d0.fwd}))
                continue;
            std::vector<Arrangement::Dart> cycle;
            Arrangement::Dart d = d0;
            do {
                used.insert({d.edge, d.fwd});
                cycle.push_back(d);
                d = succ(d);
            } while (!(d == d0));
            // Outer face: traverses some boundary gap clockwise.
            bool outer = false;
            for (const auto& dd : cycle) {
                if (arr.edges[static_cast<size_t>(dd.edge)].kind !=
                    Arrangement::EdgeKind::Gap)
                    continue;
                // find its ccw direction
                for (const auto& bd : bdarts)
                    if (bd.edge == dd.edge && bd.fwd != dd.fwd)
                        outer = true;
            }
            if (!outer)
                register_face(std::move(cycle), false, rect);
        }
    }

    // --- band strips -----------------------------------------------------------

    for (int core = 0; core < 2; ++core)
        for (int band = 0; band < n; ++band) {
            Band bd = cfg.band(static_cast<CoreId>(core), band);
            const auto& near = pl.side_list(bd.from.rect, bd.from.side);
            const auto& far = pl.side_list(bd.to.rect, bd.to.side);
            const int m = static_cast<int>(near.size());
            assert(static_cast<int>(far.size()) == m);

            auto strand_edge_of = [&](int near_pos) {
                int inst = near[static_cast<size_t>(near_pos)];
                const Instance& e = pl.instances[static_cast<size_t>(inst)];
                return strand_ids.at({e.curve, e.trans});
            };
            auto gap_near = [&](int k) {
                return bld.gap_ids.at(
                    {bd.from.rect, static_cast<int>(bd.from.side), k});
            };
            auto gap_far = [&](int k) {
                return bld.gap_ids.at({bd.to.rect, static_cast<int>(bd.to.side), k});
            };
            int free_lo = bld.free_ids.at({core, band, 0}); // gside Minus
            int free_hi = bld.free_ids.at({core, band, 1});

            for (int k = 0; k <= m; ++k) {
                // Strip k lies between near strands k-1 and k. Build its
                // cycle as a closed node walk; directions recorded per edge.
                std::vector<Arrangement::Dart> cycle;
                auto add = [&](int edge, int from_node) {
                    const auto& e = arr.edges[static_cast<size_t>(edge)];
                    bool fwd = (e.a == from_node);
                    assert(fwd || e.b == from_node);
                    cycle.push_back({edge, fwd});
                    return fwd ? e.b : e.a;
                };
                // Start at the near-side node bounding the strip from above:
                // strand k's near node, or the hi corner for k == m.
                int start = k == m
                                ? corner_index(side_corner_hi(bd.from.rect, bd.from.side))
                                : bld.instance_node(near[static_cast<size_t>(k)]);
                int cur = start;
                // near gap k traversed downward (hi -> lo).
                {
                    const auto& e = arr.edges[static_cast<size_t>(gap_near(k))];
                    assert(e.b == cur);
                    cycle.push_back({gap_near(k), false});
                    cur = e.a;
                }
                // lower boundary: strand k-1 (near -> far) or free edge.
                if (k == 0) {
                    cur = add(free_lo, cur);
                } else {
                    cur = add(strand_edge_of(k - 1), cur);
                }
                // far gap: index depends on flip; traverse from cur.
                int far_gap = bd.flip ? (m - k) : k;
                cur = add(gap_far(far_gap), cur);
                // upper boundary back: strand k or free edge.
                if (k == m) {
                    cur = add(free_hi, cur);
                } else {
                    cur = add(strand_edge_of(k), cur);
                }
                assert(cur == start);
                register_face(std::move(cycle), true, core * n + band);
            }
        }

    // --- sanity: incidence counts ----------------------------------------------

    for (size_t e = 0; e < arr.edges.size(); ++e) {
        size_t want = arr.edges[e].kind == Arrangement::EdgeKind::Free ? 1 : 2;
        if (bld.edge_faces[e].size() != want)
            throw std::logic_error(
                "bad face incidence count on edge " + std::to_string(e) + " kind " +
                std::to_string(static_cast<int>(arr.edges[e].kind)) + ": " +
                std::to_string(bld.edge_faces[e].size()) + " (nodes " +
                std::to_string(arr.edges[e].a) + "," + std::to_string(arr.edges[e].b) +
                ")");
    }

    // --- regions ----------------------------------------------------------------

    const int F = static_cast<int>(arr.faces.size());
    std::vector<int> uf(static_cast<size_t>(F));
    std::vector<int> par(static_cast<size_t>(F), 0); // orientation flip vs root
    std::iota(uf.begin(), uf.end(), 0);
    std::vector<bool> bad(static_cast<size_t>(F), false); // root-flag: nonorientable
    std::function<std::pair<int, int>(int)> find = [&](int x) -> std::pair<int, int> {
        if (uf[static_cast<size_t>(x)] == x)
            return {x, 0};
        auto [r, p] = find(uf[static_cast<size_t>(x)]);
        uf[static_cast<size_t>(x)] = r;
        par[static_cast<size_t>(x)] ^= p;
        return {r, par[static_cast<size_t>(x)]};
    };
    auto unite = [&](int x, int y, int rel) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) {
            if ((px ^ py) != rel)
                bad[static_cast<size_t>(rx)] = true;
            return;
        }
        uf[static_cast<size_t>(ry)] = rx;
        par[static_cast<size_t>(ry)] = px ^ py ^ rel;
        if (bad[static_cast<size_t>(ry)])
            bad[static_cast<size_t>(rx)] = true;
    };

    for (size_t e = 0; e < arr.edges.size(); ++e) {
        if (arr.edges[e].kind != Arrangement::EdgeKind::Gap)
            continue;
        const auto& inc = bld.edge_faces[e];
        // Compatible orientation <=> opposite traversal directions.
        int rel = (inc[0].fwd == inc[1].fwd) ? 1 : 0;
        unite(inc[0].face, inc[1].face, rel);
    }

    std::map<int, int> region_of_root;
    arr.face_region.assign(static_cast<size_t>(F), -1);
    for (int f = 0; f < F; ++f) {
        int root = find(f).first;
        auto it = region_of_root.find(root);
        if (it == region_of_root.end()) {
            int id = static_cast<int>(arr.regions.size());
            region_of_root[root] = id;
            Arrangement::RegionInfo reg;
            reg.id = id;
            reg.cells_orientable = !bad[static_cast<size_t>(root)];
            arr.regions.push_back(reg);
            it = region_of_root.find(root);
        }
        arr.face_region[static_cast<size_t>(f)] = it->second;
        arr.regions[static_cast<size_t>(it->second)].faces.push_back(f);
    }

    // chi of the cut region: faces are polygons glued only across gap edges,
    // so vertices must be counted per local sheet (a region touching itself
    // at a crossing point has two sheets there).
    for (auto& reg : arr.regions) {
        // Wedges: (face, i) is the corner between cycle[i] and cycle[i+1].
        std::map<std::pair<int, int>, int> wedge_id;
        std::vector<int> wedge_node;
        auto head_node = [&](int f, int i) {
            const auto& d = arr.faces[static_cast<size_t>(f)].cycle[static_cast<size_t>(i)];
            const auto& e = arr.edges[static_cast<size_t>(d.edge)];
            return d.fwd ? e.b : e.a;
        };
        for (int f : reg.faces) {
            int len = static_cast<int>(arr.faces[static_cast<size_t>(f)].cycle.size());
            for (int i = 0; i < len; ++i) {
                wedge_id[{f, i}] = static_cast<int>(wedge_node.size());
                wedge_node.push_back(head_node(f, i));
            }
        }
        std::vector<int> wuf(wedge_node.size());
        std::iota(wuf.begin(), wuf.end(), 0);
        std::function<int(int)> wfind = [&](int x) {
            while (wuf[static_cast<size_t>(x)] != x)
                x = wuf[static_cast<size_t>(x)] =
                    wuf[static_cast<size_t>(wuf[static_cast<size_t>(x)])];
            return x;
        };
        auto wunite = [&](int x, int y) {
            wuf[static_cast<size_t>(wfind(x))] = wfind(y);
        };
        int gap_edges = 0, boundary_incidences = 0;
        std::set<int> counted_gaps;
        for (int f : reg.faces) {
            int len = static_cast<int>(arr.faces[static_cast<size_t>(f)].cycle.size());
            for (int i = 0; i < len; ++i) {
                const auto& d =
                    arr.faces[static_cast<size_t>(f)].cycle[static_cast<size_t>(i)];
                if (arr.edges[static_cast<size_t>(d.edge)].kind !=
                    Arrangement::EdgeKind::Gap) {
                    ++boundary_incidences;
                    continue;
                }
                if (!counted_gaps.insert(d.edge).second)
                    continue;
                ++gap_edges;
                // Glue the wedges at both ends of the shared gap.
                const auto& inc = bld.edge_faces[static_cast<size_t>(d.edge)];
                auto wedges_at = [&](const Builder::Incidence& in, int node) {
                    int len2 =
                        static_cast<int>(arr.faces[static_cast<size_t>(in.face)]
                                             .cycle.size());
                    int before = (in.pos + len2 - 1) % len2;
                    std::vector<int> out;
                    if (wedge_node[static_cast<size_t>(wedge_id.at({in.face, before}))] ==
                        node)
                        out.push_back(wedge_id.at({in.face, before}));
                    if (wedge_node[static_cast<size_t>(wedge_id.at({in.face, in.pos}))] ==
                        node)
                        out.push_back(wedge_id.at({in.face, in.pos}));
                    return out;
                };
                const auto& e = arr.edges[static_cast<size_t>(d.edge)];
                for (int node : {e.a, e.b}) {
                    auto w1 = wedges_at(inc[0], node);
                    auto w2 = wedges_at(inc[1], node);
                    if (w1.size() == 1 && w2.size() == 1)
                        wunite(w1[0], w2[0]);
                    else
                        throw std::logic_error("ambiguous wedge gluing at a gap end");
                }
            }
        }
        std::set<int> sheets;
        for (size_t wdg = 0; wdg < wedge_node.size(); ++wdg)
            sheets.insert(wfind(static_cast<int>(wdg)));
        reg.chi_cells = static_cast<int>(sheets.size()) -
                        (gap_edges + boundary_incidences) +
                        static_cast<int>(reg.faces.size());
    }

    // rims: boundary circles of each cut region. The walk travels through
    // face cycles with a sense (+1 follows the stored cycle, -1 runs it
    // backward); crossing a glue edge may reverse the sense, which is what a
    // flipped band gluing requires.
    {
        auto edge_of = [&](int f, int i) -> const Arrangement::Edge& {
            return arr.edges[static_cast<size_t>(
                arr.faces[static_cast<size_t>(f)].cycle[static_cast<size_t>(i)].edge)];
        };
        auto dart_at = [&](int f, int i) {
            return arr.faces[static_cast<size_t>(f)].cycle[static_cast<size_t>(i)];
        };
        auto cyc_len = [&](int f) {
            return static_cast<int>(arr.faces[static_cast<size_t>(f)].cycle.size());
        };

        std::set<std::pair<int, int>> used; // (face, position), any sense
        for (int f0 = 0; f0 < F; ++f0) {
            const int L0 = cyc_len(f0);
            for (int i0 = 0; i0 < L0; ++i0) {
                if (edge_of(f0, i0).kind == Arrangement::EdgeKind::Gap)
                    continue;
                if (used.count({f0, i0}))
                    continue;
                Arrangement::Rim rim;
                rim.all_free = true;
                int f = f0, i = i0, sense = 1;
                while (used.insert({f, i}).second) {
                    auto d = dart_at(f, i);
                    if (sense < 0)
                        d.fwd = !d.fwd; // traveled direction
                    rim.darts.push_back(d);
                    rim.faces.push_back(f);
                    if (arr.edges[static_cast<size_t>(d.edge)].kind !=
                        Arrangement::EdgeKind::Free)
                        rim.all_free = false;
                    // Advance to the next cycle element in the travel sense,
                    // crossing glue edges as they come.
                    int nf = f, ni = i, ns = sense;
                    ni = (ni + ns + cyc_len(nf)) % cyc_len(nf);
                    while (edge_of(nf, ni).kind == Arrangement::EdgeKind::Gap) {
                        auto gd = dart_at(nf, ni);
                        const auto& ge = arr.edges[static_cast<size_t>(gd.edge)];
                        // Node where our travel meets the gap.
                        bool travel_fwd = (ns > 0) == gd.fwd;
                        int u = travel_fwd ? ge.a : ge.b;
                        const auto& inc = bld.edge_faces[static_cast<size_t>(gd.edge)];
                        const auto& other =
                            (inc[0].face == nf && inc[0].pos == ni) ? inc[1] : inc[0];
                        // Continue in the other face away from the gap at u.
                        const auto& od =
                            dart_at(other.face, other.pos);
                        const auto& oe = arr.edges[static_cast<size_t>(od.edge)];
                        int stored_tail = od.fwd ? oe.a : oe.b;
                        nf = other.face;
                        if (u == stored_tail) {
                            ns = -1;
                            ni = (other.pos - 1 + cyc_len(nf)) % cyc_len(nf);
                        } else {
                            ns = +1;
                            ni = (other.pos + 1) % cyc_len(nf);
                        }
                    }
                    f = nf;
                    i = ni;
                    sense = ns;
                }
                int reg = arr.face_region[static_cast<size_t>(f0)];
                arr.regions[static_cast<size_t>(reg)].rims.push_back(std::move(rim));
            }
        }
        for (const auto& reg : arr.regions)
            for (const auto& rim : reg.rims)
                if (!rim.all_free)
                    for (const auto& d : rim.darts)
                        if (arr.edges[static_cast<size_t>(d.edge)].kind ==
                            Arrangement::EdgeKind::Free)
                            throw std::logic_error("rim mixes walls and free edges");
    }

    // caps: attach each boundary region of the complex to its region.
    {
        auto cfg_regions = boundary_regions(cfg);
        for (const auto& creg : cfg_regions) {
            // Find the arrangement region touching this boundary circle.
            const auto& item = creg.walk.front();
            int eid = bld.free_ids.at({static_cast<int>(item.edge.core),
                                       item.edge.band,
                                       item.edge.gside == Sign::Plus ? 1 : 0});
            int face = bld.edge_faces[static_cast<size_t>(eid)].front().face;
            auto& reg =
                arr.regions[static_cast<size_t>(arr.face_region[static_cast<size_t>(face)])];
            switch (creg.cap.kind) {
            case CapKind::Open: reg.open_boundary = true; break;
            case CapKind::Disk: ++reg.disk_caps; break;
            case CapKind::PuncturedDisk:
                ++reg.disk_caps;
                reg.punctures += creg.cap.punctures;
                break;
            case CapKind::Mobius: reg.mobius_cap = true; break;
            case CapKind::Other: reg.other_cap = true; break;
            }
            // annotate the rim
            for (auto& rim :
                 arr.regions[static_cast<size_t>(arr.face_region[static_cast<size_t>(face)])]
                     .rims)
                if (rim.all_free && rim.cfg_region < 0) {
                    for (const auto& d : rim.darts)
                        if (d.edge == eid)
                            rim.cfg_region = creg.id;
                }
        }
    }

    return arr;
}

// --- bigons ------------------------------------------------------------------

std::vector<BigonFind> find_bigons(const Arrangement& arr, int x, int y) {
    std::vector<BigonFind> out;
    for (const auto& reg : arr.regions) {
        if (!reg.is_disk())
            continue;
        // Exactly one rim of walls; it must consist of one run of each curve.
        const Arrangement::Rim* wall = nullptr;
        bool extra_wall = false;
        for (const auto& rim : reg.rims)
            if (!rim.all_free) {
                if (wall)
                    extra_wall = true;
                wall = &rim;
            }
        if (!wall || extra_wall)
            continue;
        // Curve of each dart.
        std::vector<int> owner;
        bool foreign = false;
        for (const auto& d : wall->darts) {
            int c = arr.edges[static_cast<size_t>(d.edge)].curve;
            if (c != x && c != y)
                foreign = true;
            owner.push_back(c);
        }
        if (foreign)
            continue;
        // Count maximal runs cyclically.
        const int L = static_cast<int>(owner.size());
        int transitions = 0;
        bool has_x = false, has_y = false;
        for (int i = 0; i < L; ++i) {
            if (owner[static_cast<size_t>(i)] != owner[static_cast<size_t>((i + 1) % L)])
                ++transitions;
            has_x |= owner[static_cast<size_t>(i)] == x;
            has_y |= owner[static_cast<size_t>(i)] == y;
        }
        if (!(transitions == 2 && has_x && has_y))
            continue;
        // Extract the two runs starting from a transition point.
        int start = 0;
        while (start < L && owner[static_cast<size_t>(start)] ==
                                owner[static_cast<size_t>((start + L - 1) % L)])
            ++start;
        assert(start < L);
        BigonFind bf;
        bf.region = reg.id;
        bf.curve_x = x;
        bf.curve_y = y;
        for (int i = 0; i < L; ++i) {
            int k = (start + i) % L;
            if (owner[static_cast<size_t>(k)] == x) {
                bf.run_x.push_back(wall->darts[static_cast<size_t>(k)]);
                bf.run_x_faces.push_back(wall->faces[static_cast<size_t>(k)]);
            } else {
                bf.run_y.push_back(wall->darts[static_cast<size_t>(k)]);
                bf.run_y_faces.push_back(wall->faces[static_cast<size_t>(k)]);
            }
        }
        out.push_back(std::move(bf));
    }
    return out;
}

} // namespace twistlab
