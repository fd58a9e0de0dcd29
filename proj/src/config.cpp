#include "twistlab/config.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace twistlab {

const char* side_name(Side s) {
    switch (s) {
    case Side::L: return "L";
    case Side::R: return "R";
    case Side::B: return "B";
    case Side::T: return "T";
    }
    return "?";
}

char sign_char(Sign s) { return s == Sign::Plus ? 'p' : 'm'; }

CoreId other_core(CoreId c) { return c == CoreId::A ? CoreId::B : CoreId::A; }

std::optional<HalfSide> parse_half_side(const std::string& token) {
    if (token.size() != 2)
        return std::nullopt;
    Side side;
    switch (token[0]) {
    case 'L': side = Side::L; break;
    case 'R': side = Side::R; break;
    case 'B': side = Side::B; break;
    case 'T': side = Side::T; break;
    default: return std::nullopt;
    }
    Sign sign;
    switch (token[1]) {
    case 'p': sign = Sign::Plus; break;
    case 'm': sign = Sign::Minus; break;
    default: return std::nullopt;
    }
    return HalfSide{side, sign};
}

std::string half_side_token(HalfSide h) {
    std::string s;
    s += side_name(h.side)[0];
    s += sign_char(h.sign);
    return s;
}

namespace {

// a-parity: 1 above the a-core, 0 below.
int a_parity(HalfSide h) {
    switch (h.side) {
    case Side::T: return 1;
    case Side::B: return 0;
    default: return h.sign == Sign::Plus ? 1 : 0;
    }
}

// b-parity: 1 right of the b-core, 0 left.
int b_parity(HalfSide h) {
    switch (h.side) {
    case Side::R: return 1;
    case Side::L: return 0;
    default: return h.sign == Sign::Plus ? 1 : 0;
    }
}

} // namespace

bool chord_crosses_a(HalfSide in, HalfSide out) { return a_parity(in) != a_parity(out); }
bool chord_crosses_b(HalfSide in, HalfSide out) { return b_parity(in) != b_parity(out); }
bool chord_crosses(CoreId core, HalfSide in, HalfSide out) {
    return core == CoreId::A ? chord_crosses_a(in, out) : chord_crosses_b(in, out);
}

std::string cap_to_string(const Cap& cap) {
    switch (cap.kind) {
    case CapKind::Open: return "open";
    case CapKind::Disk: return "disk";
    case CapKind::PuncturedDisk: return "punctured " + std::to_string(cap.punctures);
    case CapKind::Mobius: return "mobius";
    case CapKind::Other: return "other";
    }
    return "?";
}

int Configuration::pos_in_b(int rect) const {
    for (int j = 0; j < n; ++j)
        if (b_order[j] == rect)
            return j;
    throw std::logic_error("pos_in_b: rect not in b_order");
}

Band Configuration::band(CoreId core, int index) const {
    assert(index >= 0 && index < n);
    if (core == CoreId::A) {
        return Band{CoreId::A, index, {index, Side::R}, {(index + 1) % n, Side::L},
                    a_flips[index]};
    }
    return Band{CoreId::B, index, {b_order[index], Side::T},
                {b_order[(index + 1) % n], Side::B}, b_flips[index]};
}

Configuration::Attachment Configuration::attachment(int rect, Side side) const {
    switch (side) {
    case Side::R: return {CoreId::A, rect, true};
    case Side::L: return {CoreId::A, (rect + n - 1) % n, false};
    case Side::T: return {CoreId::B, pos_in_b(rect), true};
    case Side::B: return {CoreId::B, (pos_in_b(rect) + n - 1) % n, false};
    }
    throw std::logic_error("attachment: bad side");
}

Configuration::Transport Configuration::transport(int rect, Side side, Sign sign) const {
    Attachment at = attachment(rect, side);
    Band bd = band(at.core, at.band);
    BandEnd far = at.at_from ? bd.to : bd.from;
    Sign s = sign;
    if (bd.flip)
        s = (s == Sign::Plus) ? Sign::Minus : Sign::Plus;
    return {far.rect, far.side, s};
}

Cap Configuration::cap_of(int region_id) const {
    auto it = caps.find(region_id);
    return it == caps.end() ? Cap{} : it->second;
}

// --- parsing -------------------------------------------------------------

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

} // namespace

Configuration parse_configuration(const std::string& text) {
    Configuration cfg;
    bool saw_version = false, saw_n = false, saw_border = false;
    bool saw_aflips = false, saw_bflips = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        std::string key;
        if (!(ls >> key))
            continue;

        auto read_int = [&](const char* what) {
            long long v;
            if (!(ls >> v))
                fail(lineno, std::string("expected integer for ") + what);
            return v;
        };
        auto read_bits = [&](int count) {
            std::vector<int> bits;
            for (int i = 0; i < count; ++i) {
                long long v = read_int("flip bit");
                if (v != 0 && v != 1)
                    fail(lineno, "flip bits must be 0 or 1");
                bits.push_back(static_cast<int>(v));
            }
            return bits;
        };
        auto expect_end = [&]() {
            std::string extra;
            if (ls >> extra)
                fail(lineno, "trailing token '" + extra + "'");
        };

        if (key == "config-version") {
            if (saw_version)
                fail(lineno, "duplicate config-version");
            if (read_int("config-version") != 1)
                fail(lineno, "unsupported config-version");
            saw_version = true;
            expect_end();
        } else if (key == "n") {
            if (saw_n)
                fail(lineno, "duplicate key n");
            long long v = read_int("n");
            if (v < 1 || v > 1000000)
                fail(lineno, "n out of range");
            cfg.n = static_cast<int>(v);
            saw_n = true;
            expect_end();
        } else if (key == "b-order") {
            if (!saw_n)
                fail(lineno, "b-order before n");
            if (saw_border)
                fail(lineno, "duplicate key b-order");
            std::vector<bool> seen(cfg.n, false);
            for (int i = 0; i < cfg.n; ++i) {
                long long v = read_int("b-order entry");
                if (v < 0 || v >= cfg.n)
                    fail(lineno, "b-order entry out of range");
                if (seen[static_cast<size_t>(v)])
                    fail(lineno, "b-order is not a permutation");
                seen[static_cast<size_t>(v)] = true;
                cfg.b_order.push_back(static_cast<int>(v));
            }
            saw_border = true;
            expect_end();
        } else if (key == "a-flips") {
            if (!saw_n)
                fail(lineno, "a-flips before n");
            if (saw_aflips)
                fail(lineno, "duplicate key a-flips");
            cfg.a_flips = read_bits(cfg.n);
            saw_aflips = true;
            expect_end();
        } else if (key == "b-flips") {
            if (!saw_n)
                fail(lineno, "b-flips before n");
            if (saw_bflips)
                fail(lineno, "duplicate key b-flips");
            cfg.b_flips = read_bits(cfg.n);
            saw_bflips = true;
            expect_end();
        } else if (key == "cap") {
            std::string rtok;
            if (!(ls >> rtok) || rtok.size() < 2 || rtok[0] != 'R')
                fail(lineno, "cap expects a region id like R0");
            int rid;
            try {
                rid = std::stoi(rtok.substr(1));
            } catch (...) {
                fail(lineno, "bad region id '" + rtok + "'");
            }
            if (cfg.caps.count(rid))
                fail(lineno, "duplicate cap for region " + std::to_string(rid));
            std::string kind;
            if (!(ls >> kind))
                fail(lineno, "cap expects a kind");
            Cap cap;
            if (kind == "open")
                cap.kind = CapKind::Open;
            else if (kind == "disk")
                cap.kind = CapKind::Disk;
            else if (kind == "mobius")
                cap.kind = CapKind::Mobius;
            else if (kind == "other")
                cap.kind = CapKind::Other;
            else if (kind == "punctured") {
                cap.kind = CapKind::PuncturedDisk;
                long long m = read_int("puncture count");
                if (m < 1)
                    fail(lineno, "punctured cap needs m >= 1");
                cap.punctures = static_cast<int>(m);
            } else
                fail(lineno, "unknown cap kind '" + kind + "'");
            cfg.caps[rid] = cap;
            expect_end();
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }

    if (!saw_n)
        throw std::runtime_error("missing key: n");
    if (!saw_border)
        throw std::runtime_error("missing key: b-order");
    if (!saw_aflips)
        throw std::runtime_error("missing key: a-flips");
    if (!saw_bflips)
        throw std::runtime_error("missing key: b-flips");
    return cfg;
}

Configuration load_configuration(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open configuration file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_configuration(ss.str());
}

std::string format_configuration(const Configuration& cfg) {
    std::ostringstream out;
    out << "config-version 1\n";
    out << "n " << cfg.n << "\n";
    out << "b-order";
    for (int v : cfg.b_order)
        out << ' ' << v;
    out << "\na-flips";
    for (int v : cfg.a_flips)
        out << ' ' << v;
    out << "\nb-flips";
    for (int v : cfg.b_flips)
        out << ' ' << v;
    out << "\n";
    for (const auto& [rid, cap] : cfg.caps)
        out << "cap R" << rid << ' ' << cap_to_string(cap) << "\n";
    return out.str();
}

// --- boundary regions ----------------------------------------------------

int corner_index(const Corner& c) {
    int a = c.aside == Side::L ? 0 : 1;
    int b = c.bside == Side::B ? 0 : 1;
    return c.rect * 4 + a * 2 + b;
}

// Endpoints of a free edge. The `gside` sign names the half-side of the
// band's `from` end the edge is adjacent to; flips swap it at the far end.
std::pair<Corner, Corner> free_edge_corners(const Configuration& cfg,
                                            const FreeEdge& e) {
    Band bd = cfg.band(e.core, e.band);
    Sign far = bd.flip ? (e.gside == Sign::Plus ? Sign::Minus : Sign::Plus) : e.gside;
    if (e.core == CoreId::A) {
        // a-band: from (i, R) to (i+1, L); edge sign '+' runs along the T corners.
        Corner c0{bd.from.rect, Side::R, e.gside == Sign::Plus ? Side::T : Side::B};
        Corner c1{bd.to.rect, Side::L, far == Sign::Plus ? Side::T : Side::B};
        return {c0, c1};
    }
    // b-band: from (r, T) to (r', B); edge sign '+' runs along the R corners.
    Corner c0{bd.from.rect, e.gside == Sign::Plus ? Side::R : Side::L, Side::T};
    Corner c1{bd.to.rect, far == Sign::Plus ? Side::R : Side::L, Side::B};
    return {c0, c1};
}

namespace {

int corner_id(const Configuration& cfg, const Corner& c) {
    (void)cfg;
    return corner_index(c);
}

Corner corner_from_id(int id) {
    Corner c;
    c.rect = id / 4;
    c.aside = ((id / 2) % 2) == 0 ? Side::L : Side::R;
    c.bside = (id % 2) == 0 ? Side::B : Side::T;
    return c;
}

std::pair<Corner, Corner> free_edge_ends(const Configuration& cfg, const FreeEdge& e) {
    return free_edge_corners(cfg, e);
}

// The two free edges incident to a corner: one a-band edge, one b-band edge.
// Returned as (edge, forward) where forward means the walk leaves the corner
// toward the band's other end.
struct IncidentEdge {
    FreeEdge edge;
    bool forward;
};

IncidentEdge incident_a_edge(const Configuration& cfg, const Corner& c) {
    // The a-band glued at side c.aside of c.rect.
    auto at = cfg.attachment(c.rect, c.aside);
    Band bd = cfg.band(at.core, at.band);
    Sign g = c.bside == Side::T ? Sign::Plus : Sign::Minus;
    if (!at.at_from && bd.flip)
        g = (g == Sign::Plus) ? Sign::Minus : Sign::Plus;
    return {FreeEdge{CoreId::A, at.band, g}, at.at_from};
}

IncidentEdge incident_b_edge(const Configuration& cfg, const Corner& c) {
    auto at = cfg.attachment(c.rect, c.bside);
    Band bd = cfg.band(at.core, at.band);
    Sign g = c.aside == Side::R ? Sign::Plus : Sign::Minus;
    if (!at.at_from && bd.flip)
        g = (g == Sign::Plus) ? Sign::Minus : Sign::Plus;
    return {FreeEdge{CoreId::B, at.band, g}, at.at_from};
}

int free_edge_key(const Configuration& cfg, const FreeEdge& e) {
    int base = e.core == CoreId::A ? 0 : 2 * cfg.n;
    return base + e.band * 2 + (e.gside == Sign::Plus ? 1 : 0);
}

} // namespace

std::vector<Region> boundary_regions(const Configuration& cfg) {
    const int n = cfg.n;
    std::vector<bool> edge_used(4 * n, false);
    std::vector<Region> regions;

    // Sanity: free edge endpoints must be consistent with corner incidence.
    for (int corner = 0; corner < 4 * n; ++corner) {
        Corner c = corner_from_id(corner);
        for (auto ie : {incident_a_edge(cfg, c), incident_b_edge(cfg, c)}) {
            auto [c0, c1] = free_edge_ends(cfg, ie.edge);
            Corner here = ie.forward ? c0 : c1;
            assert(corner_id(cfg, here) == corner);
            (void)here;
        }
    }

    for (int start = 0; start < 4 * n; ++start) {
        Corner c = corner_from_id(start);
        IncidentEdge first = incident_a_edge(cfg, c);
        if (edge_used[static_cast<size_t>(free_edge_key(cfg, first.edge))])
            continue;

        Region reg;
        reg.id = static_cast<int>(regions.size());
        Corner cur = c;
        IncidentEdge next = first;
        bool last_was_a = true;
        do {
            int key = free_edge_key(cfg, next.edge);
            assert(!edge_used[static_cast<size_t>(key)]);
            edge_used[static_cast<size_t>(key)] = true;
            reg.walk.push_back(WalkItem{next.edge, next.forward});
            if (next.edge.core == CoreId::A)
                ++reg.a_arcs;
            else
                ++reg.b_arcs;
            auto [c0, c1] = free_edge_ends(cfg, next.edge);
            cur = next.forward ? c1 : c0;
            // Alternate: leave through the other-core edge at this corner.
            next = last_was_a ? incident_b_edge(cfg, cur) : incident_a_edge(cfg, cur);
            last_was_a = !last_was_a;
        } while (!(corner_id(cfg, cur) == start && last_was_a));
        regions.push_back(std::move(reg));
    }

    for (auto& r : regions)
        r.cap = cfg.cap_of(r.id);
    return regions;
}

// --- predicates ----------------------------------------------------------

bool is_orientable_neighbourhood(const Configuration& cfg) {
    // BFS potentials over the band graph; orientable iff every band's flip
    // matches the potential difference of its endpoints.
    const int n = cfg.n;
    std::vector<int> pot(n, -1);
    pot[0] = 0;
    std::vector<int> stack{0};
    auto edges_of = [&](int rect) {
        std::vector<std::pair<int, int>> out; // (other rect, flip)
        Band a_fwd = cfg.band(CoreId::A, rect);
        out.push_back({a_fwd.to.rect, a_fwd.flip});
        Band a_bwd = cfg.band(CoreId::A, (rect + n - 1) % n);
        out.push_back({a_bwd.from.rect, a_bwd.flip});
        int j = cfg.pos_in_b(rect);
        Band b_fwd = cfg.band(CoreId::B, j);
        out.push_back({b_fwd.to.rect, b_fwd.flip});
        Band b_bwd = cfg.band(CoreId::B, (j + n - 1) % n);
        out.push_back({b_bwd.from.rect, b_bwd.flip});
        return out;
    };
    while (!stack.empty()) {
        int r = stack.back();
        stack.pop_back();
        for (auto [other, flip] : edges_of(r)) {
            int want = pot[r] ^ flip;
            if (pot[other] == -1) {
                pot[other] = want;
                stack.push_back(other);
            } else if (pot[other] != want) {
                return false;
            }
        }
    }
    return true;
}

bool core_is_two_sided(const Configuration& cfg, CoreId core) {
    const auto& flips = core == CoreId::A ? cfg.a_flips : cfg.b_flips;
    int sum = 0;
    for (int f : flips)
        sum ^= f;
    return sum == 0;
}

Sidedness closed_walk_sidedness(const Configuration& cfg,
                                const std::vector<BandStep>& walk) {
    int parity = 0;
    for (const auto& step : walk)
        parity ^= cfg.band(step.core, step.band).flip;
    return parity ? Sidedness::OneSided : Sidedness::TwoSided;
}

int euler_characteristic(const Configuration& cfg) {
    // Cells of the rectangle complex: 4n corner vertices, 4n rectangle side
    // edges plus 4n free band edges, n rectangles plus 2n bands.
    int v = 4 * cfg.n;
    int e = 8 * cfg.n;
    int f = 3 * cfg.n;
    return v - e + f;
}

} // namespace twistlab
