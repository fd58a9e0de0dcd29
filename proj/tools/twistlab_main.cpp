#include "CLI11.hpp"

#include "twistlab/freeness.hpp"
#include "twistlab/miners.hpp"
#include "twistlab/segments.hpp"
#include "twistlab/validate.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace twistlab;

namespace {

// Stable digest of the inputs for reproducible report headers.
std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct Report {
    std::ostringstream body;
    bool failed = false;
    bool inconclusive = false;

    void line(const std::string& s) { body << s << "\n"; }
    void check(const std::string& name, bool pass, const std::string& detail = {}) {
        body << (pass ? "ok   " : "FAIL ") << name;
        if (!detail.empty())
            body << "  (" << detail << ")";
        body << "\n";
        failed = failed || !pass;
    }
    int finish() {
        const char* verdict = failed ? "fail" : (inconclusive ? "inconclusive" : "pass");
        std::cout << body.str() << "RESULT " << verdict << "\n";
        return failed || inconclusive ? 1 : 0;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void echo_header(Report& rep, const std::string& command, const std::string& cfg_text) {
    rep.line("command: " + command);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg_text)));
    rep.line("config-digest: " + std::string(buf));
}

int jobs_default() {
    if (const char* env = std::getenv("TWISTLAB_JOBS"))
        return std::max(1, std::atoi(env));
    return 1;
}

CoreId parse_host(const std::string& s) {
    if (s == "a")
        return CoreId::A;
    if (s == "b")
        return CoreId::B;
    throw std::runtime_error("core/host must be 'a' or 'b'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twistlab: two Dehn twists on a nonorientable surface"};
    app.require_subcommand(1);
    int jobs = jobs_default();
    app.add_option("--jobs", jobs, "worker threads where supported");

    std::string cfg_path, curve_path, host_str = "b", core_str = "a";
    std::string hand_str = "right", word_str, target_str, emit_dir, out_path;
    int k = 1, max_k = 3, samples = 20000, max_len = 6, mine_m = 1, max_steps = 16;
    unsigned rng = 7;

    auto hand_of = [&]() { return hand_str == "left" ? Hand::Left : Hand::Right; };

    auto* c_val = app.add_subcommand("validate", "semantic checks of a configuration");
    c_val->add_option("config", cfg_path)->required();
    c_val->callback([&]() {
        Report rep;
        auto text = slurp(cfg_path);
        echo_header(rep, "validate", text);
        auto cfg = parse_configuration(text);
        auto v = validate_configuration(cfg);
        for (const auto& ck : v.checks)
            if (ck.name == "orientable neighbourhood")
                rep.line("finding: orientable neighbourhood = " + ck.detail);
            else
                rep.check(ck.name, ck.pass, ck.detail);
        std::exit(rep.finish());
    });

    auto* c_seg = app.add_subcommand("segments", "segments of one circle");
    c_seg->add_option("config", cfg_path)->required();
    c_seg->add_option("--host", host_str, "a or b")->capture_default_str();
    c_seg->callback([&]() {
        Report rep;
        auto text = slurp(cfg_path);
        echo_header(rep, "segments --host " + host_str, text);
        auto cfg = parse_configuration(text);
        for (const auto& s : segments_of(cfg, parse_host(host_str))) {
            std::ostringstream l;
            l << "seg " << s.band << ' ' << (s.forward ? "fwd" : "bwd")
              << " sided=" << (s.sidedness == Sidedness::OneSided ? 1 : 2)
              << " init_side=" << s.initial_side;
            rep.line(l.str());
        }
        std::exit(rep.finish());
    });

    auto* c_join = app.add_subcommand("joinability", "joinability classes");
    c_join->add_option("config", cfg_path)->required();
    c_join->add_option("--host", host_str)->capture_default_str();
    c_join->callback([&]() {
        Report rep;
        auto text = slurp(cfg_path);
        echo_header(rep, "joinability --host " + host_str, text);
        auto cfg = parse_configuration(text);
        auto join = joinability_classes(cfg, parse_host(host_str));
        for (size_t i = 0; i < join.classes.size(); ++i) {
            std::ostringstream l;
            l << "class " << i << ":";
            for (int id : join.classes[i])
                l << ' ' << id;
            rep.line(l.str());
        }
        std::exit(rep.finish());
    });

    auto* c_info = app.add_subcommand("curve-info", "crossing and membership report");
    c_info->add_option("config", cfg_path)->required();
    c_info->add_option("curve", curve_path)->required();
    c_info->callback([&]() {
        Report rep;
        auto text = slurp(cfg_path);
        echo_header(rep, "curve-info", text + slurp(curve_path));
        auto cfg = parse_configuration(text);
        auto c = load_curve(curve_path);
        auto fam = validate_in_C(cfg, c);
        if (!fam.word_ok || !fam.no_turn_backs || !fam.embeddable) {
            for (const auto& p : fam.problems)
                rep.check("curve admissible", false, p);
            std::exit(rep.finish());
        }
        rep.line(format_intersection_report(curve_info(cfg, c)));
        rep.check("curve generic", fam.generic);
        std::exit(rep.finish());
    });

    auto* c_red = app.add_subcommand("reduce", "remove bigons against a core");
    c_red->add_option("config", cfg_path)->required();
    c_red->add_option("curve", curve_path)->required();
    c_red->add_option("--against", core_str, "a or b")->capture_default_str();
    c_red->add_option("--out", out_path, "write the reduced curve here");
    c_red->callback([&]() {
        Report rep;
        auto text = slurp(cfg_path);
        echo_header(rep, "reduce --against " + core_str, text + slurp(curve_path));
        auto cfg = parse_configuration(text);
        auto c = load_curve(curve_path);
        auto res = reduce_to_minimal(cfg, c, parse_host(core_str));
        for (const auto& ev : res.trace) {
            std::ostringstream l;
            l << "removed bigon region=" << ev.region << " crossings "
              << ev.crossings_before << " -> " << ev.crossings_after;
            rep.line(l.str());
        }
        rep.line("reduced: " +
                 std::to_string(crossing_count(cfg, res.curve, parse_host(core_str))) +
                 " crossings");
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << format_curve(res.curve);
        }
        std::exit(rep.finish());
    });

    auto* c_tw = app.add_subcommand("twist", "apply a twist with certified reductions");
    c_tw->add_option("config", cfg_path)->required();
    c_tw->add_option("curve", curve_path)->required();
    c_tw->add_option("--core", core_str, "a or b")->capture_default_str();
    c_tw->add_option("-k", k, "twist power")->capture_default_str();
    c_tw->add_option("--hand", hand_str, "left or right")->capture_default_str();
    c_tw->add_option("--emit-stages", emit_dir, "write d, d1, d2, d3 curve files");
    c_tw->callback([&]() {
        Report rep;
        auto text = slurp(cfg_path);
        echo_header(rep, "twist", text + slurp(curve_path));
        auto cfg = parse_configuration(text);
        auto c = load_curve(curve_path);
        auto tr = twist_minimal(cfg, c, parse_host(core_str), k, hand_of());
        rep.line("raw: cross_core=" + std::to_string(tr.raw_cross_core) +
                 " cross_other=" + std::to_string(tr.raw_cross_other));
        for (const auto& ev : tr.events) {
            std::ostringstream l;
            l << "reduction type "
              << (ev.kind == ReductionEvent::Kind::I
                      ? "I"
                      : ev.kind == ReductionEvent::Kind::II ? "II" : "III")
              << " region=" << ev.region << " " << ev.before << " -> " << ev.after;
            rep.line(l.str());
        }
        rep.line(format_intersection_report(tr.report));
        rep.check("certified bigon-free", tr.certified);
        if (!emit_dir.empty()) {
            auto dump = [&](const char* name, const Curve& cur) {
                std::ofstream f(emit_dir + "/" + name + ".crv");
                f << format_curve(cur);
            };
            dump("d", tr.raw);
            dump("d1", tr.d1);
            dump("d2", tr.d2);
            dump("d3", tr.d3);
        }
        std::exit(rep.finish());
    });

    auto* c_act = app.add_subcommand("act", "apply a word in the twists to a core");
    c_act->add_option("config", cfg_path)->required();
    c_act->add_option("--word", word_str)->required();
    c_act->add_option("--seed", host_str, "a or b")->capture_default_str();
    c_act->add_option("--hand", hand_str)->capture_default_str();
    c_act->add_option("--out", out_path);
    c_act->callback([&]() {
        Report rep;
        auto text = slurp(cfg_path);
        echo_header(rep, "act --word '" + word_str + "'", text);
        auto cfg = parse_configuration(text);
        auto w = parse_word(word_str);
        auto c = act(cfg, w, parse_host(host_str), hand_of());
        rep.line(format_intersection_report(curve_info(cfg, c)));
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << format_curve(c);
        }
        std::exit(rep.finish());
    });

    auto* c_pp = app.add_subcommand("pingpong", "audit the twist set inclusions");
    c_pp->add_option("config", cfg_path)->required();
    c_pp->add_option("--max-k", max_k)->capture_default_str();
    c_pp->add_option("--samples", samples)->capture_default_str();
    c_pp->add_option("--rng", rng)->capture_default_str();
    c_pp->add_option("--hand", hand_str)->capture_default_str();
    c_pp->callback([&]() {
        Report rep;
        auto text = slurp(cfg_path);
        echo_header(rep, "pingpong", text);
        auto cfg = parse_configuration(text);
        auto r = ping_pong_audit(cfg, max_k, samples, rng, hand_of());
        rep.line("sets: " + std::string(r.use_j_sets ? "Xt (J-based)" : "X"));
        rep.line("members: " + std::to_string(r.members_a) + " in the a set, " +
                 std::to_string(r.members_b) + " in the b set; checked " +
                 std::to_string(r.checked) + " twisted pairs");
        rep.check("witnesses a, b present", r.witnesses_present);
        rep.check("sets disjoint", r.sets_disjoint);
        for (const auto& v : r.violations)
            rep.check("inclusion for k=" + std::to_string(v.k), false, v.what);
        if (r.violations.empty())
            rep.check("all sampled inclusions hold", true);
        rep.inconclusive = r.inconclusive;
        if (r.inconclusive)
            rep.line("sampler produced no set members within budget");
        std::exit(rep.finish());
    });

    auto* c_free = app.add_subcommand("freeness", "witness every short reduced word");
    c_free->add_option("config", cfg_path)->required();
    c_free->add_option("--max-len", max_len)->capture_default_str();
    c_free->add_option("--hand", hand_str)->capture_default_str();
    c_free->callback([&]() {
        Report rep;
        auto text = slurp(cfg_path);
        echo_header(rep, "freeness --max-len " + std::to_string(max_len), text);
        auto cfg = parse_configuration(text);
        auto reports = freeness_witness(cfg, max_len, hand_of(), jobs);
        rep.line(std::to_string(reports.size()) + " words witnessed");
        rep.check("every word nontrivial", true);
        std::exit(rep.finish());
    });

    auto* c_mine = app.add_subcommand("mine-examples", "search the counterexample families");
    c_mine->add_option("--target", target_str, "ex3.1 | ex3.2 | ex3.3")->required();
    c_mine->add_option("--m", mine_m, "family parameter")->capture_default_str();
    c_mine->add_option("--max-steps", max_steps)->capture_default_str();
    c_mine->callback([&]() {
        Report rep;
        rep.line("command: mine-examples --target " + target_str);
        MineBounds bounds;
        bounds.max_steps = max_steps;
        if (target_str == "ex3.3") {
            auto mob = mine_mob(mine_m);
            rep.check("found", mob.has_value());
            if (mob)
                rep.line(format_configuration(*mob));
        } else if (target_str == "ex3.1" || target_str == "ex3.2") {
            auto hit = target_str == "ex3.1" ? mine_ex31(mine_m, bounds)
                                             : mine_ex32(mine_m, bounds);
            rep.check("found", hit.has_value());
            if (hit) {
                rep.line(format_configuration(hit->cfg));
                rep.line(format_curve(hit->c));
                rep.line("c:      " + format_intersection_report(hit->info_c));
                rep.line("t_a(c): " + format_intersection_report(hit->info_tc));
            }
        } else {
            rep.check("known target", false, target_str);
        }
        std::exit(rep.finish());
    });

    auto* c_ex = app.add_subcommand("examples", "re-verify the shipped fixtures");
    std::string fixture_dir = "fixtures";
    c_ex->add_option("--dir", fixture_dir)->capture_default_str();
    c_ex->callback([&]() {
        Report rep;
        rep.line("command: examples");
        auto with_fixture = [&](const std::string& name,
                                const std::function<void(Report&, const Configuration&)>& fn) {
            try {
                auto cfg = load_configuration(fixture_dir + "/" + name);
                fn(rep, cfg);
            } catch (const std::exception& e) {
                rep.check(name, false, e.what());
            }
        };
        with_fixture("cfg-or2.cfg", [&](Report& r, const Configuration& cfg) {
            r.check("cfg-or2 valid", validate_configuration(cfg).ok);
            r.check("cfg-or2 orientable", is_orientable_neighbourhood(cfg));
        });
        with_fixture("cfg-no2.cfg", [&](Report& r, const Configuration& cfg) {
            r.check("cfg-no2 valid", validate_configuration(cfg).ok);
            r.check("cfg-no2 nonorientable", !is_orientable_neighbourhood(cfg));
        });
        with_fixture("cfg-mob.cfg", [&](Report& r, const Configuration& cfg) {
            r.check("cfg-mob flags a non-generic",
                    !validate_configuration(cfg).ok && !is_generic_core(cfg, CoreId::A));
            bool refused = false;
            try {
                twist_minimal(cfg, core_curve(cfg, CoreId::B), CoreId::A, 1);
            } catch (const TwistError&) {
                refused = true;
            }
            r.check("cfg-mob twist refused", refused);
        });
        with_fixture("cfg-ex1.cfg", [&](Report& r, const Configuration& cfg) {
            auto c = load_curve(fixture_dir + "/ex1-c.crv");
            auto info = curve_info(cfg, c);
            r.check("ex1 counts I(c,a)=8 > I(c,b)=4",
                    info.min_a == 8 && info.min_b == 4);
            auto tr = twist_minimal(cfg, c, CoreId::A, 1);
            r.check("ex1 twist preserves the counts",
                    tr.report.min_a == 8 && tr.report.min_b == 4);
        });
        with_fixture("cfg-ex2.cfg", [&](Report& r, const Configuration& cfg) {
            auto c = load_curve(fixture_dir + "/ex2-c.crv");
            auto info = curve_info(cfg, c);
            r.check("ex2 counts I(c,a)=2 > I(c,b)=1",
                    info.min_a == 2 && info.min_b == 1);
            auto tr = twist_minimal(cfg, c, CoreId::A, 1);
            r.check("ex2 twist preserves the counts",
                    tr.report.min_a == 2 && tr.report.min_b == 1);
        });
        std::exit(rep.finish());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << "RESULT fail\n";
        return 2;
    }
    return 0;
}
