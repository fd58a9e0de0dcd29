#include "twistlab/freeness.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <cassert>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace twistlab {

Letter inverse_letter(Letter l) {
    switch (l) {
    case Letter::A: return Letter::AInv;
    case Letter::AInv: return Letter::A;
    case Letter::B: return Letter::BInv;
    case Letter::BInv: return Letter::B;
    }
    return Letter::A;
}

CoreId letter_core(Letter l) {
    return (l == Letter::A || l == Letter::AInv) ? CoreId::A : CoreId::B;
}

TwistWord parse_word(const std::string& text) {
    TwistWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        char name = tok[0];
        if (name != 'a' && name != 'b')
            throw std::runtime_error("bad word token '" + tok + "'");
        long long power = 1;
        if (tok.size() > 1) {
            if (tok[1] != '^')
                throw std::runtime_error("bad word token '" + tok + "'");
            try {
                power = std::stoll(tok.substr(2));
            } catch (...) {
                throw std::runtime_error("bad power in token '" + tok + "'");
            }
        }
        if (power == 0)
            continue;
        Letter base = name == 'a' ? Letter::A : Letter::B;
        Letter inv = inverse_letter(base);
        for (long long i = 0; i < (power > 0 ? power : -power); ++i)
            w.letters.push_back(power > 0 ? base : inv);
    }
    return w;
}

std::string format_word(const TwistWord& w) {
    if (w.empty())
        return "1";
    std::ostringstream out;
    auto blocks = blocks_of(w);
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i)
            out << ' ';
        out << (blocks[i].core == CoreId::A ? 'a' : 'b');
        if (blocks[i].power != 1)
            out << '^' << blocks[i].power;
    }
    return out.str();
}

TwistWord free_reduce(TwistWord w) {
    std::vector<Letter> out;
    for (Letter l : w.letters) {
        if (!out.empty() && out.back() == inverse_letter(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    w.letters = std::move(out);
    return w;
}

TwistWord cyclic_reduce(TwistWord w) {
    w = free_reduce(std::move(w));
    while (w.size() >= 2 &&
           w.letters.front() == inverse_letter(w.letters.back())) {
        w.letters.erase(w.letters.begin());
        w.letters.pop_back();
    }
    return w;
}

bool is_reduced(const TwistWord& w) {
    for (size_t i = 0; i + 1 < w.letters.size(); ++i)
        if (w.letters[i + 1] == inverse_letter(w.letters[i]))
            return false;
    return true;
}

std::vector<Block> blocks_of(const TwistWord& w) {
    std::vector<Block> out;
    for (Letter l : w.letters) {
        int delta = (l == Letter::A || l == Letter::B) ? 1 : -1;
        CoreId core = letter_core(l);
        if (!out.empty() && out.back().core == core &&
            (out.back().power > 0) == (delta > 0))
            out.back().power += delta;
        else
            out.push_back({core, delta});
    }
    return out;
}

Curve act(const Configuration& cfg, const TwistWord& w, CoreId seed, Hand hand) {
    Curve c = core_curve(cfg, seed);
    auto blocks = blocks_of(free_reduce(w));
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        auto tr = twist_minimal(cfg, c, it->core, it->power, hand);
        c = tr.d3;
    }
    return c;
}

// --- sampling ----------------------------------------------------------------

namespace {

std::tuple<int, int, int, int, int> step_tuple(const Step& s) {
    return {s.rect, static_cast<int>(s.in.side), static_cast<int>(s.in.sign),
            static_cast<int>(s.out.side), static_cast<int>(s.out.sign)};
}

} // namespace

std::vector<Curve> sample_curves(const Configuration& cfg, const SampleOptions& opt) {
    std::vector<Curve> accepted;
    std::set<std::string> seen;
    long long nodes = 0;

    auto key_of = [](const Curve& c) {
        std::string s;
        for (const Step& st : canonical_rotation(c).steps) {
            s += static_cast<char>(st.rect);
            s += static_cast<char>(static_cast<int>(st.in.side) * 2 +
                                   (st.in.sign == Sign::Plus));
            s += static_cast<char>(static_cast<int>(st.out.side) * 2 +
                                   (st.out.sign == Sign::Plus));
        }
        return s;
    };

    // Length-lex enumeration by iterative deepening: for each target length
    // the DFS explores transport-consistent words in lexicographic step
    // order and closes exactly at that length. Rotation canonicalization:
    // every step must compare >= the first step, which prunes all
    // non-minimal rotations of each cyclic word.
    std::vector<Step> word;
    int cross_a = 0, cross_b = 0;
    int target_len = 1;
    std::function<void(int)> extend = [&](int depth) {
        if (++nodes >= opt.budget)
            return;
        if ((opt.max_cross_a >= 0 && cross_a > opt.max_cross_a) ||
            (opt.max_cross_b >= 0 && cross_b > opt.max_cross_b))
            return;
        if (static_cast<int>(word.size()) == target_len) {
            const Step& last = word.back();
            auto tr = cfg.transport(last.rect, last.out.side, last.out.sign);
            const Step& first = word.front();
            if (tr.rect == first.rect && tr.side == first.in.side &&
                tr.sign == first.in.sign) {
                Curve c{word};
                if (seen.insert(key_of(c)).second) {
                    CurveReport rep = validate_in_C(cfg, c);
                    bool ok = rep.in_family;
                    if (ok && opt.require_reduced) {
                        ok = !find_bigon(cfg, c, CoreId::A).has_value() &&
                             !find_bigon(cfg, c, CoreId::B).has_value();
                    }
                    if (ok)
                        accepted.push_back(canonical_rotation(c));
                }
            }
            return;
        }
        if (depth >= target_len || nodes >= opt.budget)
            return;
        if (word.empty()) {
            for (int rect = 0; rect < cfg.n; ++rect)
                for (Side in_side : {Side::L, Side::R, Side::B, Side::T})
                    for (Sign in_sign : {Sign::Minus, Sign::Plus})
                        for (Side out_side : {Side::L, Side::R, Side::B, Side::T}) {
                            if (out_side == in_side)
                                continue;
                            for (Sign out_sign : {Sign::Minus, Sign::Plus}) {
                                Step st{rect, {in_side, in_sign}, {out_side, out_sign}};
                                cross_a += chord_crosses_a(st.in, st.out);
                                cross_b += chord_crosses_b(st.in, st.out);
                                word.push_back(st);
                                extend(depth + 1);
                                word.pop_back();
                                cross_a -= chord_crosses_a(st.in, st.out);
                                cross_b -= chord_crosses_b(st.in, st.out);
                            }
                        }
            return;
        }
        const Step& last = word.back();
        auto tr = cfg.transport(last.rect, last.out.side, last.out.sign);
        for (Side out_side : {Side::L, Side::R, Side::B, Side::T}) {
            if (out_side == tr.side)
                continue;
            for (Sign out_sign : {Sign::Minus, Sign::Plus}) {
                Step next{tr.rect, {tr.side, tr.sign}, {out_side, out_sign}};
                if (step_tuple(next) < step_tuple(word.front()))
                    continue;
                cross_a += chord_crosses_a(next.in, next.out);
                cross_b += chord_crosses_b(next.in, next.out);
                word.push_back(next);
                extend(depth + 1);
                word.pop_back();
                cross_a -= chord_crosses_a(next.in, next.out);
                cross_b -= chord_crosses_b(next.in, next.out);
            }
        }
    };
    for (target_len = 1; target_len <= opt.max_steps && nodes < opt.budget;
         ++target_len)
        extend(0);

    // Deterministic shuffle for sampling variety.
    if (opt.rng_seed != 0) {
        std::uint64_t state = opt.rng_seed;
        auto next = [&]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        for (size_t i = accepted.size(); i > 1; --i)
            std::swap(accepted[i - 1], accepted[next() % i]);
    }
    return accepted;
}

// --- audits ------------------------------------------------------------------

PingPongReport ping_pong_audit(const Configuration& cfg, int k_max,
                               int sample_budget, unsigned rng_seed, Hand hand,
                               int max_steps, int max_members) {
    PingPongReport rep;
    rep.use_j_sets = (cfg.n == 2);

    auto member_of = [&](const IntersectionReport& info, CoreId which) {
        if (rep.use_j_sets)
            return which == CoreId::A ? info.xt_a : info.xt_b;
        return which == CoreId::A ? info.x_a : info.x_b;
    };

    // Witnesses: the cores themselves.
    {
        auto ia = curve_info(cfg, core_curve(cfg, CoreId::A));
        auto ib = curve_info(cfg, core_curve(cfg, CoreId::B));
        rep.witnesses_present = member_of(ia, CoreId::A) && member_of(ib, CoreId::B);
    }

    SampleOptions opt;
    opt.max_steps = max_steps;
    opt.budget = sample_budget;
    opt.rng_seed = rng_seed;
    auto curves = sample_curves(cfg, opt);

    std::vector<std::pair<Curve, CoreId>> members;
    for (const auto& c : curves) {
        auto info = curve_info(cfg, c);
        bool in_a = member_of(info, CoreId::A);
        bool in_b = member_of(info, CoreId::B);
        if (in_a && in_b)
            rep.sets_disjoint = false;
        if (in_a) {
            ++rep.members_a;
            members.push_back({c, CoreId::A});
        } else if (in_b) {
            ++rep.members_b;
            members.push_back({c, CoreId::B});
        }
        if (max_members > 0 &&
            static_cast<int>(members.size()) >= max_members)
            break;
    }
    if (members.empty()) {
        rep.inconclusive = true;
        return rep;
    }

    for (const auto& [c, which] : members) {
        CoreId twist_core = other_core(which); // t_a maps X_b into X_a
        for (int k = -k_max; k <= k_max; ++k) {
            if (k == 0)
                continue;
            try {
                auto tr = twist_minimal(cfg, c, twist_core, k, hand);
                if (!member_of(tr.report, twist_core)) {
                    rep.violations.push_back(
                        {c, k, "twisted curve not in the image set"});
                }
            } catch (const std::exception& e) {
                rep.violations.push_back({c, k, e.what()});
            }
            ++rep.checked;
        }
    }
    return rep;
}

// --- witnesses -----------------------------------------------------------------

namespace {

std::string set_name(bool j_sets, CoreId which) {
    std::string base = j_sets ? "Xt_" : "X_";
    return base + (which == CoreId::A ? "a" : "b");
}

} // namespace

WitnessReport witness_word(const Configuration& cfg, const TwistWord& input,
                           Hand hand) {
    WitnessReport rep;
    rep.word = free_reduce(input);
    if (rep.word.empty())
        throw std::runtime_error("witness needs a nonempty word");
    const bool j_sets = (cfg.n == 2);

    auto member_of = [&](const IntersectionReport& info, CoreId which) {
        if (j_sets)
            return which == CoreId::A ? info.xt_a : info.xt_b;
        return which == CoreId::A ? info.x_a : info.x_b;
    };

    TwistWord w = cyclic_reduce(rep.word);
    assert(!w.empty());
    auto blocks = blocks_of(w);

    bool pure_a = true, pure_b = true;
    for (const auto& b : blocks) {
        (b.core == CoreId::A ? pure_b : pure_a) = false;
    }

    if (pure_a || pure_b) {
        // Conjugate to a power of one twist: seed with the other core.
        CoreId twist = pure_a ? CoreId::A : CoreId::B;
        rep.seed = other_core(twist);
        Curve c = core_curve(cfg, rep.seed);
        auto tr = twist_minimal(cfg, c, twist, blocks[0].power, hand);
        rep.chain.push_back(set_name(j_sets, twist));
        rep.ok = member_of(tr.report, twist);
        rep.conclusion = "w(seed) lands in " + set_name(j_sets, twist) +
                         ", which does not contain the seed";
        if (!rep.ok)
            rep.conclusion = "membership chain broke";
        return rep;
    }

    // Rotate the cyclic word so the rightmost (first applied) block is an
    // A-block; seed with b.
    while (blocks_of(w).back().core != CoreId::A) {
        w.letters.insert(w.letters.begin(), w.letters.back());
        w.letters.pop_back();
    }
    blocks = blocks_of(w);
    rep.seed = CoreId::B;

    Curve c = core_curve(cfg, rep.seed);
    CoreId last_set = CoreId::B;
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        auto tr = twist_minimal(cfg, c, it->core, it->power, hand);
        c = tr.d3;
        last_set = it->core;
        bool in = member_of(tr.report, it->core);
        rep.chain.push_back(set_name(j_sets, it->core) + (in ? "" : " FAILED"));
        if (!in) {
            rep.ok = false;
            rep.conclusion = "membership chain broke";
            return rep;
        }
    }

    if (last_set != rep.seed) {
        rep.ok = true;
        rep.conclusion = "final set " + set_name(j_sets, last_set) +
                         " is disjoint from the seed's set";
        return rep;
    }
    // Final set equals the seed's: separate by strict positivity against the
    // seed core (the seed itself has zero).
    auto info = curve_info(cfg, c);
    if (j_sets) {
        int j_seed = rep.seed == CoreId::B ? info.j_b : info.j_a;
        rep.ok = j_seed > 0;
        rep.conclusion = "J(w(seed), seed) = " + std::to_string(j_seed) +
                         " > 0 = J(seed, seed)";
    } else {
        int i_seed = rep.seed == CoreId::B ? info.min_b : info.min_a;
        rep.ok = i_seed > 0;
        rep.conclusion = "I(w(seed), seed) = " + std::to_string(i_seed) +
                         " > 0 = I(seed, seed)";
    }
    return rep;
}

std::vector<WitnessReport> freeness_witness(const Configuration& cfg, int max_len,
                                            Hand hand, int jobs) {
    // All nonempty reduced words of length <= max_len, in length-lex order.
    std::vector<TwistWord> words;
    std::function<void(TwistWord&)> gen = [&](TwistWord& w) {
        if (w.size() > 0)
            words.push_back(w);
        if (w.size() >= max_len)
            return;
        for (Letter l : {Letter::A, Letter::AInv, Letter::B, Letter::BInv}) {
            if (!w.empty() && l == inverse_letter(w.letters.back()))
                continue;
            w.letters.push_back(l);
            gen(w);
            w.letters.pop_back();
        }
    };
    TwistWord scratch;
    gen(scratch);
    std::stable_sort(words.begin(), words.end(),
                     [](const TwistWord& x, const TwistWord& y) {
                         return x.size() < y.size();
                     });

    std::vector<WitnessReport> out(words.size());
    std::atomic<size_t> next{0};
    std::mutex fail_mutex;
    std::string failure;
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= words.size())
                return;
            try {
                out[i] = witness_word(cfg, words[i], hand);
                if (!out[i].ok) {
                    std::lock_guard<std::mutex> lock(fail_mutex);
                    if (failure.empty())
                        failure = "witness failed for word '" +
                                  format_word(words[i]) + "': " +
                                  out[i].conclusion;
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                if (failure.empty())
                    failure = "witness error for word '" +
                              format_word(words[i]) + "': " + e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (!failure.empty())
        throw std::runtime_error(failure);
    return out;
}

} // namespace twistlab
