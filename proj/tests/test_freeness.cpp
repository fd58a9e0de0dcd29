#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twistlab/freeness.hpp"
#include "twistlab/miners.hpp"

using namespace twistlab;

TEST_CASE("word parsing, reduction and blocks") {
    auto w = parse_word("a b^-1 a^2");
    CHECK(w.size() == 4);
    CHECK(format_word(w) == "a b^-1 a^2");
    auto r = free_reduce(parse_word("a a^-1 b"));
    CHECK(r.size() == 1);
    CHECK(r.letters[0] == Letter::B);
    auto cyc = cyclic_reduce(parse_word("a b a^-1"));
    CHECK(cyc.size() == 1);
    CHECK(cyc.letters[0] == Letter::B);
    auto blocks = blocks_of(parse_word("a^2 b^-3"));
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].core == CoreId::A);
    CHECK(blocks[0].power == 2);
    CHECK(blocks[1].power == -3);
}

TEST_CASE("empty word fixes the seed; single blocks equal twist_minimal") {
    auto cfg = fixture_no2();
    auto b = core_curve(cfg, CoreId::B);
    CHECK(act(cfg, TwistWord{}, CoreId::B) == b);
    auto via_act = act(cfg, parse_word("a^2"), CoreId::B);
    auto via_twist = twist_minimal(cfg, b, CoreId::A, 2).d3;
    CHECK(canonical_rotation(via_act) == canonical_rotation(via_twist));
}

TEST_CASE("sampled curves are valid family members") {
    auto cfg = fixture_no2();
    SampleOptions opt;
    opt.max_steps = 6;
    opt.budget = 400000;
    auto curves = sample_curves(cfg, opt);
    CHECK(curves.size() >= 4);
    for (const auto& c : curves) {
        CHECK(word_valid(cfg, c));
        CHECK_FALSE(has_turn_backs(c));
    }
}

TEST_CASE("ping pong audit passes on the shipped 2-crossing fixtures") {
    for (const auto& cfg : {fixture_no2(), fixture_or2()}) {
        auto rep = ping_pong_audit(cfg, 2, 500000, 7, Hand::Right, 6, 12);
        CHECK(rep.use_j_sets);
        CHECK(rep.witnesses_present);
        CHECK(rep.sets_disjoint);
        CHECK_FALSE(rep.inconclusive);
        CHECK(rep.violations.empty());
        CHECK(rep.checked > 0);
    }
}

TEST_CASE("freeness witnesses cover all short words") {
    auto cfg = fixture_no2();
    auto reports = freeness_witness(cfg, 3, Hand::Right, 2);
    // 4 + 12 + 36 reduced words of lengths 1..3.
    CHECK(reports.size() == 52);
    for (const auto& rep : reports)
        CHECK(rep.ok);
}

TEST_CASE("witness handles powers and mixed words") {
    auto cfg = fixture_no2();
    auto w1 = witness_word(cfg, parse_word("a^3"));
    CHECK(w1.ok);
    CHECK(w1.seed == CoreId::B);
    auto w2 = witness_word(cfg, parse_word("b^-2"));
    CHECK(w2.ok);
    CHECK(w2.seed == CoreId::A);
    auto w3 = witness_word(cfg, parse_word("a b"));
    CHECK(w3.ok);
    auto w4 = witness_word(cfg, parse_word("a b a^-1 b^-1"));
    CHECK(w4.ok);
}

TEST_CASE("handedness invariance of witnesses") {
    auto cfg = fixture_no2();
    for (const char* txt : {"a b", "a^2 b^-1", "b a b"}) {
        auto wr = witness_word(cfg, parse_word(txt), Hand::Right);
        auto wl = witness_word(cfg, parse_word(txt), Hand::Left);
        CHECK(wr.ok);
        CHECK(wl.ok);
    }
}
