#pragma once

#include "twistlab/twist.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twistlab {

// Words in the twists t_a, t_b and the ping-pong certification that the
// group they generate is free of rank 2.

enum class Letter : std::uint8_t { A, AInv, B, BInv };

Letter inverse_letter(Letter l);
CoreId letter_core(Letter l);

struct TwistWord {
    std::vector<Letter> letters; // applied right to left, like composition

    bool empty() const { return letters.empty(); }
    int size() const { return static_cast<int>(letters.size()); }
};

// Command-line word syntax: whitespace-separated `a`, `b`, `a^-1`, `b^3`, ...
TwistWord parse_word(const std::string& text);
std::string format_word(const TwistWord& w);

TwistWord free_reduce(TwistWord w);
// Cyclic reduction plus the rotation bookkeeping needed for witnesses.
TwistWord cyclic_reduce(TwistWord w);
bool is_reduced(const TwistWord& w);

struct Block {
    CoreId core;
    int power; // nonzero; sign gives the twist direction
};
// Maximal blocks of equal letters, leftmost first.
std::vector<Block> blocks_of(const TwistWord& w);

// Applies the word to a core curve, rightmost block first, reducing after
// each block (twist_minimal). Throws TwistError on certificate failures.
Curve act(const Configuration& cfg, const TwistWord& w, CoreId seed,
          Hand hand = Hand::Right);

// --- sampling of family curves ---------------------------------------------

struct SampleOptions {
    int max_steps = 8;
    int budget = 20000;       // DFS nodes examined
    unsigned rng_seed = 7;    // deterministic shuffle of the accepted list
    bool require_reduced = true;
    int max_cross_a = -1;     // prune words exceeding these raw counts
    int max_cross_b = -1;
};

// Enumerates embeddable generic curves in length-lex order (canonical
// rotations, deduplicated), optionally only those already reduced against
// both cores. Deterministic for fixed options.
std::vector<Curve> sample_curves(const Configuration& cfg, const SampleOptions& opt);

// --- audits ------------------------------------------------------------------

struct PingPongViolation {
    Curve curve;
    int k = 0;
    std::string what;
};

struct PingPongReport {
    bool inconclusive = false; // sampler found no set members
    int checked = 0;           // (curve, k) pairs checked
    int members_a = 0, members_b = 0;
    bool sets_disjoint = true;
    bool witnesses_present = false; // a in X_a, b in X_b
    bool use_j_sets = false;        // I(a,b) == 2: the J-based sets
    std::vector<PingPongViolation> violations;

    bool pass() const {
        return !inconclusive && sets_disjoint && witnesses_present &&
               violations.empty();
    }
};

PingPongReport ping_pong_audit(const Configuration& cfg, int k_max,
                               int sample_budget, unsigned rng_seed,
                               Hand hand = Hand::Right, int max_steps = 8,
                               int max_members = 0);

// --- freeness witnesses -------------------------------------------------------

struct WitnessReport {
    TwistWord word;
    CoreId seed = CoreId::B;
    std::vector<std::string> chain; // memberships after each block
    bool ok = false;
    std::string conclusion; // the inequality used
};

// Certifies every nonempty reduced word of length <= max_len: the membership
// chain of Lemma-8.1 style ping-pong lands the acted curve outside the
// seed's set, or a strict positivity inequality separates it from the seed.
// Any failed witness throws (it would contradict the theorem).
std::vector<WitnessReport> freeness_witness(const Configuration& cfg, int max_len,
                                            Hand hand = Hand::Right, int jobs = 1);

// Single-word witness (exposed for the CLI).
WitnessReport witness_word(const Configuration& cfg, const TwistWord& w,
                           Hand hand = Hand::Right);

} // namespace twistlab
