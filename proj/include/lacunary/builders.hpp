#pragma once

#include <cstddef>
#include <vector>

#include "lacunary/chains.hpp"
#include "lacunary/core.hpp"
#include "lacunary/sequence.hpp"
#include "lacunary/toracle.hpp"

namespace lacunary {

// The four sequence families. All builders are deterministic and
// prefix-extensible: rebuilding with a larger step count reproduces the
// shorter output verbatim and continues it.

/// Steps k = 1..k_steps; step k appends the divisor chain of
/// Q = p_1···p_k scaled by the previous milestone term, with ratio floor
/// max{λ, 2 − 1/k} (so the ratios tend to 2). Requires λ ∈ (1,2).
LacunarySeq build_theorem1(const Rat& lambda, std::size_t k_steps);

/// The 27-term (3/2)-lacunary showcase sequence with milestones
/// [2, 5, 12, 27]. Hand-picked chain factors, kept as a fixture.
LacunarySeq load_fixture_27();

/// Near-optimal head: the greedy-ceiling terms a_1.., a_K with K chosen so
/// that Σ 1/a_i comes within eps of its limit, a divisor-chain extension
/// closing divisibility, then the same milestone loop as build_theorem1.
LacunarySeq build_theorem2(const Rat& lambda, const Rat& eps, std::size_t k_steps);

struct ThmThreeParams {
    Rat big_lambda;  // Λ ≥ 2
    Rat lambda;      // 1 < λ < Λ/(Λ−1)
    Rat epsilon;     // largest 2^(−t) compatible with the two constraints
    unsigned long u_run;  // ceiling-recurrence run length per step
    std::size_t m0;       // initial doubling block length
};

/// ε is the largest 2^(−t), t ≥ 1, with λ+ε < 2 and
/// 1/(λ+ε) + 1/(Λ+ε) > 1; U the smallest positive integer with
/// (λ+ε)^(−U−1) < (Λ+ε)(1/(λ+ε) + 1/(Λ+ε) − 1); m0 = 2 + ⌊log2(1/ε)⌋.
/// Rejects λ ≥ Λ/(Λ−1) (no such sequence exists at or past that bound).
ThmThreeParams choose_thm3_params(const Rat& big_lambda, const Rat& lambda);

/// Powers of two up to index m0, then per step: one jump term ⌊Λn⌋+1
/// (ratio in (Λ, Λ+ε)), U ceiling-recurrence terms (ratios in [λ, λ+ε)),
/// and a divisor-chain extension with Q = p_1···p_k (ratios in [λ, 2]).
LacunarySeq build_theorem3(const ThmThreeParams& params, std::size_t k_steps);

struct Theorem4Chain {
    std::vector<Int> chain;  // n'_1 < ... < n'_M, all elements of T
    std::size_t head_len;    // K: enumerated T-prefix covering q
    unsigned long two_exp;   // k in lcm = 2^k · l
    Int odd_part;            // l
    Int pivot;               // n_J, the l-multiple placed in the dyadic window
    unsigned long window;    // m: 2^(m−1) n_K < n_J ≤ 2^m n_K
};

inline constexpr std::size_t kDefaultEnumBudget = 100000;

/// Finite chain over T whose reciprocal subset sums hit q exactly:
/// T-prefix to cover q, a doubling bridge, the pivot n_J, and a doubling
/// tail making the last element divisible by everything and by den(q).
Theorem4Chain build_theorem4_chain(const TOracle& oracle, const Rat& q,
                                   std::size_t enum_budget = kDefaultEnumBudget);

/// Theorem-4 chain as a sequence file payload (λ = smallest ratio,
/// single milestone at the end).
LacunarySeq wrap_theorem4_chain(const Theorem4Chain& built, const std::string& family,
                                const Rat& q);

}  // namespace lacunary
