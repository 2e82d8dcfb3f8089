#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lacunary/core.hpp"
#include "lacunary/sequence.hpp"

namespace lacunary {

// Certified enclosure of R(λ) = Σ 1/a_i for the greedy-ceiling sequence
// a_1 = 1, a_{i+1} = ⌈λ a_i⌉. The true value lies in
// [partial, partial + tail_bound]; digits are rendered only as far as the
// enclosure certifies them (truncated, never rounded).
struct RLambdaResult {
    Rat lambda;
    unsigned long k_terms = 0;  // K, number of summed terms
    Rat partial;
    Rat tail_bound;  // λ^(−K+1)/(λ−1)
    std::string digits;
    std::size_t certified_digits = 0;
};

/// Enclosure of width ≤ eps via K = 2 + ⌊log_λ 1/(eps(λ−1))⌋.
/// Exact 0 for λ ≥ 2; throws for λ ≤ 1.
RLambdaResult r_lambda(const Rat& lambda, const Rat& eps);

/// Shrinks eps until at least `digits` decimals are certified, then renders
/// exactly that many.
RLambdaResult r_lambda_digits(const Rat& lambda, std::size_t digits);

struct SweepRow {
    Rat lambda;
    Rat partial;
    Rat tail_bound;
    unsigned long k_terms;
};

/// One row per λ = lo, lo+step, ..., ≤ hi (ascending, inclusive).
std::vector<SweepRow> r_lambda_sweep(const Rat& lo, const Rat& hi, const Rat& step,
                                     const Rat& eps, unsigned threads = 0);

// ---- necessary conditions ----------------------------------------------------

enum class Verdict { verified, violated, unknown };

std::string to_string(Verdict v);

// Exact bracket for the infinite reciprocal tail Σ_{j>i} 1/n_j of a stored
// prefix: the finite part is summed exactly, the unseen continuation is
// bounded above by the λ-lacunarity geometric majorant and below by the
// continuation ratio cap when the construction certifies one.
struct TailRow {
    std::size_t index = 0;  // i, 1-based
    Rat lhs;                // 1/n_i
    Rat tail_lower;
    Rat tail_upper;
    Verdict verdict = Verdict::unknown;
};

/// Per-index verdicts for the filled-interval necessary condition
/// 1/n_i ≤ Σ_{j>i} 1/n_j.
std::vector<TailRow> check_neceint(const LacunarySeq& seq);

// ---- classification -----------------------------------------------------------

struct Classification {
    enum class Kind { filled_interval_candidate, empty_interior, gap_at, exact_doubling };
    Kind kind = Kind::filled_interval_candidate;
    std::size_t gap_index = 0;              // for gap_at
    std::optional<std::pair<Rat, Rat>> gap; // certified open interval, no subset sums
    std::size_t witnesses = 0;              // strict-inequality indices found

    std::string name() const;
    nlohmann::json to_json() const;
};

/// Order of scrutiny: exact doubling of the whole prefix, then a certified
/// gap (smallest index), then the Cantor-type verdict (all-index ≥ plus at
/// least `witness_quota` strict witnesses), else no verdict.
Classification kakeya_classify(const LacunarySeq& seq, std::size_t witness_quota = 3);

/// The 2^(i_k) closed intervals (Σ ε_j/n_j) + [0, r] covering every
/// achievable sum, merged where they touch; i_k is the k-th strict-witness
/// index and r the certified tail bound past it. Requires the ≥-condition
/// certified at every prefix index and 2^(i_k) ≤ 2^20.
std::vector<std::pair<Rat, Rat>> interval_cover(const LacunarySeq& seq, std::size_t k);

struct JumpFeasibility {
    bool feasible;
    std::string trace;
};

/// Whether a λ-lacunary sequence with infinitely many jumps above Λ can
/// have reciprocal subset sums filling an interval: infeasible exactly when
/// λ ≥ Λ/(Λ−1), with the instantiated tail inequality in the trace.
JumpFeasibility check_jump_optimality(const Rat& big_lambda, const Rat& lambda);

/// Full per-sequence report (verdict table + classification) as JSON.
nlohmann::json analysis_report(const LacunarySeq& seq, std::size_t witness_quota = 3);

}  // namespace lacunary
