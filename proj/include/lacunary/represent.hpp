#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lacunary/core.hpp"
#include "lacunary/sequence.hpp"

namespace lacunary {

struct Representation {
    Rat q;
    std::vector<std::size_t> indices;  // 1-based, strictly increasing
    std::size_t prefix_len;            // m: the prefix the indices live in
};

/// Smallest stored milestone m with den(q) | terms[m] and
/// q ≤ Σ_{i≤m} 1/terms[i]. Throws prefix_error when none qualifies.
std::size_t choose_prefix(const LacunarySeq& seq, const Rat& q);

// Precomputed state for extracting subset sums over one divisibility-closed
// prefix n_1 | ... | n_m (every term divides the last). All residual
// arithmetic happens in integer units of 1/n_m. Tail sums are never stored
// as big integers (for deep prefixes that array dwarfs the terms
// themselves); scans carry one running tail instead. A uint64 mirror with
// precomputed tails serves small prefixes.
class GreedyPrefix {
  public:
    /// Validates n_i | n_m for all i (reports the failing index) and the
    /// chain inequality c_i ≤ Σ_{j>i} c_j + 1 (ditto).
    explicit GreedyPrefix(std::span<const Int> terms);

    std::size_t size() const { return units_.size(); }
    const Int& last_term() const { return last_; }
    const Int& total_units() const { return total_; }
    /// c_i = n_m / n_i for the 1-based prefix index i.
    const Int& unit(std::size_t index) const { return units_.at(index - 1); }

    /// Index set with Σ c_i == residual; requires 0 ≤ residual ≤ total.
    /// The scan includes index i exactly when the residual exceeds the
    /// remaining tail sum -- inclusion is forced there, and skipping is
    /// always feasible otherwise.
    std::vector<std::size_t> extract(const Int& residual_units) const;

    /// True iff the residual is extractable; never fails under the checked
    /// preconditions, so this only reports range errors cheaply.
    bool extractable(const Int& residual_units) const;

    /// Runs the scan without collecting indices; false on a range error or
    /// a stranded residual (the latter cannot happen once construction
    /// validated the chain inequality).
    bool check(const Int& residual_units) const;

    bool has_fast_path() const { return !units64_.empty(); }
    /// uint64 scan, no allocation; returns false only on a range error.
    bool extract_fast(std::uint64_t residual_units) const;

  private:
    template <typename OnInclude>
    bool scan(const Int& residual_units, OnInclude&& include) const;

    std::vector<Int> units_;  // c_i = n_m / n_i, strictly decreasing
    Int total_;
    Int last_;
    std::vector<std::uint64_t> units64_, tails64_;  // mirror when totals fit
};

/// Egyptian-fraction extraction of q over a divisibility-closed prefix.
Representation lazy_greedy(std::span<const Int> terms, const Rat& q);

/// choose_prefix + lazy_greedy + exact re-summation check.
Representation represent(const LacunarySeq& seq, const Rat& q);

// Batch extraction over one sequence: milestone partial sums are computed
// once and the greedy state of the most recent milestone is kept, so runs
// of same-milestone targets cost one scan each instead of one engine
// rebuild each. Only one engine is held at a time -- deep prefixes make
// them large -- so batch callers should group targets by milestone.
class Representer {
  public:
    explicit Representer(const LacunarySeq& seq);

    /// Same contract as the free represent(); the result is re-summed in
    /// exact integer units before it is returned.
    Representation represent(const Rat& q);

    /// Smallest stored milestone able to host q; prefix_error otherwise.
    std::size_t milestone_for(const Rat& q) const;

    /// Builds (or reuses) the engine for a milestone prefix.
    const GreedyPrefix& prepare(std::size_t milestone);

    const LacunarySeq& sequence() const { return seq_; }

  private:
    const LacunarySeq& seq_;
    std::vector<Rat> milestone_sums_;
    std::size_t cached_milestone_ = 0;
    std::unique_ptr<GreedyPrefix> engine_;
};

/// `count` pairwise-distinct index sets summing to q, with strictly
/// increasing maxima: each round splits q into (q − 1/n_m) over the prefix
/// of a fresh milestone m and 1/n_m over the stored suffix past m.
std::vector<Representation> represent_many(const LacunarySeq& seq, const Rat& q,
                                           std::size_t count);

// ---- exhaustive oracle ------------------------------------------------------

struct SubsetSums {
    Int denom;                // lcm of the terms (1 for the empty list)
    std::vector<Int> numers;  // all 2^m subset sums · denom, sorted, dup kept

    bool contains(const Rat& value) const;
};

inline constexpr std::size_t kBruteForceLimit = 24;

/// All reciprocal subset sums of at most kBruteForceLimit terms.
SubsetSums brute_force_sums(std::span<const Int> terms);

// ---- fill verification ------------------------------------------------------

enum class FillMode { exhaustive, greedy, sample };

struct FillOptions {
    bool hi_inclusive = true;
    std::size_t samples = 1000;      // sample mode only
    std::uint64_t seed = 20250809;   // sample mode only
    unsigned threads = 0;            // 0 = hardware concurrency
};

struct FillReport {
    FillMode mode;
    Int first_numerator;  // grid endpoints: k runs over [first, last]
    Int last_numerator;
    Int denominator;
    unsigned long long checked = 0;
    unsigned long long failures = 0;
    std::optional<Rat> counterexample;  // smallest failing fraction
    bool pass() const { return failures == 0; }
};

/// Checks that every k/den in [lo, hi] (hi open when requested) is a
/// reciprocal subset sum of the prefix: exhaustively against the 2^m
/// oracle, per-fraction via the greedy engine, or on a random sample.
/// Greedy-mode results are independent of the thread partitioning.
FillReport verify_fill(std::span<const Int> terms, const Int& den, const Rat& lo,
                       const Rat& hi, FillMode mode, const FillOptions& options = {});

}  // namespace lacunary
