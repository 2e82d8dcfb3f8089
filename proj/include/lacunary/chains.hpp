#pragma once

#include <vector>

#include "lacunary/core.hpp"

namespace lacunary {

// Divisor chains: an integer N divisible by Q together with a ladder of
// divisors 1 = d_0 < d_1 < ... < d_M = N whose consecutive ratios all lie
// in [lambda_lo, 2]. The generic shape is N = 2^a·Q^b with the ladder
// 1, 2, ..., 2^a, Q^b, 2·Q^b, ..., 2^a·Q^b.
struct DivisorChain {
    Rat lambda_lo;
    Int modulus;             // Q
    Int product;             // N
    std::vector<Int> chain;  // 1 = d_0 < ... < d_M = N

    /// Checks every structural invariant exactly; throws on violation.
    void validate() const;
};

struct Exponents {
    unsigned long a;
    unsigned long b;
};

inline constexpr unsigned long kDefaultSearchCap = 1000000;

/// Smallest b (ties by smallest a, which never arise: the window [λ,2]
/// spans less than a factor of 2, so each b admits at most one a) with
/// lambda_lo ≤ V^b / 2^a ≤ 2, a ≥ 1, b ≥ 1. Requires V ≥ 3 and V not a
/// power of two; termination is guaranteed by the irrationality of
/// log2(V), the cap only guards against invalid inputs.
Exponents find_exponents(const Int& v, const Rat& lambda_lo,
                         unsigned long search_cap = kDefaultSearchCap);

DivisorChain build_chain(const Int& q, const Rat& lambda_lo,
                         unsigned long search_cap = kDefaultSearchCap);

/// Appends terms to a strictly increasing list starting at 1 so that the
/// final value N is divisible by Q and by every listed value, with every
/// appended step ratio in [lambda_lo, 2] (the first measured against
/// prefix.back()). Returns only the appended terms.
std::vector<Int> extend_chain(const std::vector<Int>& prefix, const Int& q,
                              const Rat& lambda_lo,
                              unsigned long search_cap = kDefaultSearchCap);

}  // namespace lacunary
