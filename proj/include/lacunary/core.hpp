#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lacunary {

// Arbitrary-precision integer and exact rational. Rationals are kept
// canonical (reduced, positive denominator); every comparison in this
// library is exact -- there is no floating point on any decision path.
using Int = mpz_class;
using Rat = mpq_class;

/// Bad parameters or malformed input (CLI exit code 2).
struct param_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A configurable search/enumeration budget ran out (CLI exit code 3).
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The stored prefix of a sequence is too short for the request.
/// `suggested_steps` is a lower bound on the builder step count that
/// would make the request answerable.
struct prefix_error : std::runtime_error {
    std::size_t suggested_steps;
    prefix_error(const std::string& msg, std::size_t steps)
        : std::runtime_error(msg), suggested_steps(steps) {}
};

// ---- parsing / formatting ------------------------------------------------

// Integers serialize as decimal strings, rationals as "num/den" with the
// integer shorthand "n" == "n/1" accepted on input and used on output.

Int parse_int(const std::string& text);
Rat parse_rat(const std::string& text);

std::string to_string(const Int& value);
std::string to_string(const Rat& value);

/// num/den reduced; throws param_error on den == 0.
Rat make_rat(const Int& num, const Int& den);

/// x truncated (not rounded) to `digits` decimal places, e.g. "2.406".
std::string decimal_string(const Rat& value, std::size_t digits);

// ---- exact arithmetic helpers ---------------------------------------------

/// ⌈multiplier·a⌉ for multiplier = p/q > 0, computed as (p·a + q − 1) div q.
Int ceil_mul(const Int& a, const Rat& multiplier);

/// ⌊multiplier·a⌋, same exact-integer route.
Int floor_mul(const Int& a, const Rat& multiplier);

/// base^exponent for a rational base (exact).
Rat pow_rat(const Rat& base, unsigned long exponent);

/// Largest e ≥ 0 with base^e ≤ x, by exact power comparison.
/// Requires base > 1 and x ≥ 1.
unsigned long floor_log(const Rat& base, const Rat& x);

bool is_power_of_two(const Int& x);

/// Number of bits of x > 0 (bit_length(1) == 1).
std::size_t bit_length(const Int& x);

// ---- small number theory ---------------------------------------------------

/// First k primes, ascending: [2, 3, 5, ...].
std::vector<Int> first_k_primes(std::size_t k);

/// Least common multiple of a non-empty list of positive integers.
Int lcm_list(const std::vector<Int>& values);

struct TwoAdicSplit {
    unsigned long exponent;  // k
    Int odd;                 // l, odd
};

/// L = 2^k · l with l odd; requires L ≥ 1.
TwoAdicSplit split_two_adic(const Int& value);

}  // namespace lacunary
