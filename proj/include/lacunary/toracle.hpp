#pragma once

#include <memory>
#include <string>

#include "lacunary/core.hpp"

namespace lacunary {

// Oracle for a set T of positive integers with 2T ⊆ T that contains a
// multiple of every odd integer. The chain builder only ever talks to T
// through these three queries.
class TOracle {
  public:
    virtual ~TOracle() = default;

    virtual std::string name() const = 0;

    virtual bool contains(const Int& x) const = 0;

    /// Smallest element of T strictly greater than x (x may be 0).
    virtual Int next_after(const Int& x) const = 0;

    /// Some element of T divisible by the given odd integer.
    /// Throws budget_error when the family cannot produce one cheaply.
    virtual Int odd_multiple(const Int& odd) const = 0;
};

/// Built-in families:
///   "kk"       T = { 2^a · k^k : a ≥ 0, k ≥ 1 }
///   "integers" T = all positive integers
///   "ms"       T = products of distinct elements of {2^(2^k)} ∪ {k!, k ≥ 2}
std::unique_ptr<TOracle> make_toracle(const std::string& family);

}  // namespace lacunary
