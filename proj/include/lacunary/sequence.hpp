#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lacunary/core.hpp"

namespace lacunary {

// A finite prefix of a lambda-lacunary integer sequence together with its
// milestone indices: positions m (1-based) where terms[m] is divisible by
// every earlier term. Builders emit deterministic, prefix-extensible
// sequences; re-running a builder with a larger step count reproduces the
// stored terms and appends more.
struct LacunarySeq {
    Rat lambda;
    std::vector<Int> terms;                // strictly increasing
    std::vector<std::size_t> milestones;   // 1-based, strictly increasing
    nlohmann::json provenance = nlohmann::json::object();

    std::size_t size() const { return terms.size(); }

    /// 1-based access, matching the index convention used throughout.
    const Int& term(std::size_t i) const { return terms.at(i - 1); }

    /// Σ_{i ≤ m} 1/terms[i], exact.
    Rat prefix_sum(std::size_t m) const;

    /// Exact reciprocal prefix sums at every milestone. Computed blockwise
    /// in integer units of the block-end milestone term, which each earlier
    /// term divides -- far cheaper than rational accumulation on deep
    /// sequences.
    std::vector<Rat> milestone_sums() const;

    /// Upper bound on every ratio of the (unstored) continuation, when the
    /// producing construction certifies one; absent for raw data files.
    std::optional<Rat> continuation_ratio_cap() const;
    void set_continuation_ratio_cap(const Rat& cap);

    /// Exact check of all structural invariants; throws param_error.
    void validate() const;

    nlohmann::json to_json() const;
    static LacunarySeq from_json(const nlohmann::json& j);

    void save(const std::string& path) const;
    static LacunarySeq load(const std::string& path);
};

/// Wraps a bare term list (λ taken on faith, no milestones computed) --
/// used for analyzing externally supplied data.
LacunarySeq make_raw_sequence(std::vector<Int> terms, const Rat& lambda);

}  // namespace lacunary
