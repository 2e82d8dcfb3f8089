#include "lacunary/chains.hpp"

namespace lacunary {

namespace {

void require_lambda_window(const Rat& lambda_lo) {
    if (lambda_lo <= 1 || lambda_lo >= 2)
        throw param_error("lambda_lo must lie strictly between 1 and 2, got " +
                          to_string(lambda_lo));
}

// lambda_lo·2^a ≤ w, compared as integers.
bool ratio_at_least_lambda(const Int& w, unsigned long a, const Rat& lambda_lo) {
    Int lhs;
    mpz_mul_2exp(lhs.get_mpz_t(), lambda_lo.get_num().get_mpz_t(), a);
    return lhs <= lambda_lo.get_den() * w;
}

}  // namespace

void DivisorChain::validate() const {
    if (chain.empty() || chain.front() != 1 || chain.back() != product)
        throw param_error("divisor chain must run from 1 to N");
    if (product % modulus != 0)
        throw param_error("N not divisible by Q");
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
        const Int& lo = chain[j];
        const Int& hi = chain[j + 1];
        if (hi <= lo) throw param_error("divisor chain not increasing");
        if (product % hi != 0) throw param_error("chain element does not divide N");
        if (hi > 2 * lo) throw param_error("chain ratio exceeds 2");
        if (lambda_lo.get_num() * lo > lambda_lo.get_den() * hi)
            throw param_error("chain ratio below lambda_lo");
    }
}

Exponents find_exponents(const Int& v, const Rat& lambda_lo,
                         unsigned long search_cap) {
    require_lambda_window(lambda_lo);
    if (v < 3 || is_power_of_two(v))
        throw param_error("find_exponents: V must be ≥ 3 and not a power of two");

    Int w = v;
    for (unsigned long b = 1; b <= search_cap; ++b) {
        // Unique candidate a for this b: the smallest with V^b ≤ 2^{a+1},
        // i.e. a = bit_length(V^b) − 1 (V^b is never a power of two here).
        unsigned long a = static_cast<unsigned long>(bit_length(w)) - 1;
        if (a >= 1 && ratio_at_least_lambda(w, a, lambda_lo)) return {a, b};
        w *= v;
    }
    throw budget_error("find_exponents: search cap " + std::to_string(search_cap) +
                       " exhausted (is V a power of two?)");
}

namespace {

// The ladder 2·base, 4·base, ..., 2^a·base appended to out.
void append_doublings(std::vector<Int>& out, const Int& base, unsigned long a) {
    Int cur = base;
    for (unsigned long j = 1; j <= a; ++j) {
        cur *= 2;
        out.push_back(cur);
    }
}

}  // namespace

DivisorChain build_chain(const Int& q, const Rat& lambda_lo,
                         unsigned long search_cap) {
    require_lambda_window(lambda_lo);
    if (q < 1) throw param_error("build_chain: Q must be positive");

    DivisorChain result;
    result.lambda_lo = lambda_lo;
    result.modulus = q;
    result.chain.push_back(1);

    if (is_power_of_two(q)) {
        unsigned long a = static_cast<unsigned long>(bit_length(q)) - 1;
        append_doublings(result.chain, 1, a);
        result.product = q;
        return result;
    }

    auto [a, b] = find_exponents(q, lambda_lo, search_cap);
    Int qb;
    mpz_pow_ui(qb.get_mpz_t(), q.get_mpz_t(), b);
    append_doublings(result.chain, 1, a);
    result.chain.push_back(qb);
    append_doublings(result.chain, qb, a);
    result.product = result.chain.back();
    return result;
}

std::vector<Int> extend_chain(const std::vector<Int>& prefix, const Int& q,
                              const Rat& lambda_lo, unsigned long search_cap) {
    require_lambda_window(lambda_lo);
    if (q < 1) throw param_error("extend_chain: Q must be positive");
    if (prefix.empty() || prefix.front() != 1)
        throw param_error("extend_chain: prefix must start at 1");
    for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
        if (prefix[i] >= prefix[i + 1])
            throw param_error("extend_chain: prefix must be strictly increasing");

    if (prefix.size() == 1) {
        auto built = build_chain(q, lambda_lo, search_cap);
        return {built.chain.begin() + 1, built.chain.end()};
    }

    // V must absorb every earlier prefix value and Q; the lcm does that and
    // stays small even when the prefix is long (the literal product of all
    // prefix terms blows up quadratically in the prefix bit size).
    std::vector<Int> covered(prefix.begin(), prefix.end() - 1);
    covered.push_back(q);
    Int v = lcm_list(covered);
    const Int& last = prefix.back();

    std::vector<Int> appended;
    if (is_power_of_two(v)) {  // includes V = 1
        unsigned long a = static_cast<unsigned long>(bit_length(v)) - 1;
        append_doublings(appended, last, a);
        return appended;
    }

    auto [a, b] = find_exponents(v, lambda_lo, search_cap);
    Int vb;
    mpz_pow_ui(vb.get_mpz_t(), v.get_mpz_t(), b);
    append_doublings(appended, last, a);
    appended.push_back(vb * last);
    append_doublings(appended, appended.back(), a);
    return appended;
}

}  // namespace lacunary
