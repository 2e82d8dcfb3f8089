#include "lacunary/toracle.hpp"

#include <algorithm>
#include <vector>

namespace lacunary {

namespace {

// Doubles `value` until it exceeds x (single shift, then correct).
Int smallest_doubling_above(Int value, const Int& x) {
    if (value > x) return value;
    std::size_t shift = bit_length(x) - bit_length(value);
    mpz_mul_2exp(value.get_mpz_t(), value.get_mpz_t(), shift);
    while (value <= x) value *= 2;
    return value;
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// ---- T = { 2^a · k^k } ------------------------------------------------------

class KPowKOracle final : public TOracle {
  public:
    std::string name() const override { return "kk"; }

    bool contains(const Int& x) const override {
        if (x < 1) return false;
        for (unsigned long k = 1;; ++k) {
            Int kk = pow_int(k, k);
            if (kk > x) return false;
            if (x % kk == 0 && is_power_of_two(Int(x / kk))) return true;
        }
    }

    Int next_after(const Int& x) const override {
        if (x < 1) return 1;
        Int best = smallest_doubling_above(1, x);  // k = 1 candidate
        for (unsigned long k = 2;; ++k) {
            Int kk = pow_int(k, k);
            if (kk >= best) break;
            best = std::min(best, smallest_doubling_above(kk, x));
        }
        return best;
    }

    Int odd_multiple(const Int& odd) const override {
        // odd^odd works whenever the exponent stays reasonable.
        if (!odd.fits_ulong_p() || odd.get_ui() > 1000000)
            throw budget_error("kk oracle: odd factor too large for k^k lookup");
        return pow_int(odd, odd.get_ui());
    }
};

// ---- T = all positive integers ---------------------------------------------

class AllIntegersOracle final : public TOracle {
  public:
    std::string name() const override { return "integers"; }
    bool contains(const Int& x) const override { return x >= 1; }
    Int next_after(const Int& x) const override { return x < 1 ? Int(1) : Int(x + 1); }
    Int odd_multiple(const Int& odd) const override { return odd; }
};

// ---- T = M(S), S = {2^(2^k)} ∪ {k!, k ≥ 2} ---------------------------------

class GrahamProductsOracle final : public TOracle {
  public:
    std::string name() const override { return "ms"; }

    bool contains(const Int& x) const override {
        if (x < 2) return false;
        auto elems = elements_up_to(x);
        return std::binary_search(elems.begin(), elems.end(), x);
    }

    Int next_after(const Int& x) const override {
        // There is a power of two in (x, 2x], and every 2^s (s ≥ 1) is a
        // product of distinct generators, so the search bound 2x+2 suffices.
        Int bound = 2 * x + 2;
        auto elems = elements_up_to(bound);
        for (const Int& e : elems)
            if (e > x) return e;
        throw budget_error("ms oracle: enumeration failed");  // unreachable
    }

    Int odd_multiple(const Int& odd) const override {
        if (!odd.fits_ulong_p() || odd.get_ui() > 100000)
            throw budget_error("ms oracle: odd factor too large for factorial lookup");
        unsigned long k = std::max(odd.get_ui(), 2ul);
        Int fact;
        mpz_fac_ui(fact.get_mpz_t(), k);
        return fact;  // k! with k ≥ odd, a single generator
    }

  private:
    static std::vector<Int> generators_up_to(const Int& bound) {
        std::vector<Int> gens;
        Int fact = 2;  // 2!
        for (unsigned long k = 2; fact <= bound; ++k) {
            gens.push_back(fact);
            fact *= static_cast<unsigned long>(k + 1);
        }
        Int pow = 4;  // 2^(2^1)
        while (pow <= bound) {
            gens.push_back(pow);
            pow *= pow;
        }
        std::sort(gens.begin(), gens.end());
        return gens;
    }

    static void products(const std::vector<Int>& gens, std::size_t from,
                         const Int& acc, const Int& bound, std::vector<Int>& out) {
        for (std::size_t i = from; i < gens.size(); ++i) {
            Int next = acc * gens[i];
            if (next > bound) break;  // gens ascending, later ones only larger
            out.push_back(next);
            products(gens, i + 1, next, bound, out);
        }
    }

    static std::vector<Int> elements_up_to(const Int& bound) {
        std::vector<Int> out;
        products(generators_up_to(bound), 0, 1, bound, out);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

}  // namespace

std::unique_ptr<TOracle> make_toracle(const std::string& family) {
    if (family == "kk") return std::make_unique<KPowKOracle>();
    if (family == "integers") return std::make_unique<AllIntegersOracle>();
    if (family == "ms") return std::make_unique<GrahamProductsOracle>();
    throw param_error("unknown T family \"" + family + "\" (want kk, integers or ms)");
}

}  // namespace lacunary
