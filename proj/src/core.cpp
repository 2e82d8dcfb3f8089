#include "lacunary/core.hpp"

#include <algorithm>
#include <cctype>

namespace lacunary {

namespace {

bool looks_like_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Int parse_int(const std::string& text) {
    if (!looks_like_integer(text))
        throw param_error("not a decimal integer: \"" + text + "\"");
    return Int(text, 10);
}

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    return make_rat(num, den);
}

std::string to_string(const Int& value) { return value.get_str(); }

std::string to_string(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw param_error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string decimal_string(const Rat& value, std::size_t digits) {
    if (value < 0) {
        Rat flipped = -value;
        return "-" + decimal_string(flipped, digits);
    }
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Int scaled;
    // floor(value · 10^digits): truncation certifies a decimal prefix.
    mpz_fdiv_q(scaled.get_mpz_t(), Int(value.get_num() * scale).get_mpz_t(),
               value.get_den().get_mpz_t());
    Int whole, frac;
    mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), scaled.get_mpz_t(),
                scale.get_mpz_t());
    if (digits == 0) return whole.get_str();
    std::string tail = frac.get_str();
    tail.insert(tail.begin(), digits - tail.size(), '0');
    return whole.get_str() + "." + tail;
}

Int ceil_mul(const Int& a, const Rat& multiplier) {
    if (multiplier <= 0) throw param_error("ceil_mul: multiplier must be positive");
    Int result;
    Int num = multiplier.get_num() * a;
    mpz_cdiv_q(result.get_mpz_t(), num.get_mpz_t(), multiplier.get_den().get_mpz_t());
    return result;
}

Int floor_mul(const Int& a, const Rat& multiplier) {
    if (multiplier <= 0) throw param_error("floor_mul: multiplier must be positive");
    Int result;
    Int num = multiplier.get_num() * a;
    mpz_fdiv_q(result.get_mpz_t(), num.get_mpz_t(), multiplier.get_den().get_mpz_t());
    return result;
}

Rat pow_rat(const Rat& base, unsigned long exponent) {
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
    Rat r(num, den);
    r.canonicalize();  // already canonical, but cheap
    return r;
}

unsigned long floor_log(const Rat& base, const Rat& x) {
    if (base <= 1) throw param_error("floor_log: base must exceed 1");
    if (x < 1) throw param_error("floor_log: x must be at least 1");
    unsigned long e = 0;
    Rat power(1);
    while (true) {
        power *= base;
        if (power > x) return e;
        ++e;
    }
}

bool is_power_of_two(const Int& x) {
    return x > 0 && mpz_popcount(x.get_mpz_t()) == 1;
}

std::size_t bit_length(const Int& x) {
    if (x <= 0) throw param_error("bit_length: positive input required");
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

std::vector<Int> first_k_primes(std::size_t k) {
    std::vector<Int> primes;
    primes.reserve(k);
    Int p = 2;
    while (primes.size() < k) {
        primes.push_back(p);
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    return primes;
}

Int lcm_list(const std::vector<Int>& values) {
    if (values.empty()) throw param_error("lcm_list: empty list");
    Int acc = 1;
    for (const Int& v : values) {
        if (v <= 0) throw param_error("lcm_list: values must be positive");
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_mpz_t());
    }
    return acc;
}

TwoAdicSplit split_two_adic(const Int& value) {
    if (value < 1) throw param_error("split_two_adic: input must be at least 1");
    unsigned long k = static_cast<unsigned long>(mpz_scan1(value.get_mpz_t(), 0));
    Int odd;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), value.get_mpz_t(), k);
    return {k, odd};
}

}  // namespace lacunary
