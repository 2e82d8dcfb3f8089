#include <doctest.h>

#include <random>

#include "lacunary/chains.hpp"

using namespace lacunary;

namespace {

Rat R(const std::string& s) { return parse_rat(s); }

// ratio window check, exact: lambda_lo <= hi/lo <= 2
void check_window(const Int& lo, const Int& hi, const Rat& lambda_lo) {
    CHECK(lambda_lo.get_num() * lo <= lambda_lo.get_den() * hi);
    CHECK(hi <= 2 * lo);
}

}  // namespace

TEST_CASE("find_exponents: smallest-b certificates") {
    auto e = find_exponents(3, R("3/2"));
    CHECK(e.a == 1);
    CHECK(e.b == 1);  // 3/2 in [3/2, 2]

    e = find_exponents(5, R("3/2"));
    CHECK(e.a == 4);
    CHECK(e.b == 2);  // 25/16 in [3/2, 2]

    e = find_exponents(3, R("5/4"));
    CHECK(e.a == 1);
    CHECK(e.b == 1);  // 5/4 <= 3/2 <= 2

    CHECK_THROWS_AS(find_exponents(4, R("3/2")), param_error);   // power of two
    CHECK_THROWS_AS(find_exponents(2, R("3/2")), param_error);   // too small
    CHECK_THROWS_AS(find_exponents(3, R("2")), param_error);     // window empty
    CHECK_THROWS_AS(find_exponents(3, R("1")), param_error);
}

TEST_CASE("find_exponents minimality: no smaller b admits a window hit") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        Int v = Int(rng() % 995 + 3);
        if (is_power_of_two(v)) ++v;
        Rat lambda = make_rat(Int(rng() % 900 + 101), 100);  // in (1.01, 10.01)
        if (lambda <= 1 || lambda >= 2) continue;
        auto [a, b] = find_exponents(v, lambda);
        Int vb;
        mpz_pow_ui(vb.get_mpz_t(), v.get_mpz_t(), b);
        Int two_a = Int(1) << a;
        check_window(two_a, vb, lambda);
        for (unsigned long smaller = 1; smaller < b; ++smaller) {
            Int w;
            mpz_pow_ui(w.get_mpz_t(), v.get_mpz_t(), smaller);
            unsigned long cand = bit_length(w) - 1;  // unique candidate a
            bool hits = cand >= 1 &&
                        lambda.get_num() * (Int(1) << cand) <= lambda.get_den() * w;
            CHECK_FALSE(hits);
        }
    }
}

TEST_CASE("build_chain examples") {
    auto ch = build_chain(4, R("3/2"));
    CHECK(ch.product == 4);
    CHECK(ch.chain == std::vector<Int>{1, 2, 4});  // power-of-two branch
    ch.validate();

    ch = build_chain(3, R("3/2"));
    CHECK(ch.product == 6);
    CHECK(ch.chain == std::vector<Int>{1, 2, 3, 6});
    ch.validate();

    ch = build_chain(5, R("3/2"));
    CHECK(ch.product == 400);
    CHECK(ch.chain == std::vector<Int>{1, 2, 4, 8, 16, 25, 50, 100, 200, 400});
    ch.validate();

    ch = build_chain(1, R("3/2"));
    CHECK(ch.product == 1);
    CHECK(ch.chain == std::vector<Int>{1});

    CHECK_THROWS_AS(build_chain(3, R("5/2")), param_error);
    CHECK_THROWS_AS(build_chain(0, R("3/2")), param_error);
}

TEST_CASE("build_chain invariants on random inputs") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 150; ++trial) {
        Int q = Int(rng() % 100000 + 1);
        Rat lambda = make_rat(Int(rng() % 98 + 101), 100);  // (1.01, 1.99)
        auto ch = build_chain(q, lambda);
        ch.validate();
        CHECK(ch.product % q == 0);
        // determinism
        auto again = build_chain(q, lambda);
        CHECK(again.chain == ch.chain);
    }
}

TEST_CASE("extend_chain examples") {
    CHECK(extend_chain({1}, 1, R("3/2")).empty());

    auto app = extend_chain({1, 2}, 3, R("3/2"));
    CHECK(app == std::vector<Int>{4, 6, 12});

    app = extend_chain({1, 2, 3, 5}, 1, R("3/2"));
    CHECK(app == std::vector<Int>{10, 20, 30, 60, 120});

    CHECK_THROWS_AS(extend_chain({2, 3}, 1, R("3/2")), param_error);  // no unit
    CHECK_THROWS_AS(extend_chain({1, 3, 3}, 1, R("3/2")), param_error);
}

TEST_CASE("extend_chain closure and window on random prefixes") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<Int> prefix{1};
        int len = 1 + int(rng() % 5);
        for (int i = 0; i < len; ++i)
            prefix.push_back(prefix.back() + Int(rng() % 20 + 1));
        Int q = Int(rng() % 50 + 1);
        Rat lambda = make_rat(Int(rng() % 98 + 101), 100);

        auto appended = extend_chain(prefix, q, lambda);
        std::vector<Int> all = prefix;
        all.insert(all.end(), appended.begin(), appended.end());
        const Int& n = all.back();
        CHECK(n % q == 0);
        for (const Int& x : all) CHECK(n % x == 0);
        for (std::size_t i = prefix.size() - 1; i + 1 < all.size(); ++i)
            check_window(all[i], all[i + 1], lambda);
    }
}
