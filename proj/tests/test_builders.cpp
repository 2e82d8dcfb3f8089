#include <doctest.h>

#include <random>

#include "lacunary/builders.hpp"

using namespace lacunary;

namespace {

Rat R(const std::string& s) { return parse_rat(s); }

Rat ratio(const LacunarySeq& seq, std::size_t i) {  // terms[i+1]/terms[i], 1-based i
    return make_rat(seq.term(i + 1), seq.term(i));
}

}  // namespace

TEST_CASE("theorem1: first steps") {
    auto seq = build_theorem1(R("3/2"), 1);
    CHECK(seq.terms == std::vector<Int>{1, 2});
    CHECK(seq.milestones == std::vector<std::size_t>{2});
    seq.validate();

    seq = build_theorem1(R("3/2"), 2);
    seq.validate();
    // step 2 appends the chain of Q = 6 at floor max{3/2, 3/2} scaled by 2
    CHECK(seq.terms == std::vector<Int>{1, 2, 4, 8, 12, 24, 48});
    CHECK(seq.milestones == std::vector<std::size_t>{2, 7});
    const Int& pivot = seq.term(7);
    CHECK(pivot % 6 == 0);
    for (std::size_t j = 1; j < 7; ++j) CHECK(pivot % seq.term(j) == 0);
}

TEST_CASE("theorem1: invariants across lambdas") {
    for (const char* ls : {"5/4", "3/2", "7/4"}) {
        Rat lambda = R(ls);
        auto seq = build_theorem1(lambda, 3);
        seq.validate();

        // ratio window per step: max{lambda, 2 - 1/k} <= ratio <= 2
        std::size_t step_start = 1;
        for (std::size_t k = 1; k <= 3; ++k) {
            Rat floor_k = std::max(lambda, Rat(Rat(2) - make_rat(1, Int(k))));
            std::size_t step_end = seq.milestones[k - 1];
            for (std::size_t i = step_start; i < step_end; ++i) {
                CHECK(ratio(seq, i) >= floor_k);
                CHECK(ratio(seq, i) <= 2);
            }
            step_start = step_end;
        }

        // milestone terms collect the first k primes
        auto primes = first_k_primes(3);
        for (std::size_t k = 1; k <= 3; ++k)
            for (std::size_t j = 0; j < k; ++j)
                CHECK(seq.term(seq.milestones[k - 1]) % primes[j] == 0);

        // n_i <= 2^(i-1), hence prefix sums >= 2 - 2^(1-I)
        Rat sum(0);
        Int cap = 1;
        for (std::size_t i = 1; i <= seq.size(); ++i) {
            CHECK(seq.term(i) <= cap);
            cap *= 2;
            sum += make_rat(1, seq.term(i));
            CHECK(sum >= Rat(2) - pow_rat(R("1/2"), i - 1));
        }

        // prefix extensibility: fewer steps = literal prefix
        auto shorter = build_theorem1(lambda, 2);
        REQUIRE(shorter.size() <= seq.size());
        for (std::size_t i = 1; i <= shorter.size(); ++i)
            CHECK(shorter.term(i) == seq.term(i));
    }
}

TEST_CASE("fixture27 is the hand-picked showcase sequence") {
    auto seq = load_fixture_27();
    seq.validate();
    REQUIRE(seq.size() == 27);
    CHECK(seq.lambda == R("3/2"));
    CHECK(seq.milestones == std::vector<std::size_t>{2, 5, 12, 27});
    CHECK(seq.term(1) == 1);
    CHECK(seq.term(12) == 720);
    CHECK(seq.term(27) == 7257600);

    Rat min_ratio(2);
    for (std::size_t i = 1; i < 27; ++i) min_ratio = std::min(min_ratio, ratio(seq, i));
    CHECK(min_ratio == R("3/2"));
    CHECK(ratio(seq, 17) == R("3/2"));  // 34560 / 23040
}

TEST_CASE("theorem2: greedy head then closure") {
    // eps = 2/3 gives head length K = 4
    auto seq = build_theorem2(R("3/2"), R("2/3"), 1);
    seq.validate();
    REQUIRE(seq.size() >= 9);
    std::vector<Int> head(seq.terms.begin(), seq.terms.begin() + 9);
    CHECK(head == std::vector<Int>{1, 2, 3, 5, 10, 20, 30, 60, 120});
    CHECK(seq.milestones.front() == 9);
    CHECK(seq.provenance["head_len"] == 4);
    CHECK(parse_rat(seq.provenance["head_sum"].get<std::string>()) == R("61/30"));

    // smaller eps: longer greedy head
    seq = build_theorem2(R("3/2"), R("1/1000"), 1);
    seq.validate();
    std::vector<Int> first10(seq.terms.begin(), seq.terms.begin() + 10);
    CHECK(first10 == std::vector<Int>{1, 2, 3, 5, 8, 12, 18, 27, 41, 62});
    CHECK(seq.provenance["head_len"] == 20);  // 2 + floor(log_1.5 2000)

    // head terms dominate lambda^(i-1) (exact)
    std::size_t head_len = seq.provenance["head_len"].get<std::size_t>();
    for (std::size_t i = 1; i <= head_len; ++i)
        CHECK(Rat(seq.term(i)) >= pow_rat(R("3/2"), i - 1));

    CHECK_THROWS_AS(build_theorem2(R("3/2"), R("2"), 1), param_error);
    CHECK_THROWS_AS(build_theorem2(R("5/2"), R("1/2"), 1), param_error);
}

TEST_CASE("theorem3 parameter derivation") {
    auto p = choose_thm3_params(R("2"), R("4/3"));
    CHECK(p.epsilon == R("1/4"));
    CHECK(p.m0 == 4);
    CHECK(p.u_run == 3);

    CHECK_THROWS_AS(choose_thm3_params(R("2"), R("2")), param_error);
    CHECK_THROWS_AS(choose_thm3_params(R("3"), R("3/2")), param_error);
    CHECK_THROWS_AS(choose_thm3_params(R("3/2"), R("4/3")), param_error);  // Lambda < 2
}

TEST_CASE("theorem3: block structure matches the emitted provenance") {
    auto p = choose_thm3_params(R("2"), R("4/3"));
    auto seq = build_theorem3(p, 3);
    seq.validate();

    std::vector<Int> start(seq.terms.begin(), seq.terms.begin() + 8);
    CHECK(start == std::vector<Int>{1, 2, 4, 8, 17, 23, 31, 42});

    const Rat lam = p.lambda, big = p.big_lambda, eps = p.epsilon;
    std::size_t jumps = 0;
    for (const auto& block : seq.provenance["ratio_blocks"]) {
        std::string kind = block["kind"].get<std::string>();
        if (kind == "jump") {
            std::size_t idx = block["index"].get<std::size_t>();
            Rat r = make_rat(seq.term(idx), seq.term(idx - 1));
            CHECK(r > big);
            CHECK(r < big + eps);
            ++jumps;
        } else {
            std::size_t first = block["first"].get<std::size_t>();
            std::size_t last = block["last"].get<std::size_t>();
            for (std::size_t i = std::max<std::size_t>(first, 2); i <= last; ++i) {
                Rat r = make_rat(seq.term(i), seq.term(i - 1));
                if (kind == "doubling") {
                    CHECK(r == 2);
                } else if (kind == "ceiling_run") {
                    CHECK(r >= lam);
                    CHECK(r < lam + eps);
                } else {  // divisor_chain
                    CHECK(r >= lam);
                    CHECK(r <= 2);
                }
            }
        }
    }
    CHECK(jumps == 3);

    // exactly one ratio above Lambda per step, nowhere else
    std::size_t above = 0;
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (ratio(seq, i) > big) ++above;
    CHECK(above == 3);
}

TEST_CASE("theorem4 chain over T = {2^a k^k}") {
    auto oracle = make_toracle("kk");
    auto built = build_theorem4_chain(*oracle, R("1/3"));
    CHECK(built.chain ==
          std::vector<Int>{1, 2, 4, 8, 16, 27, 54, 108, 216, 432});
    CHECK(built.head_len == 1);
    CHECK(built.two_exp == 0);
    CHECK(built.odd_part == 3);
    CHECK(built.pivot == 27);
    CHECK(built.window == 5);
    for (const Int& x : built.chain) CHECK(oracle->contains(x));
    for (std::size_t i = 0; i + 1 < built.chain.size(); ++i)
        CHECK(built.chain[i + 1] <= 2 * built.chain[i]);
    CHECK(built.chain.back() % 3 == 0);
}

TEST_CASE("theorem4 degenerate odd part") {
    auto oracle = make_toracle("integers");
    auto built = build_theorem4_chain(*oracle, R("1/2"));
    CHECK(built.chain == std::vector<Int>{1, 2, 4});
    CHECK(built.odd_part == 1);
    CHECK(built.window == 1);
}

TEST_CASE("kk oracle") {
    auto oracle = make_toracle("kk");
    CHECK(oracle->contains(1));
    CHECK(oracle->contains(27));
    CHECK(oracle->contains(108));  // 4 * 27
    CHECK_FALSE(oracle->contains(5));
    CHECK_FALSE(oracle->contains(24));
    CHECK(oracle->next_after(16) == 27);
    CHECK(oracle->next_after(27) == 32);
    CHECK(oracle->odd_multiple(3) == 27);
    CHECK(oracle->odd_multiple(5) == 3125);
}

TEST_CASE("ms oracle: Graham's product family") {
    auto oracle = make_toracle("ms");
    // products of distinct generators {2, 4, 6, 16, 24, 120, 256, ...}
    std::vector<Int> first;
    Int cur = 0;
    for (int i = 0; i < 8; ++i) {
        cur = oracle->next_after(cur);
        first.push_back(cur);
    }
    CHECK(first == std::vector<Int>{2, 4, 6, 8, 12, 16, 24, 32});
    CHECK_FALSE(oracle->contains(10));
    CHECK_FALSE(oracle->contains(3));

    // 2T ⊆ T, spot-checked over the enumerated range
    for (const Int& x : first) CHECK(oracle->contains(Int(2 * x)));

    CHECK(oracle->odd_multiple(3) == 6);     // 3!
    CHECK(oracle->odd_multiple(7) == 5040);  // 7!

    auto built = build_theorem4_chain(*oracle, R("1/3"));
    CHECK(built.chain == std::vector<Int>{2, 4, 6, 12, 24});
    for (const Int& x : built.chain) CHECK(oracle->contains(x));
}

TEST_CASE("theorem4 budget exhaustion reports the oracle as insufficient") {
    auto oracle = make_toracle("kk");
    // reciprocal sums over T cap out near 2.6, so q = 3 cannot be covered
    CHECK_THROWS_AS(build_theorem4_chain(*oracle, R("3"), 2000), budget_error);
    CHECK_THROWS_AS(build_theorem4_chain(*oracle, R("0")), param_error);
}

TEST_CASE("builders are deterministic") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        Rat lambda = make_rat(Int(rng() % 80 + 110), 100);
        auto a = build_theorem1(lambda, 3);
        auto b = build_theorem1(lambda, 3);
        CHECK(a.terms == b.terms);
        CHECK(a.milestones == b.milestones);
    }
}
