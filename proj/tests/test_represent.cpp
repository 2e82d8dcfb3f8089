#include <doctest.h>

#include <random>

#include "lacunary/builders.hpp"
#include "lacunary/represent.hpp"

using namespace lacunary;

namespace {

Rat R(const std::string& s) { return parse_rat(s); }

std::vector<Int> I(std::initializer_list<long> xs) {
    std::vector<Int> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

Rat resum(const std::vector<Int>& terms, const std::vector<std::size_t>& indices) {
    Rat sum(0);
    for (std::size_t i : indices) sum += make_rat(1, terms[i - 1]);
    return sum;
}

// The tempting simpler rule: include i whenever the residual covers 1/n_i.
// Kept test-local as the cautionary alternative; on inputs violating the
// chain inequality it strands residuals that lazy_greedy refuses up front.
bool naive_forward_greedy(const std::vector<Int>& terms, const Rat& q,
                          std::vector<std::size_t>& out) {
    const Int& last = terms.back();
    Int rest = q.get_num() * (last / q.get_den());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Int unit = last / terms[i];
        if (rest >= unit) {
            rest -= unit;
            out.push_back(i + 1);
        }
    }
    return rest == 0;
}

}  // namespace

TEST_CASE("choose_prefix picks the smallest compatible milestone") {
    auto fixture = load_fixture_27();
    CHECK(choose_prefix(fixture, R("5/3")) == 5);
    CHECK(choose_prefix(fixture, R("0")) == 2);
    CHECK(choose_prefix(fixture, R("1/7")) == 27);  // 7 first divides 7257600
    CHECK_THROWS_AS(choose_prefix(fixture, R("1/11")), prefix_error);
    CHECK_THROWS_AS(choose_prefix(fixture, R("-1")), param_error);
    try {
        choose_prefix(fixture, R("1/11"));
    } catch (const prefix_error& e) {
        CHECK(e.suggested_steps > 4);
    }
}

TEST_CASE("lazy_greedy worked examples") {
    auto prefix = I({1, 2, 4, 6, 12});
    auto rep = lazy_greedy(prefix, R("5/3"));
    CHECK(rep.indices == std::vector<std::size_t>{1, 2, 4});
    CHECK(rep.prefix_len == 5);

    CHECK(lazy_greedy(prefix, R("0")).indices.empty());
    CHECK(lazy_greedy(prefix, R("2")).indices == std::vector<std::size_t>{1, 2, 3, 4, 5});

    CHECK_THROWS_AS(lazy_greedy(prefix, R("5/2")), param_error);   // above the sum
    CHECK_THROWS_AS(lazy_greedy(prefix, R("1/5")), param_error);   // 5 does not divide 12
    CHECK_THROWS_AS(lazy_greedy(prefix, R("-1/12")), param_error);
    CHECK(lazy_greedy({}, R("0")).indices.empty());
    CHECK_THROWS_AS(lazy_greedy({}, R("1")), param_error);
}

TEST_CASE("lazy_greedy rejects chain violations where the naive rule strands") {
    auto bad = I({1, 4, 16});
    CHECK_THROWS_WITH_AS(lazy_greedy(bad, R("1/2")),
                         doctest::Contains("chain inequality fails at index 1"),
                         param_error);
    std::vector<std::size_t> picked;
    bool ok = naive_forward_greedy(bad, R("1/2"), picked);  // 8 units: takes 4, then 1
    CHECK_FALSE(ok);  // strands 3/16 with nothing left
}

TEST_CASE("lazy_greedy agrees with brute force on a divisor-closed prefix") {
    auto prefix = I({1, 2, 4, 6, 12});
    auto sums = brute_force_sums(prefix);
    GreedyPrefix engine(prefix);
    REQUIRE(engine.total_units() == 24);  // 12 · (1 + 1/2 + 1/4 + 1/6 + 1/12)
    for (Int k = 0; k <= 24; ++k) {
        CHECK(sums.contains(make_rat(k, 12)));
        CHECK(engine.check(k));
    }
}

TEST_CASE("greedy engine: fast path and big path agree with the oracle") {
    auto fixture = load_fixture_27();
    std::vector<Int> prefix(fixture.terms.begin(), fixture.terms.begin() + 12);
    GreedyPrefix engine(prefix);
    REQUIRE(engine.has_fast_path());
    auto sums = brute_force_sums(prefix);
    Int total = engine.total_units();
    for (Int k = 0; k <= total; ++k) {
        bool in_oracle = sums.contains(make_rat(k, engine.last_term()));
        CHECK(in_oracle);  // milestone prefixes fill every multiple
        CHECK(engine.check(k) == in_oracle);
        CHECK(engine.extract_fast(k.get_ui()) == in_oracle);
    }
    Int beyond = total + 1;
    CHECK_FALSE(engine.check(beyond));
    CHECK_FALSE(engine.extract_fast(beyond.get_ui()));
}

TEST_CASE("represent over the fixture") {
    auto fixture = load_fixture_27();
    auto rep = represent(fixture, R("5/3"));
    CHECK(rep.indices == std::vector<std::size_t>{1, 2, 4});
    CHECK(rep.prefix_len == 5);

    rep = represent(fixture, R("1"));
    CHECK(rep.indices == std::vector<std::size_t>{1});

    rep = represent(fixture, R("3/720"));
    CHECK(resum(fixture.terms, rep.indices) == R("1/240"));
    // brute force over the 12-term prefix confirms reachability
    std::vector<Int> prefix12(fixture.terms.begin(), fixture.terms.begin() + 12);
    CHECK(brute_force_sums(prefix12).contains(R("3/720")));
}

TEST_CASE("represent_many: distinct sets with increasing maxima") {
    auto fixture = load_fixture_27();
    auto reps = represent_many(fixture, R("1"), 2);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].indices == std::vector<std::size_t>{1});
    CHECK(reps[1].indices == std::vector<std::size_t>{2, 3, 4, 5});

    auto seq = build_theorem1(R("3/2"), 6);
    auto many = represent_many(seq, R("1"), 4);
    REQUIRE(many.size() == 4);
    std::size_t prev_max = 0;
    for (const auto& r : many) {
        CHECK(resum(seq.terms, r.indices) == 1);
        CHECK(r.indices.back() > prev_max);
        prev_max = r.indices.back();
    }
    for (std::size_t i = 0; i < many.size(); ++i)
        for (std::size_t j = i + 1; j < many.size(); ++j)
            CHECK(many[i].indices != many[j].indices);

    CHECK_THROWS_AS(represent_many(fixture, R("1"), 10), prefix_error);
    CHECK_THROWS_AS(represent_many(fixture, R("0"), 1), param_error);
}

TEST_CASE("brute_force_sums") {
    auto sums = brute_force_sums(I({1, 2}));
    CHECK(sums.denom == 2);
    CHECK(sums.numers == std::vector<Int>{0, 1, 2, 3});

    sums = brute_force_sums({});
    CHECK(sums.denom == 1);
    CHECK(sums.numers == std::vector<Int>{0});

    sums = brute_force_sums(I({1, 2, 4, 6, 12}));
    CHECK(sums.numers.size() == 32);
    // every k/12 with 0 <= k <= 24 is covered, some multiple times
    for (Int k = 0; k <= 24; ++k) CHECK(sums.contains(make_rat(k, 12)));
    std::size_t dup = 0;
    for (std::size_t i = 0; i + 1 < sums.numers.size(); ++i)
        if (sums.numers[i] == sums.numers[i + 1]) ++dup;
    CHECK(dup == 32 - 25);  // multiplicities retained

    std::vector<Int> too_many(25, Int(1));
    CHECK_THROWS_AS(brute_force_sums(too_many), param_error);
}

TEST_CASE("verify_fill: the showcase fills and a failing grid") {
    auto fixture = load_fixture_27();
    std::span<const Int> all(fixture.terms);

    FillOptions open_hi;
    open_hi.hi_inclusive = false;
    auto r = verify_fill(all.first(2), 2, R("0"), R("2"), FillMode::exhaustive, open_hi);
    CHECK(r.pass());
    CHECK(r.checked == 4);  // 0, 1/2, 1, 3/2

    r = verify_fill(all.first(5), 12, R("0"), R("2"), FillMode::exhaustive);
    CHECK(r.pass());
    CHECK(r.checked == 25);

    r = verify_fill(all.first(5), 12, R("0"), R("2"), FillMode::greedy);
    CHECK(r.pass());
    CHECK(r.checked == 25);

    auto bad = I({1, 4, 16});
    r = verify_fill(bad, 4, R("0"), R("1"), FillMode::exhaustive);
    CHECK_FALSE(r.pass());
    REQUIRE(r.counterexample.has_value());
    CHECK(*r.counterexample == R("1/2"));

    // greedy mode refuses preconditions it cannot meet
    CHECK_THROWS_AS(verify_fill(bad, 4, R("0"), R("1"), FillMode::greedy), param_error);
    CHECK_THROWS_AS(verify_fill(all.first(5), 7, R("0"), R("1"), FillMode::greedy),
                    param_error);  // 7 does not divide 12
}

TEST_CASE("verify_fill: sampling and threading agree with the full scan") {
    auto fixture = load_fixture_27();
    std::span<const Int> prefix(fixture.terms.data(), 12);

    FillOptions opts;
    opts.threads = 4;
    auto full = verify_fill(prefix, 720, R("0"), R("2"), FillMode::greedy, opts);
    CHECK(full.pass());
    CHECK(full.checked == 1441);

    opts.samples = 300;
    auto sampled = verify_fill(prefix, 720, R("0"), R("2"), FillMode::sample, opts);
    CHECK(sampled.pass());
    CHECK(sampled.checked == 300);

    // deterministic across partitionings
    FillOptions one;
    one.threads = 1;
    auto serial = verify_fill(prefix, 720, R("0"), R("2"), FillMode::greedy, one);
    CHECK(serial.failures == full.failures);
    CHECK(serial.checked == full.checked);
}

TEST_CASE("represent works over every builder family") {
    // theorem3 sequences have jump ratios above 2, yet the summed chain
    // inequality still holds, so extraction must go through
    auto params = choose_thm3_params(R("2"), R("4/3"));
    auto jumpy = build_theorem3(params, 2);
    for (const char* qs : {"1/2", "17/24", "1", "5/3"}) {
        auto rep = represent(jumpy, R(qs));
        CHECK(resum(jumpy.terms, rep.indices) == R(qs));
    }

    auto near_optimal = build_theorem2(R("3/2"), R("2/3"), 2);
    for (const char* qs : {"61/30", "1/120", "2"}) {
        auto rep = represent(near_optimal, R(qs));
        CHECK(resum(near_optimal.terms, rep.indices) == R(qs));
    }

    Representer batch(near_optimal);
    auto rep = batch.represent(R("61/30"));
    CHECK(resum(near_optimal.terms, rep.indices) == R("61/30"));
    CHECK_THROWS_AS(batch.represent(R("1/997")), prefix_error);
}

TEST_CASE("soundness: random achievable targets re-extract exactly") {
    auto fixture = load_fixture_27();
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t m = fixture.milestones[rng() % fixture.milestones.size()];
        std::vector<Int> prefix(fixture.terms.begin(), fixture.terms.begin() + m);
        Rat q(0);
        for (std::size_t i = 0; i < m; ++i)
            if (rng() & 1) q += make_rat(1, prefix[i]);
        auto rep = lazy_greedy(prefix, q);
        CHECK(resum(prefix, rep.indices) == q);
    }
}
