#include "lacunary/builders.hpp"

#include <algorithm>

namespace lacunary {

namespace {

void require_open_unit_window(const Rat& lambda) {
    if (lambda <= 1 || lambda >= 2)
        throw param_error("lambda must lie strictly between 1 and 2, got " +
                          to_string(lambda));
}

// Ratio floor for step k of the milestone loop: max{λ, 2 − 1/k}.
Rat step_ratio_floor(const Rat& lambda, std::size_t k) {
    Rat alt = Rat(2) - make_rat(1, Int(static_cast<unsigned long>(k)));
    return std::max(lambda, alt);
}

// Appends the scaled divisor chain of Q = p_1···p_k for each step
// k = first_step..k_steps and records a milestone at each step end.
void run_milestone_loop(LacunarySeq& seq, const Rat& lambda,
                        std::size_t first_step, std::size_t k_steps) {
    auto primes = first_k_primes(k_steps);
    Int q = 1;
    for (std::size_t k = 1; k < first_step; ++k) q *= primes[k - 1];
    for (std::size_t k = first_step; k <= k_steps; ++k) {
        q *= primes[k - 1];
        DivisorChain ch = build_chain(q, step_ratio_floor(lambda, k));
        const Int base = seq.terms.back();
        for (std::size_t j = 1; j < ch.chain.size(); ++j)
            seq.terms.push_back(ch.chain[j] * base);
        seq.milestones.push_back(seq.terms.size());
    }
}

}  // namespace

LacunarySeq build_theorem1(const Rat& lambda, std::size_t k_steps) {
    require_open_unit_window(lambda);
    if (k_steps < 1) throw param_error("build_theorem1: need at least one step");

    LacunarySeq seq;
    seq.lambda = lambda;
    seq.terms.push_back(1);
    run_milestone_loop(seq, lambda, 1, k_steps);

    seq.provenance["construction"] = "theorem1";
    seq.provenance["lambda"] = to_string(lambda);
    seq.provenance["steps"] = k_steps;
    seq.set_continuation_ratio_cap(Rat(2));
    return seq;
}

LacunarySeq load_fixture_27() {
    static const long kTerms[] = {1,       2,       4,       6,      12,
                                  24,      48,      72,      120,    180,
                                  360,     720,     1440,    2880,   5760,
                                  11520,   23040,   34560,   51840,  100800,
                                  151200,  226800,  453600,  907200, 1814400,
                                  3628800, 7257600};
    LacunarySeq seq;
    seq.lambda = make_rat(3, 2);
    for (long t : kTerms) seq.terms.push_back(t);
    seq.milestones = {2, 5, 12, 27};
    seq.provenance["construction"] = "fixture27";
    seq.set_continuation_ratio_cap(Rat(2));
    seq.validate();
    return seq;
}

LacunarySeq build_theorem2(const Rat& lambda, const Rat& eps, std::size_t k_steps) {
    require_open_unit_window(lambda);
    if (eps <= 0 || eps >= 1) throw param_error("eps must lie in (0,1)");

    // K = 2 + ⌊log_λ 1/(eps(λ−1))⌋ puts the greedy-head reciprocal sum
    // within eps of its limit.
    Rat gap_inverse = 1 / (eps * (lambda - 1));
    std::size_t head_len = 2 + floor_log(lambda, gap_inverse);

    LacunarySeq seq;
    seq.lambda = lambda;
    seq.terms.push_back(1);
    Rat head_sum(1);
    while (seq.terms.size() < head_len) {
        seq.terms.push_back(ceil_mul(seq.terms.back(), lambda));
        head_sum += make_rat(1, seq.terms.back());
    }

    // Close divisibility over the head, then continue with the usual loop.
    auto appended = extend_chain(seq.terms, 1, lambda);
    seq.terms.insert(seq.terms.end(), appended.begin(), appended.end());
    seq.milestones.push_back(seq.terms.size());
    run_milestone_loop(seq, lambda, 1, k_steps);

    seq.provenance["construction"] = "theorem2";
    seq.provenance["lambda"] = to_string(lambda);
    seq.provenance["eps"] = to_string(eps);
    seq.provenance["steps"] = k_steps;
    seq.provenance["head_len"] = head_len;
    seq.provenance["head_sum"] = to_string(head_sum);
    seq.set_continuation_ratio_cap(Rat(2));
    return seq;
}

ThmThreeParams choose_thm3_params(const Rat& big_lambda, const Rat& lambda) {
    if (big_lambda < 2) throw param_error("Lambda must be at least 2");
    Rat threshold = big_lambda / (big_lambda - 1);
    if (lambda <= 1) throw param_error("lambda must exceed 1");
    if (lambda >= threshold)
        throw param_error(
            "no lambda-lacunary sequence with jumps above Lambda can fill an "
            "interval when lambda >= Lambda/(Lambda-1) = " +
            to_string(threshold) + "; got lambda = " + to_string(lambda));

    ThmThreeParams params;
    params.big_lambda = big_lambda;
    params.lambda = lambda;

    // Largest ε = 2^(−t): both constraints relax monotonically as ε shrinks,
    // so the first passing t wins.
    unsigned long t = 1;
    for (;; ++t) {
        Rat eps = make_rat(1, Int(1) << t);
        Rat a = lambda + eps, b = big_lambda + eps;
        if (a < 2 && 1 / a + 1 / b > 1) {
            params.epsilon = eps;
            break;
        }
        if (t > 64) throw param_error("no feasible epsilon found");  // cannot happen
    }

    Rat a = lambda + params.epsilon, b = big_lambda + params.epsilon;
    Rat margin = b * (1 / a + 1 / b - 1);  // positive by the ε choice
    unsigned long u = 1;
    while (!(1 < pow_rat(a, u + 1) * margin)) ++u;
    params.u_run = u;

    params.m0 = 2 + floor_log(Rat(2), 1 / params.epsilon);
    return params;
}

LacunarySeq build_theorem3(const ThmThreeParams& params, std::size_t k_steps) {
    const Rat& lam = params.lambda;
    const Rat& big = params.big_lambda;

    LacunarySeq seq;
    seq.lambda = lam;
    Int pw = 1;
    for (std::size_t i = 0; i < params.m0; ++i) {
        seq.terms.push_back(pw);
        pw *= 2;
    }
    seq.milestones.push_back(seq.terms.size());

    auto blocks = nlohmann::json::array();
    blocks.push_back({{"kind", "doubling"}, {"first", 1}, {"last", params.m0}});

    auto primes = first_k_primes(k_steps);
    Int q = 1;
    for (std::size_t k = 1; k <= k_steps; ++k) {
        q *= primes[k - 1];

        seq.terms.push_back(floor_mul(seq.terms.back(), big) + 1);
        blocks.push_back({{"kind", "jump"}, {"index", seq.terms.size()}});

        std::size_t run_first = seq.terms.size() + 1;
        for (unsigned long u = 0; u < params.u_run; ++u)
            seq.terms.push_back(ceil_mul(seq.terms.back(), lam));
        blocks.push_back(
            {{"kind", "ceiling_run"}, {"first", run_first}, {"last", seq.terms.size()}});

        std::size_t chain_first = seq.terms.size() + 1;
        auto appended = extend_chain(seq.terms, q, lam);
        seq.terms.insert(seq.terms.end(), appended.begin(), appended.end());
        seq.milestones.push_back(seq.terms.size());
        blocks.push_back(
            {{"kind", "divisor_chain"}, {"first", chain_first}, {"last", seq.terms.size()}});
    }

    seq.provenance["construction"] = "theorem3";
    seq.provenance["Lambda"] = to_string(big);
    seq.provenance["lambda"] = to_string(lam);
    seq.provenance["epsilon"] = to_string(params.epsilon);
    seq.provenance["U"] = params.u_run;
    seq.provenance["m0"] = params.m0;
    seq.provenance["steps"] = k_steps;
    seq.provenance["ratio_blocks"] = blocks;
    // Continuation ratios stay below Λ+ε (jumps included).
    seq.set_continuation_ratio_cap(big + params.epsilon);
    return seq;
}

Theorem4Chain build_theorem4_chain(const TOracle& oracle, const Rat& q,
                                   std::size_t enum_budget) {
    if (q <= 0) throw param_error("q must be positive");

    Theorem4Chain out;
    Rat partial(0);
    Int cursor = 0;
    while (partial < q) {
        if (out.chain.size() >= enum_budget)
            throw budget_error("T-oracle insufficient: enumerated " +
                               std::to_string(enum_budget) +
                               " elements, reciprocal sum still below " + to_string(q));
        cursor = oracle.next_after(cursor);
        out.chain.push_back(cursor);
        partial += make_rat(1, cursor);
    }
    out.head_len = out.chain.size();
    const Int head_last = out.chain.back();

    std::vector<Int> lcm_inputs = out.chain;
    lcm_inputs.push_back(q.get_den());
    auto split = split_two_adic(lcm_list(lcm_inputs));
    out.two_exp = split.exponent;
    out.odd_part = split.odd;

    if (out.odd_part == 1) {
        // Degenerate case: any window element works; prefer the smallest
        // element of T in (n_K, 2n_K], which exists unless T skips the
        // window entirely, and 2n_K ∈ T regardless.
        Int candidate = oracle.next_after(head_last);
        out.pivot = candidate <= 2 * head_last ? candidate : Int(2 * head_last);
        out.window = 1;
    } else {
        Int multiple = oracle.odd_multiple(out.odd_part);
        if (multiple % out.odd_part != 0)
            throw budget_error("T-oracle insufficient: no multiple of " +
                               to_string(out.odd_part));
        if (multiple <= head_last) {
            while (multiple <= head_last) multiple *= 2;  // stays in T
            out.pivot = multiple;
            out.window = 1;
        } else {
            out.pivot = multiple;
            out.window = 0;
            Int edge = head_last;
            while (edge < out.pivot) {
                edge *= 2;
                ++out.window;
            }
        }
    }

    // Bridge n_K up to the window, place the pivot, then double far enough
    // to absorb the 2-part of the lcm.
    Int bridge = head_last;
    for (unsigned long j = 1; j < out.window; ++j) {
        bridge *= 2;
        out.chain.push_back(bridge);
    }
    Int tail = out.pivot;
    out.chain.push_back(tail);
    for (unsigned long j = 1; j < out.two_exp + out.window; ++j) {
        tail *= 2;
        out.chain.push_back(tail);
    }

    for (std::size_t i = 0; i + 1 < out.chain.size(); ++i) {
        if (out.chain[i] >= out.chain[i + 1] || out.chain[i + 1] > 2 * out.chain[i])
            throw budget_error("T-oracle insufficient: chain ratio left (1,2] at " +
                               std::to_string(i + 1));
        if (out.chain.back() % out.chain[i] != 0)
            throw budget_error("chain closure failed at " + std::to_string(i + 1));
    }
    if (out.chain.back() % q.get_den() != 0)
        throw budget_error("chain closure failed for the target denominator");
    return out;
}

LacunarySeq wrap_theorem4_chain(const Theorem4Chain& built, const std::string& family,
                                const Rat& q) {
    LacunarySeq seq;
    seq.terms = built.chain;
    Rat min_ratio(2);
    for (std::size_t i = 0; i + 1 < seq.terms.size(); ++i)
        min_ratio = std::min(min_ratio, make_rat(seq.terms[i + 1], seq.terms[i]));
    seq.lambda = min_ratio;
    seq.milestones.push_back(seq.terms.size());
    seq.provenance["construction"] = "theorem4";
    seq.provenance["family"] = family;
    seq.provenance["q"] = to_string(q);
    seq.validate();
    return seq;
}

}  // namespace lacunary
