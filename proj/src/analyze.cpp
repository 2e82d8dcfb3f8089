#include "lacunary/analyze.hpp"

#include <algorithm>
#include <future>

namespace lacunary {

namespace {

// Largest t with floor(value·10^t) == floor((value+width)·10^t): the
// number of decimal places pinned down by the enclosure.
std::size_t certified_decimals(const Rat& value, const Rat& width, std::size_t cap) {
    std::size_t lo = 0, hi = cap;
    auto agree = [&](std::size_t t) {
        Int scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(t));
        Rat a = value * Rat(scale);
        Rat b = (value + width) * Rat(scale);
        Int fa, fb;
        mpz_fdiv_q(fa.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
        mpz_fdiv_q(fb.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
        return fa == fb;
    };
    if (!agree(0)) return 0;
    while (lo < hi) {  // agreement is monotone downward in t
        std::size_t mid = (lo + hi + 1) / 2;
        if (agree(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

}  // namespace

RLambdaResult r_lambda(const Rat& lambda, const Rat& eps) {
    if (lambda <= 1) throw param_error("r_lambda: lambda must exceed 1");
    RLambdaResult out;
    out.lambda = lambda;
    if (lambda >= 2) {  // no interval survives: the value is exactly 0
        out.partial = 0;
        out.tail_bound = 0;
        out.digits = "0";
        out.certified_digits = 0;
        return out;
    }
    if (eps <= 0 || eps >= 1) throw param_error("r_lambda: eps must lie in (0,1)");

    unsigned long k = 2 + floor_log(lambda, 1 / (eps * (lambda - 1)));
    out.k_terms = k;

    Int a = 1;
    Rat partial(1);
    for (unsigned long i = 1; i < k; ++i) {
        a = ceil_mul(a, lambda);
        partial += make_rat(1, a);
    }
    out.partial = partial;
    out.tail_bound = pow_rat(1 / lambda, k - 1) / (lambda - 1);

    std::size_t cap = 2 + floor_log(Rat(10), 1 / out.tail_bound);
    out.certified_digits = certified_decimals(out.partial, out.tail_bound, cap);
    out.digits = decimal_string(out.partial, out.certified_digits);
    return out;
}

RLambdaResult r_lambda_digits(const Rat& lambda, std::size_t digits) {
    if (lambda <= 1) throw param_error("r_lambda: lambda must exceed 1");
    if (lambda >= 2) return r_lambda(lambda, make_rat(1, 2));
    Rat eps = 1;
    for (std::size_t d = 0; d < digits; ++d) eps /= 10;
    for (int attempt = 0; attempt < 64; ++attempt) {
        RLambdaResult out = r_lambda(lambda, eps);
        if (out.certified_digits >= digits) {
            out.certified_digits = digits;
            out.digits = decimal_string(out.partial, digits);
            return out;
        }
        eps /= 100;  // a decimal boundary fell inside the enclosure
    }
    throw budget_error("r_lambda_digits: value sits on a decimal boundary");
}

std::vector<SweepRow> r_lambda_sweep(const Rat& lo, const Rat& hi, const Rat& step,
                                     const Rat& eps, unsigned threads) {
    if (!(1 < lo && lo < hi && hi < 2)) throw param_error("sweep range must satisfy 1 < lo < hi < 2");
    if (step <= 0) throw param_error("sweep step must be positive");

    std::vector<Rat> grid;
    for (Rat x = lo; x <= hi; x += step) grid.push_back(x);
    std::vector<SweepRow> rows(grid.size());

    unsigned n = threads ? threads : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    n = std::min<unsigned>(n, static_cast<unsigned>(grid.size()));

    auto compute = [&](std::size_t i) {
        RLambdaResult r = r_lambda(grid[i], eps);
        rows[i] = {r.lambda, r.partial, r.tail_bound, r.k_terms};
    };
    if (n <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) compute(i);
    } else {
        std::vector<std::future<void>> futures;
        for (unsigned t = 0; t < n; ++t)
            futures.push_back(std::async(std::launch::async, [&, t]() {
                for (std::size_t i = t; i < grid.size(); i += n) compute(i);
            }));
        for (auto& f : futures) f.get();
    }
    return rows;
}

// ---- necessary conditions ------------------------------------------------------

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::verified: return "Verified";
        case Verdict::violated: return "Violated";
        default: return "Unknown";
    }
}

namespace {

std::vector<TailRow> tail_table(const LacunarySeq& seq) {
    const std::size_t n = seq.terms.size();
    if (n == 0) return {};
    // Unseen continuation: ratios ≥ λ give the geometric majorant
    // Σ_{j>J} 1/n_j ≤ 1/(n_J(λ−1)); a certified ratio cap ρ ≤ ... gives the
    // matching minorant 1/(n_J(ρ−1)).
    Rat beyond_upper = make_rat(1, seq.terms.back()) / (seq.lambda - 1);
    Rat beyond_lower(0);
    if (auto cap = seq.continuation_ratio_cap(); cap && *cap > 1)
        beyond_lower = make_rat(1, seq.terms.back()) / (*cap - 1);

    std::vector<TailRow> rows(n);
    Rat finite(0);
    for (std::size_t i = n; i-- > 0;) {
        TailRow& row = rows[i];
        row.index = i + 1;
        row.lhs = make_rat(1, seq.terms[i]);
        row.tail_lower = finite + beyond_lower;
        row.tail_upper = finite + beyond_upper;
        if (row.tail_lower >= row.lhs)
            row.verdict = Verdict::verified;
        else if (row.tail_upper < row.lhs)
            row.verdict = Verdict::violated;
        else
            row.verdict = Verdict::unknown;
        finite += row.lhs;
    }
    return rows;
}

}  // namespace

std::vector<TailRow> check_neceint(const LacunarySeq& seq) { return tail_table(seq); }

// ---- classification -------------------------------------------------------------

std::string Classification::name() const {
    switch (kind) {
        case Kind::exact_doubling: return "ExactDoubling";
        case Kind::gap_at: return "GapAt";
        case Kind::empty_interior: return "EmptyInterior";
        default: return "FilledIntervalCandidate";
    }
}

nlohmann::json Classification::to_json() const {
    nlohmann::json j;
    j["kind"] = name();
    j["witnesses"] = witnesses;
    if (kind == Kind::gap_at) {
        j["gap_index"] = gap_index;
        j["gap"] = {to_string(gap->first), to_string(gap->second)};
    }
    return j;
}

Classification kakeya_classify(const LacunarySeq& seq, std::size_t witness_quota) {
    Classification out;
    const std::size_t n = seq.terms.size();
    if (n >= 2) {
        bool doubling = true;
        for (std::size_t i = 0; i + 1 < n && doubling; ++i)
            doubling = seq.terms[i + 1] == 2 * seq.terms[i];
        if (doubling) {
            out.kind = Classification::Kind::exact_doubling;
            return out;
        }
    }

    auto rows = tail_table(seq);
    bool all_at_least = true;
    std::size_t first_gap = 0;
    for (const TailRow& row : rows) {
        if (row.tail_upper < row.lhs) {  // strict witness, certified gap
            ++out.witnesses;
            if (first_gap == 0) first_gap = row.index;
        }
        if (!(row.tail_upper <= row.lhs)) all_at_least = false;
    }

    if (first_gap != 0) {
        const TailRow& row = rows[first_gap - 1];
        out.kind = Classification::Kind::gap_at;
        out.gap_index = first_gap;
        out.gap = std::make_pair(row.tail_upper, row.lhs);
        return out;
    }
    if (all_at_least && out.witnesses >= witness_quota) {
        out.kind = Classification::Kind::empty_interior;
        return out;
    }
    out.kind = Classification::Kind::filled_interval_candidate;
    return out;
}

std::vector<std::pair<Rat, Rat>> interval_cover(const LacunarySeq& seq, std::size_t k) {
    if (k == 0) throw param_error("interval_cover: k is 1-based");
    auto rows = tail_table(seq);
    std::vector<std::size_t> witnesses;
    for (const TailRow& row : rows) {
        if (!(row.tail_upper <= row.lhs))
            throw param_error("interval_cover: ≥-condition not certified at index " +
                              std::to_string(row.index));
        if (row.tail_upper < row.lhs) witnesses.push_back(row.index);
    }
    if (witnesses.size() < k)
        throw param_error("interval_cover: only " + std::to_string(witnesses.size()) +
                          " strict witnesses in the prefix");
    std::size_t depth = witnesses[k - 1];  // i_k
    if (depth > 20) throw param_error("interval_cover: 2^i_k exceeds the size cap");

    Rat radius = rows[depth - 1].tail_upper;  // certified r_k

    std::vector<Rat> starts;
    starts.reserve(std::size_t(1) << depth);
    starts.push_back(Rat(0));
    for (std::size_t i = 0; i < depth; ++i) {
        Rat x = make_rat(1, seq.terms[i]);
        std::size_t existing = starts.size();
        for (std::size_t s = 0; s < existing; ++s) starts.push_back(starts[s] + x);
    }
    std::sort(starts.begin(), starts.end());

    std::vector<std::pair<Rat, Rat>> merged;
    for (const Rat& s : starts) {
        if (!merged.empty() && s <= merged.back().second)
            merged.back().second = std::max(merged.back().second, Rat(s + radius));
        else
            merged.emplace_back(s, Rat(s + radius));
    }
    return merged;
}

JumpFeasibility check_jump_optimality(const Rat& big_lambda, const Rat& lambda) {
    if (big_lambda < 2) throw param_error("Lambda must be at least 2");
    if (lambda <= 1) throw param_error("lambda must exceed 1");
    Rat threshold = big_lambda / (big_lambda - 1);
    Rat tail_factor = lambda / (big_lambda * (lambda - 1));
    JumpFeasibility out;
    out.feasible = lambda < threshold;
    if (out.feasible) {
        out.trace = "lambda = " + to_string(lambda) + " < Lambda/(Lambda-1) = " +
                    to_string(threshold) +
                    "; jump construction applies (tail factor lambda/(Lambda(lambda-1)) = " +
                    to_string(tail_factor) + " > 1 keeps 1/n_i <= sum_{j>i} 1/n_j possible)";
    } else {
        out.trace = "lambda = " + to_string(lambda) + " >= Lambda/(Lambda-1) = " +
                    to_string(threshold) + "; after any jump n_{i+1} > Lambda*n_i the tail obeys " +
                    "sum_{j>i} 1/n_j < (1/n_i)*lambda/(Lambda(lambda-1)) = (1/n_i)*" +
                    to_string(tail_factor) +
                    " <= 1/n_i, so the necessary condition 1/n_i <= sum_{j>i} 1/n_j fails";
    }
    return out;
}

nlohmann::json analysis_report(const LacunarySeq& seq, std::size_t witness_quota) {
    nlohmann::json j;
    j["lambda"] = to_string(seq.lambda);
    j["terms"] = seq.terms.size();
    auto rows = tail_table(seq);
    auto& verdicts = j["neceint"] = nlohmann::json::array();
    for (const TailRow& row : rows) {
        nlohmann::json v;
        v["index"] = row.index;
        v["verdict"] = to_string(row.verdict);
        v["reciprocal"] = to_string(row.lhs);
        v["tail_lower"] = to_string(row.tail_lower);
        v["tail_upper"] = to_string(row.tail_upper);
        verdicts.push_back(std::move(v));
    }
    j["classification"] = kakeya_classify(seq, witness_quota).to_json();
    return j;
}

}  // namespace lacunary
