#include "lacunary/represent.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace lacunary {

std::size_t choose_prefix(const LacunarySeq& seq, const Rat& q) {
    if (q < 0) throw param_error("choose_prefix: q must be nonnegative");
    auto sums = seq.milestone_sums();
    for (std::size_t mi = 0; mi < seq.milestones.size(); ++mi) {
        std::size_t m = seq.milestones[mi];
        if (q <= sums[mi] && seq.terms[m - 1] % q.get_den() == 0) return m;
    }
    throw prefix_error(
        "prefix insufficient: no stored milestone term is divisible by " +
            to_string(q.get_den()) + " while covering " + to_string(q),
        seq.milestones.size() + 1);
}

// ---- GreedyPrefix -----------------------------------------------------------

GreedyPrefix::GreedyPrefix(std::span<const Int> terms) {
    if (terms.empty()) throw param_error("greedy prefix must be non-empty");
    last_ = terms.back();
    units_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] <= 0 || last_ % terms[i] != 0)
            throw param_error("greedy precondition: term " + std::to_string(i + 1) +
                              " does not divide the last term");
        units_.push_back(last_ / terms[i]);
        if (i > 0 && units_[i] >= units_[i - 1])
            throw param_error("greedy precondition: terms not strictly increasing at " +
                              std::to_string(i + 1));
    }
    // chain inequality c_i ≤ Σ_{j>i} c_j + 1, checked with a running tail;
    // the smallest offending index is the one reported
    Int tail = 0;
    std::size_t violated_at = 0;
    for (std::size_t i = units_.size(); i-- > 0;) {
        if (i + 1 < units_.size() && units_[i] > tail + 1) violated_at = i + 1;
        tail += units_[i];
    }
    if (violated_at != 0)
        throw param_error("greedy precondition: chain inequality fails at index " +
                          std::to_string(violated_at));
    total_ = tail;

    if (total_.fits_ulong_p()) {
        units64_.reserve(units_.size());
        tails64_.assign(units_.size(), 0);
        std::uint64_t acc = 0;
        for (std::size_t i = units_.size(); i-- > 0;) {
            tails64_[i] = acc;
            acc += units_[i].get_ui();
        }
        for (const Int& u : units_) units64_.push_back(u.get_ui());
    }
}

bool GreedyPrefix::extractable(const Int& residual_units) const {
    return residual_units >= 0 && residual_units <= total_;
}

template <typename OnInclude>
bool GreedyPrefix::scan(const Int& residual_units, OnInclude&& include) const {
    if (!extractable(residual_units)) return false;
    Int rest = residual_units;
    Int tail = total_;  // becomes Σ_{j>i} c_j once c_i is peeled off
    for (std::size_t i = 0; i < units_.size(); ++i) {
        mpz_sub(tail.get_mpz_t(), tail.get_mpz_t(), units_[i].get_mpz_t());
        if (rest > tail) {
            include(i + 1);
            rest -= units_[i];
        }
    }
    return rest == 0;
}

std::vector<std::size_t> GreedyPrefix::extract(const Int& residual_units) const {
    if (!extractable(residual_units))
        throw param_error("residual outside [0, total]");
    std::vector<std::size_t> indices;
    if (!scan(residual_units, [&indices](std::size_t i) { indices.push_back(i); }))
        throw std::logic_error("greedy scan left a nonzero residual");
    return indices;
}

bool GreedyPrefix::extract_fast(std::uint64_t residual_units) const {
    if (residual_units > tails64_[0] + units64_[0]) return false;
    std::uint64_t rest = residual_units;
    for (std::size_t i = 0; i < units64_.size(); ++i) {
        if (rest > tails64_[i]) rest -= units64_[i];
    }
    return rest == 0;
}

bool GreedyPrefix::check(const Int& residual_units) const {
    if (has_fast_path() && residual_units >= 0 && residual_units.fits_ulong_p())
        return extract_fast(residual_units.get_ui());
    return scan(residual_units, [](std::size_t) {});
}

// ---- extraction entry points -------------------------------------------------

Representation lazy_greedy(std::span<const Int> terms, const Rat& q) {
    if (terms.empty()) {
        if (q != 0) throw param_error("empty prefix can only represent 0");
        return {q, {}, 0};
    }
    const Int& last = terms.back();
    if (last % q.get_den() != 0)
        throw param_error("denominator of " + to_string(q) +
                          " does not divide the last prefix term");
    GreedyPrefix engine(terms);
    Int residual = q.get_num() * (last / q.get_den());
    if (!engine.extractable(residual))
        throw param_error("q outside [0, prefix reciprocal sum]");
    return {q, engine.extract(residual), terms.size()};
}

namespace {

Rat resum(const LacunarySeq& seq, const std::vector<std::size_t>& indices) {
    Rat sum(0);
    for (std::size_t i : indices) sum += make_rat(1, seq.term(i));
    return sum;
}

}  // namespace

Representation represent(const LacunarySeq& seq, const Rat& q) {
    std::size_t m = choose_prefix(seq, q);
    auto rep = lazy_greedy(std::span<const Int>(seq.terms.data(), m), q);
    if (resum(seq, rep.indices) != q)
        throw std::logic_error("extraction failed exact re-summation");
    return rep;
}

Representer::Representer(const LacunarySeq& seq)
    : seq_(seq), milestone_sums_(seq.milestone_sums()) {}

std::size_t Representer::milestone_for(const Rat& q) const {
    if (q < 0) throw param_error("represent: q must be nonnegative");
    for (std::size_t mi = 0; mi < seq_.milestones.size(); ++mi) {
        std::size_t m = seq_.milestones[mi];
        if (q <= milestone_sums_[mi] && seq_.terms[m - 1] % q.get_den() == 0) return m;
    }
    throw prefix_error("prefix insufficient for " + to_string(q),
                       seq_.milestones.size() + 1);
}

const GreedyPrefix& Representer::prepare(std::size_t milestone) {
    if (milestone == 0 || milestone > seq_.terms.size())
        throw param_error("prepare: milestone out of range");
    if (!engine_ || cached_milestone_ != milestone) {
        engine_.reset();  // release the old engine before building the next
        engine_ = std::make_unique<GreedyPrefix>(
            std::span<const Int>(seq_.terms.data(), milestone));
        cached_milestone_ = milestone;
    }
    return *engine_;
}

Representation Representer::represent(const Rat& q) {
    std::size_t chosen = milestone_for(q);
    const GreedyPrefix& engine = prepare(chosen);
    Int residual = q.get_num() * (engine.last_term() / q.get_den());
    Representation rep{q, engine.extract(residual), chosen};

    // independent exact re-summation, in units of the last term
    Int back = 0;
    for (std::size_t i : rep.indices)
        mpz_add(back.get_mpz_t(), back.get_mpz_t(), engine.unit(i).get_mpz_t());
    if (back != residual) throw std::logic_error("extraction failed exact re-summation");
    return rep;
}

std::vector<Representation> represent_many(const LacunarySeq& seq, const Rat& q,
                                           std::size_t count) {
    if (q <= 0) throw param_error("represent_many: q must be positive");
    std::vector<Representation> out;
    if (count == 0) return out;

    out.push_back(represent(seq, q));
    std::size_t prev_max = out.back().indices.back();

    auto sums = seq.milestone_sums();

    while (out.size() < count) {
        // A fresh splitting milestone at or past the previous maximum.
        std::size_t chosen = 0;
        bool found = false;
        for (std::size_t mi = 0; mi < seq.milestones.size() && !found; ++mi) {
            std::size_t m = seq.milestones[mi];
            if (m < prev_max) continue;
            const Int& pivot = seq.term(m);
            if (pivot % q.get_den() != 0) continue;
            if (q.get_num() * pivot < q.get_den()) continue;  // needs 1/n_m ≤ q
            if (q > sums[mi]) continue;
            chosen = mi;
            found = true;
        }
        if (!found)
            throw prefix_error("extend sequence: need a milestone past index " +
                                   std::to_string(prev_max) + " compatible with " +
                                   to_string(q),
                               seq.milestones.size() + (count - out.size()));

        std::size_t m = seq.milestones[chosen];
        const Int& pivot = seq.term(m);
        Rat head_target = q - make_rat(1, pivot);
        auto head = lazy_greedy(std::span<const Int>(seq.terms.data(), m), head_target);

        // 1/n_m over the stored suffix: the next milestone whose block
        // reciprocal sum reaches it (milestone divisibility covers the rest).
        std::size_t tail_end_mi = chosen + 1;
        Rat suffix_target = make_rat(1, pivot);
        bool tail_found = false;
        for (; tail_end_mi < seq.milestones.size(); ++tail_end_mi) {
            if (sums[tail_end_mi] - sums[chosen] >= suffix_target &&
                seq.term(seq.milestones[tail_end_mi]) % pivot == 0) {
                tail_found = true;
                break;
            }
        }
        if (!tail_found)
            throw prefix_error("extend sequence: suffix past milestone " +
                                   std::to_string(m) + " cannot absorb 1/" +
                                   to_string(pivot),
                               seq.milestones.size() + (count - out.size()));

        std::size_t m2 = seq.milestones[tail_end_mi];
        auto tail = lazy_greedy(
            std::span<const Int>(seq.terms.data() + m, m2 - m), suffix_target);

        Representation rep;
        rep.q = q;
        rep.indices = head.indices;
        for (std::size_t rel : tail.indices) rep.indices.push_back(rel + m);
        rep.prefix_len = m2;
        if (resum(seq, rep.indices) != q)
            throw std::logic_error("spliced extraction failed exact re-summation");
        prev_max = rep.indices.back();
        out.push_back(std::move(rep));
    }
    return out;
}

// ---- exhaustive oracle -------------------------------------------------------

SubsetSums brute_force_sums(std::span<const Int> terms) {
    if (terms.size() > kBruteForceLimit)
        throw param_error("brute force capped at " + std::to_string(kBruteForceLimit) +
                          " terms");
    SubsetSums out;
    if (terms.empty()) {
        out.denom = 1;
        out.numers = {Int(0)};
        return out;
    }
    out.denom = lcm_list(std::vector<Int>(terms.begin(), terms.end()));
    out.numers.reserve(std::size_t(1) << terms.size());
    out.numers.push_back(0);
    for (const Int& t : terms) {
        Int unit = out.denom / t;
        std::size_t existing = out.numers.size();
        for (std::size_t i = 0; i < existing; ++i)
            out.numers.push_back(out.numers[i] + unit);
    }
    std::sort(out.numers.begin(), out.numers.end());
    return out;
}

bool SubsetSums::contains(const Rat& value) const {
    Int scaled = value.get_num() * denom;
    if (scaled % value.get_den() != 0) return false;
    Int target = scaled / value.get_den();
    return std::binary_search(numers.begin(), numers.end(), target);
}

// ---- fill verification -------------------------------------------------------

namespace {

struct Grid {
    Int k_lo, k_hi;  // inclusive; empty when k_lo > k_hi
};

Grid target_grid(const Int& den, const Rat& lo, const Rat& hi, bool hi_inclusive) {
    Grid g;
    Int num = lo.get_num() * den;
    mpz_cdiv_q(g.k_lo.get_mpz_t(), num.get_mpz_t(), lo.get_den().get_mpz_t());
    num = hi.get_num() * den;
    mpz_fdiv_q(g.k_hi.get_mpz_t(), num.get_mpz_t(), hi.get_den().get_mpz_t());
    if (!hi_inclusive && num % hi.get_den() == 0) g.k_hi -= 1;
    return g;
}

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace

FillReport verify_fill(std::span<const Int> terms, const Int& den, const Rat& lo,
                       const Rat& hi, FillMode mode, const FillOptions& options) {
    if (den < 1) throw param_error("verify_fill: denominator must be positive");
    Grid grid = target_grid(den, lo, hi, options.hi_inclusive);

    FillReport report;
    report.mode = mode;
    report.first_numerator = grid.k_lo;
    report.last_numerator = grid.k_hi;
    report.denominator = den;
    if (grid.k_lo > grid.k_hi) return report;

    auto record_failure = [&report](const Int& k, const Int& den_) {
        ++report.failures;
        Rat frac = make_rat(k, den_);
        if (!report.counterexample || frac < *report.counterexample)
            report.counterexample = frac;
    };

    if (mode == FillMode::exhaustive) {
        SubsetSums oracle = brute_force_sums(terms);
        for (Int k = grid.k_lo; k <= grid.k_hi; ++k) {
            ++report.checked;
            if (!oracle.contains(make_rat(k, den))) record_failure(k, den);
        }
        return report;
    }

    // greedy and sample modes share the per-fraction engine
    if (terms.empty() || terms.back() % den != 0)
        throw param_error("greedy fill: denominator must divide the last prefix term");
    GreedyPrefix engine(terms);
    const Int unit = terms.back() / den;

    if (mode == FillMode::sample) {
        Int span_size = grid.k_hi - grid.k_lo + 1;
        if (!span_size.fits_ulong_p())
            throw param_error("sample mode: target range too large");
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<unsigned long> pick(0, span_size.get_ui() - 1);
        for (std::size_t s = 0; s < options.samples; ++s) {
            Int k = grid.k_lo + Int(pick(rng));
            ++report.checked;
            if (!engine.check(Int(k * unit))) record_failure(k, den);
        }
        return report;
    }

    // greedy mode: every k in the grid, fanned out over worker threads;
    // failure count and smallest counterexample are partition-independent.
    Int span_size = grid.k_hi - grid.k_lo + 1;
    if (!span_size.fits_ulong_p())
        throw param_error("greedy fill: target range too large to enumerate");
    const std::uint64_t n_targets = span_size.get_ui();
    report.checked = n_targets;

    const bool fast = engine.has_fast_path() && Int(grid.k_hi * unit).fits_ulong_p() &&
                      grid.k_lo >= 0;
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::uint64_t>(worker_count(options.threads),
                                                      std::max<std::uint64_t>(n_targets, 1)));

    std::mutex merge_mutex;
    std::atomic<std::uint64_t> next_chunk{0};
    const std::uint64_t chunk = std::max<std::uint64_t>(1, n_targets / (8 * n_threads));

    auto worker = [&]() {
        std::uint64_t local_failures = 0;
        std::optional<Int> local_min;
        for (;;) {
            std::uint64_t begin = next_chunk.fetch_add(chunk);
            if (begin >= n_targets) break;
            std::uint64_t end = std::min(begin + chunk, n_targets);
            if (fast) {
                const std::uint64_t base = Int(grid.k_lo * unit).get_ui();
                const std::uint64_t step = unit.get_ui();
                for (std::uint64_t off = begin; off < end; ++off) {
                    if (!engine.extract_fast(base + off * step)) {
                        ++local_failures;
                        Int k = grid.k_lo + Int(off);
                        if (!local_min || k < *local_min) local_min = k;
                    }
                }
            } else {
                for (std::uint64_t off = begin; off < end; ++off) {
                    Int k = grid.k_lo + Int(off);
                    if (!engine.check(Int(k * unit))) {
                        ++local_failures;
                        if (!local_min || k < *local_min) local_min = k;
                    }
                }
            }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        report.failures += local_failures;
        if (local_min) {
            Rat frac = make_rat(*local_min, den);
            if (!report.counterexample || frac < *report.counterexample)
                report.counterexample = frac;
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return report;
}

}  // namespace lacunary
