#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <span>
#include <sstream>

#include "lacunary/analyze.hpp"
#include "lacunary/builders.hpp"
#include "lacunary/represent.hpp"

// Exit codes: 0 pass, 1 verified failure (counterexample found),
// 2 input/parameter error, 3 budget exhausted.

namespace {

using namespace lacunary;

Rat rat_flag(const std::string& text) { return parse_rat(text); }

std::vector<Int> parse_term_list(const std::string& csv) {
    std::vector<Int> terms;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) terms.push_back(parse_int(item));
    return terms;
}

std::string ratio_summary(const LacunarySeq& seq) {
    if (seq.terms.size() < 2) return "n/a";
    Rat lo = make_rat(seq.terms[1], seq.terms[0]);
    Rat hi = lo;
    for (std::size_t i = 1; i + 1 < seq.terms.size(); ++i) {
        Rat r = make_rat(seq.terms[i + 1], seq.terms[i]);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return to_string(lo) + " .. " + to_string(hi);
}

void print_build_summary(const LacunarySeq& seq) {
    Rat sum = seq.prefix_sum(seq.terms.size());
    std::cout << "terms:       " << seq.terms.size() << "\n";
    std::cout << "ratio range: " << ratio_summary(seq) << "\n";
    std::cout << "milestones: ";
    for (std::size_t m : seq.milestones) std::cout << ' ' << m;
    std::cout << "\n";
    std::string exact = to_string(sum);
    if (exact.size() > 64) exact = exact.substr(0, 64) + "...";
    std::cout << "reciprocal sum: " << exact << " = " << decimal_string(sum, 12)
              << "...\n";
    if (seq.provenance.contains("ratio_blocks")) {
        std::size_t jumps = 0;
        for (const auto& b : seq.provenance["ratio_blocks"])
            if (b["kind"] == "jump") ++jumps;
        std::cout << "jump ratios above Lambda: " << jumps << "\n";
    }
}

std::string render(const Representation& rep, const LacunarySeq& seq) {
    std::ostringstream os;
    os << to_string(rep.q) << " =";
    if (rep.indices.empty()) os << " (empty sum)";
    for (std::size_t i = 0; i < rep.indices.size(); ++i)
        os << (i ? " + 1/" : " 1/") << to_string(seq.term(rep.indices[i]));
    os << "   indices {";
    for (std::size_t i = 0; i < rep.indices.size(); ++i)
        os << (i ? "," : "") << rep.indices[i];
    os << "} prefix " << rep.prefix_len;
    return os.str();
}

nlohmann::json rep_json(const Representation& rep) {
    nlohmann::json j;
    j["q"] = to_string(rep.q);
    j["indices"] = rep.indices;
    j["prefix_len"] = rep.prefix_len;
    return j;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw param_error("cannot write " + path);
    out << body;
}

// Tick plot: an axis line with one tick per achievable multiple of 1/n_m.
std::string ticks_svg(const std::vector<Int>& numers, const Int& denom, const Rat& total) {
    const double width = 800, height = 120, x0 = 40, x1 = width - 40;
    double span = total > 0 ? total.get_d() : 1.0;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\">\n";
    os << "  <line x1=\"" << x0 << "\" y1=\"60\" x2=\"" << x1
       << "\" y2=\"60\" stroke=\"black\"/>\n";
    for (const Int& k : numers) {
        double v = Rat(make_rat(k, denom)).get_d();
        double x = x0 + (x1 - x0) * (span > 0 ? v / span : 0.0);
        os << "  <line x1=\"" << x << "\" y1=\"45\" x2=\"" << x
           << "\" y2=\"75\" stroke=\"black\" stroke-width=\"0.4\"/>\n";
    }
    os << "  <text x=\"" << x0 << "\" y=\"100\" font-size=\"12\">0</text>\n";
    os << "  <text x=\"" << x1 - 30 << "\" y=\"100\" font-size=\"12\">" << to_string(total)
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"lacunary sequences, Egyptian-fraction extraction and exact verification"};
    app.require_subcommand(1);

    // ---- build ----
    auto* build = app.add_subcommand("build", "construct a sequence and write it as JSON");
    std::string kind, build_out = "sequence.json", family = "kk";
    std::string lambda_s = "3/2", biglambda_s = "2", eps_s = "1/2", q_s = "1";
    std::size_t steps = 3, budget = kDefaultEnumBudget;
    build->add_option("kind", kind, "theorem1|theorem2|theorem3|theorem4|fixture27")
        ->required();
    build->add_option("--lambda", lambda_s, "lacunarity parameter, exact rational");
    build->add_option("--Lambda", biglambda_s, "jump size for theorem3");
    build->add_option("--eps", eps_s, "accuracy for theorem2");
    build->add_option("--steps", steps, "milestone steps");
    build->add_option("--family", family, "T family for theorem4: kk|integers|ms");
    build->add_option("--q", q_s, "target rational for theorem4");
    build->add_option("--budget", budget, "enumeration budget for theorem4");
    build->add_option("--out", build_out, "output path");

    // ---- represent ----
    auto* rep = app.add_subcommand("represent", "extract Egyptian-fraction representations");
    std::string rep_seq_path, rep_q = "1", rep_out;
    std::size_t rep_count = 1;
    rep->add_option("--seq", rep_seq_path, "sequence JSON file")->required();
    rep->add_option("--q", rep_q, "target rational")->required();
    rep->add_option("--count", rep_count, "number of distinct representations");
    rep->add_option("--out", rep_out, "write representations as JSON");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check a fill claim for a fraction grid");
    std::string ver_seq_path, ver_terms, ver_den = "1", ver_lo = "0", ver_hi = "2",
                ver_mode = "exhaustive";
    std::size_t ver_prefix = 0, ver_samples = 1000;
    std::uint64_t ver_seed = 20250809;
    unsigned ver_threads = 0;
    bool ver_open_hi = false;
    verify->add_option("--seq", ver_seq_path, "sequence JSON file");
    verify->add_option("--terms", ver_terms, "inline comma-separated terms");
    verify->add_option("--prefix", ver_prefix, "use only the first m terms");
    verify->add_option("--den", ver_den, "denominator D of the target grid")->required();
    verify->add_option("--lo", ver_lo, "grid lower endpoint");
    verify->add_option("--hi", ver_hi, "grid upper endpoint");
    verify->add_flag("--open-hi", ver_open_hi, "exclude the upper endpoint");
    verify->add_option("--mode", ver_mode, "exhaustive|greedy|sample");
    verify->add_option("--samples", ver_samples, "sample count for sample mode");
    verify->add_option("--seed", ver_seed, "sample RNG seed");
    verify->add_option("--threads", ver_threads, "worker threads (0 = all cores)");

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "necessary conditions and classification");
    std::string ana_seq_path, ana_out;
    std::size_t ana_witnesses = 3, ana_cover = 0;
    analyze->add_option("--seq", ana_seq_path, "sequence JSON file")->required();
    analyze->add_option("--out", ana_out, "write the JSON report");
    analyze->add_option("--witnesses", ana_witnesses, "strict-witness quota");
    analyze->add_option("--cover", ana_cover, "also emit the k-th interval cover");

    // ---- rlambda ----
    auto* rl = app.add_subcommand("rlambda", "optimal filled-interval length R(lambda)");
    std::string rl_lambda = "3/2", rl_eps, rl_sweep, rl_out;
    std::size_t rl_digits = 0;
    unsigned rl_threads = 0;
    rl->add_option("--lambda", rl_lambda, "lacunarity parameter");
    rl->add_option("--digits", rl_digits, "certified decimal digits to print");
    rl->add_option("--eps", rl_eps, "enclosure width target, exact rational");
    rl->add_option("--sweep", rl_sweep, "lo:hi:step sweep over lambda");
    rl->add_option("--out", rl_out, "CSV output path for sweeps");
    rl->add_option("--threads", rl_threads, "worker threads for sweeps");

    // ---- plot ----
    auto* plot = app.add_subcommand("plot", "tick plot of achievable reciprocal sums");
    std::string plot_seq_path, plot_out = "fill.svg", plot_csv;
    std::size_t plot_prefix = 0;
    plot->add_option("--seq", plot_seq_path, "sequence JSON file")->required();
    plot->add_option("--prefix", plot_prefix, "use only the first m terms");
    plot->add_option("--out", plot_out, "SVG output path");
    plot->add_option("--csv", plot_csv, "CSV twin output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // keep exit code 2 for bad invocations
    }

    if (build->parsed()) {
        LacunarySeq seq;
        if (kind == "theorem1") {
            seq = build_theorem1(rat_flag(lambda_s), steps);
        } else if (kind == "theorem2") {
            seq = build_theorem2(rat_flag(lambda_s), rat_flag(eps_s), steps);
        } else if (kind == "theorem3") {
            auto params = choose_thm3_params(rat_flag(biglambda_s), rat_flag(lambda_s));
            seq = build_theorem3(params, steps);
        } else if (kind == "theorem4") {
            auto oracle = make_toracle(family);
            auto chain = build_theorem4_chain(*oracle, rat_flag(q_s), budget);
            seq = wrap_theorem4_chain(chain, family, rat_flag(q_s));
        } else if (kind == "fixture27") {
            seq = load_fixture_27();
        } else {
            throw param_error("unknown build kind \"" + kind + "\"");
        }
        seq.save(build_out);
        std::cout << "wrote " << build_out << "\n";
        print_build_summary(seq);
        return 0;
    }

    if (rep->parsed()) {
        LacunarySeq seq = LacunarySeq::load(rep_seq_path);
        Rat q = rat_flag(rep_q);
        std::vector<Representation> reps;
        if (rep_count <= 1)
            reps.push_back(represent(seq, q));
        else
            reps = represent_many(seq, q, rep_count);
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reps) {
            std::cout << render(r, seq) << "\n";
            j.push_back(rep_json(r));
        }
        if (!rep_out.empty()) write_text(rep_out, (rep_count <= 1 ? j[0] : j).dump(2) + "\n");
        return 0;
    }

    if (verify->parsed()) {
        std::vector<Int> terms;
        if (!ver_terms.empty())
            terms = parse_term_list(ver_terms);
        else if (!ver_seq_path.empty())
            terms = LacunarySeq::load(ver_seq_path).terms;
        else
            throw param_error("verify needs --seq or --terms");
        if (ver_prefix > 0) {
            if (ver_prefix > terms.size()) throw param_error("--prefix exceeds term count");
            terms.resize(ver_prefix);
        }
        FillMode mode;
        if (ver_mode == "exhaustive") mode = FillMode::exhaustive;
        else if (ver_mode == "greedy") mode = FillMode::greedy;
        else if (ver_mode == "sample") mode = FillMode::sample;
        else throw param_error("unknown mode \"" + ver_mode + "\"");
        FillOptions opts;
        opts.hi_inclusive = !ver_open_hi;
        opts.samples = ver_samples;
        opts.seed = ver_seed;
        opts.threads = ver_threads;
        FillReport r = verify_fill(std::span<const Int>(terms.data(), terms.size()),
                                   parse_int(ver_den), rat_flag(ver_lo), rat_flag(ver_hi),
                                   mode, opts);
        std::cout << (r.pass() ? "PASS" : "FAIL") << ": " << r.checked
                  << " fractions k/" << to_string(r.denominator) << ", k = "
                  << to_string(r.first_numerator) << ".." << to_string(r.last_numerator)
                  << ", failures " << r.failures;
        if (r.counterexample) std::cout << ", first counterexample " << to_string(*r.counterexample);
        std::cout << "\n";
        return r.pass() ? 0 : 1;
    }

    if (analyze->parsed()) {
        LacunarySeq seq = LacunarySeq::load(ana_seq_path);
        nlohmann::json report = analysis_report(seq, ana_witnesses);
        if (ana_cover > 0) {
            auto cover = interval_cover(seq, ana_cover);
            auto& arr = report["interval_cover"] = nlohmann::json::array();
            for (const auto& [lo, hi] : cover) arr.push_back({to_string(lo), to_string(hi)});
        }
        std::cout << report["classification"]["kind"].get<std::string>() << "\n";
        if (!ana_out.empty()) write_text(ana_out, report.dump(2) + "\n");
        return 0;
    }

    if (rl->parsed()) {
        if (!rl_sweep.empty()) {
            auto c1 = rl_sweep.find(':');
            auto c2 = rl_sweep.find(':', c1 == std::string::npos ? c1 : c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw param_error("--sweep wants lo:hi:step");
            Rat lo = rat_flag(rl_sweep.substr(0, c1));
            Rat hi = rat_flag(rl_sweep.substr(c1 + 1, c2 - c1 - 1));
            Rat step = rat_flag(rl_sweep.substr(c2 + 1));
            Rat eps = rl_eps.empty() ? make_rat(1, 1000) : rat_flag(rl_eps);
            auto rows = r_lambda_sweep(lo, hi, step, eps, rl_threads);
            std::ostringstream os;
            os << "lambda,partial,tail_bound,K\n";
            for (const auto& row : rows)
                os << to_string(row.lambda) << ',' << to_string(row.partial) << ','
                   << to_string(row.tail_bound) << ',' << row.k_terms << '\n';
            if (rl_out.empty())
                std::cout << os.str();
            else
                write_text(rl_out, os.str());
            return 0;
        }
        RLambdaResult r;
        if (rl_digits > 0)
            r = r_lambda_digits(rat_flag(rl_lambda), rl_digits);
        else
            r = r_lambda(rat_flag(rl_lambda), rl_eps.empty() ? make_rat(1, 1000000)
                                                             : rat_flag(rl_eps));
        std::cout << r.digits << "\n";
        std::cout << "K = " << r.k_terms << ", certified digits = " << r.certified_digits
                  << "\n";
        return 0;
    }

    if (plot->parsed()) {
        LacunarySeq seq = LacunarySeq::load(plot_seq_path);
        std::size_t m = plot_prefix == 0 ? seq.terms.size() : plot_prefix;
        if (m > seq.terms.size()) throw param_error("--prefix exceeds term count");
        if (m > kBruteForceLimit)
            throw param_error("plot prefix capped at " + std::to_string(kBruteForceLimit) +
                              " terms (2^m subset sums)");
        auto sums = brute_force_sums(std::span<const Int>(seq.terms.data(), m));
        std::vector<Int> distinct = sums.numers;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        Rat total = m == 0 ? Rat(0) : make_rat(sums.numers.back(), sums.denom);
        write_text(plot_out, ticks_svg(distinct, sums.denom, total));
        if (!plot_csv.empty()) {
            std::ostringstream os;
            os << "k,numerator,denominator,achievable\n";
            const Int& last = sums.numers.back();
            std::size_t cursor = 0;
            for (Int k = 0; k <= last; ++k) {
                while (cursor < distinct.size() && distinct[cursor] < k) ++cursor;
                bool hit = cursor < distinct.size() && distinct[cursor] == k;
                Rat frac = make_rat(k, sums.denom);
                os << to_string(k) << ',' << to_string(frac.get_num()) << ','
                   << to_string(frac.get_den()) << ',' << (hit ? 1 : 0) << '\n';
            }
            write_text(plot_csv, os.str());
        }
        std::cout << "ticks: " << distinct.size() << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lacunary::budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const lacunary::prefix_error& e) {
        std::cerr << "prefix insufficient: " << e.what()
                  << " (suggested steps: " << e.suggested_steps << ")\n";
        return 3;
    } catch (const lacunary::param_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
