#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lacunary/analyze.hpp"
#include "lacunary/builders.hpp"
#include "lacunary/represent.hpp"

namespace py = pybind11;
using namespace lacunary;

namespace {

// Big integers cross the boundary as native Python ints.
py::object to_py_int(const Int& value) {
    return py::module_::import("builtins").attr("int")(value.get_str());
}

Int from_py_int(const py::object& value) {
    return parse_int(py::str(value).cast<std::string>());
}

py::list terms_list(const std::vector<Int>& terms) {
    py::list out;
    for (const Int& t : terms) out.append(to_py_int(t));
    return out;
}

std::vector<Int> terms_vector(const py::sequence& terms) {
    std::vector<Int> out;
    out.reserve(py::len(terms));
    for (const auto& t : terms)
        out.push_back(from_py_int(py::reinterpret_borrow<py::object>(t)));
    return out;
}

py::dict rep_dict(const Representation& rep) {
    py::dict d;
    d["q"] = to_string(rep.q);
    d["indices"] = rep.indices;
    d["prefix_len"] = rep.prefix_len;
    return d;
}

py::dict fill_dict(const FillReport& r) {
    py::dict d;
    d["pass"] = r.pass();
    d["checked"] = r.checked;
    d["failures"] = r.failures;
    d["denominator"] = to_py_int(r.denominator);
    d["first_numerator"] = to_py_int(r.first_numerator);
    d["last_numerator"] = to_py_int(r.last_numerator);
    d["counterexample"] =
        r.counterexample ? py::object(py::str(to_string(*r.counterexample))) : py::none();
    return d;
}

py::dict rlambda_dict(const RLambdaResult& r) {
    py::dict d;
    d["lambda"] = to_string(r.lambda);
    d["K"] = r.k_terms;
    d["partial"] = to_string(r.partial);
    d["tail_bound"] = to_string(r.tail_bound);
    d["digits"] = r.digits;
    d["certified_digits"] = r.certified_digits;
    return d;
}

FillMode parse_mode(const std::string& mode) {
    if (mode == "exhaustive") return FillMode::exhaustive;
    if (mode == "greedy") return FillMode::greedy;
    if (mode == "sample") return FillMode::sample;
    throw param_error("unknown mode \"" + mode + "\"");
}

}  // namespace

PYBIND11_MODULE(_lacunary, m) {
    m.doc() = "Lacunary integer sequences whose reciprocal subset sums fill "
              "rational intervals: builders, Egyptian-fraction extraction and "
              "exact verification.";

    py::register_exception<param_error>(m, "ParamError", PyExc_ValueError);
    py::register_exception<budget_error>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<prefix_error>(m, "PrefixError", PyExc_RuntimeError);

    py::class_<LacunarySeq>(m, "Sequence")
        .def_property_readonly("lambda_",
                               [](const LacunarySeq& s) { return to_string(s.lambda); })
        .def_property_readonly("terms",
                               [](const LacunarySeq& s) { return terms_list(s.terms); })
        .def_readonly("milestones", &LacunarySeq::milestones)
        .def_property_readonly(
            "provenance", [](const LacunarySeq& s) { return s.provenance.dump(); })
        .def("__len__", [](const LacunarySeq& s) { return s.size(); })
        .def(
            "prefix_sum",
            [](const LacunarySeq& s, std::size_t m) { return to_string(s.prefix_sum(m)); },
            py::arg("m"))
        .def("validate", &LacunarySeq::validate)
        .def("save", &LacunarySeq::save, py::arg("path"))
        .def_static("load", &LacunarySeq::load, py::arg("path"));

    m.def("fixture27", &load_fixture_27);
    m.def(
        "build_theorem1",
        [](const std::string& lam, std::size_t steps) {
            return build_theorem1(parse_rat(lam), steps);
        },
        py::arg("lambda_"), py::arg("steps"));
    m.def(
        "build_theorem2",
        [](const std::string& lam, const std::string& eps, std::size_t steps) {
            return build_theorem2(parse_rat(lam), parse_rat(eps), steps);
        },
        py::arg("lambda_"), py::arg("eps"), py::arg("steps"));
    m.def(
        "thm3_params",
        [](const std::string& big, const std::string& lam) {
            auto p = choose_thm3_params(parse_rat(big), parse_rat(lam));
            py::dict d;
            d["epsilon"] = to_string(p.epsilon);
            d["U"] = p.u_run;
            d["m0"] = p.m0;
            return d;
        },
        py::arg("Lambda"), py::arg("lambda_"));
    m.def(
        "build_theorem3",
        [](const std::string& big, const std::string& lam, std::size_t steps) {
            return build_theorem3(choose_thm3_params(parse_rat(big), parse_rat(lam)),
                                  steps);
        },
        py::arg("Lambda"), py::arg("lambda_"), py::arg("steps"));
    m.def(
        "theorem4_chain",
        [](const std::string& family, const std::string& q, std::size_t budget) {
            auto oracle = make_toracle(family);
            return terms_list(build_theorem4_chain(*oracle, parse_rat(q), budget).chain);
        },
        py::arg("family"), py::arg("q"), py::arg("budget") = kDefaultEnumBudget);
    m.def(
        "theorem4_sequence",
        [](const std::string& family, const std::string& q, std::size_t budget) {
            auto oracle = make_toracle(family);
            Rat target = parse_rat(q);
            return wrap_theorem4_chain(build_theorem4_chain(*oracle, target, budget),
                                       family, target);
        },
        py::arg("family"), py::arg("q"), py::arg("budget") = kDefaultEnumBudget);

    m.def(
        "represent",
        [](const LacunarySeq& seq, const std::string& q) {
            return rep_dict(represent(seq, parse_rat(q)));
        },
        py::arg("seq"), py::arg("q"));
    m.def(
        "represent_many",
        [](const LacunarySeq& seq, const std::string& q, std::size_t count) {
            py::list out;
            for (const auto& rep : represent_many(seq, parse_rat(q), count))
                out.append(rep_dict(rep));
            return out;
        },
        py::arg("seq"), py::arg("q"), py::arg("count"));
    m.def(
        "lazy_greedy",
        [](const py::sequence& terms, const std::string& q) {
            auto vec = terms_vector(terms);
            return rep_dict(lazy_greedy(vec, parse_rat(q)));
        },
        py::arg("terms"), py::arg("q"));
    m.def(
        "brute_force_sums",
        [](const py::sequence& terms) {
            auto vec = terms_vector(terms);
            auto sums = brute_force_sums(vec);
            py::list out;
            for (const Int& numer : sums.numers)
                out.append(to_string(make_rat(numer, sums.denom)));
            return out;
        },
        py::arg("terms"));
    m.def(
        "verify_fill",
        [](const py::sequence& terms, const py::object& den, const std::string& lo,
           const std::string& hi, const std::string& mode, bool hi_inclusive,
           std::size_t samples, std::uint64_t seed, unsigned threads) {
            auto vec = terms_vector(terms);
            FillOptions opts;
            opts.hi_inclusive = hi_inclusive;
            opts.samples = samples;
            opts.seed = seed;
            opts.threads = threads;
            return fill_dict(verify_fill(vec, from_py_int(den), parse_rat(lo),
                                         parse_rat(hi), parse_mode(mode), opts));
        },
        py::arg("terms"), py::arg("den"), py::arg("lo") = "0", py::arg("hi") = "2",
        py::arg("mode") = "exhaustive", py::arg("hi_inclusive") = true,
        py::arg("samples") = 1000, py::arg("seed") = 20250809, py::arg("threads") = 0);

    m.def(
        "r_lambda",
        [](const std::string& lam, const std::string& eps) {
            return rlambda_dict(r_lambda(parse_rat(lam), parse_rat(eps)));
        },
        py::arg("lambda_"), py::arg("eps"));
    m.def(
        "r_lambda_digits",
        [](const std::string& lam, std::size_t digits) {
            return rlambda_dict(r_lambda_digits(parse_rat(lam), digits));
        },
        py::arg("lambda_"), py::arg("digits"));
    m.def(
        "r_lambda_sweep",
        [](const std::string& lo, const std::string& hi, const std::string& step,
           const std::string& eps, unsigned threads) {
            py::list out;
            for (const auto& row : r_lambda_sweep(parse_rat(lo), parse_rat(hi),
                                                  parse_rat(step), parse_rat(eps),
                                                  threads)) {
                py::dict d;
                d["lambda"] = to_string(row.lambda);
                d["partial"] = to_string(row.partial);
                d["tail_bound"] = to_string(row.tail_bound);
                d["K"] = row.k_terms;
                out.append(d);
            }
            return out;
        },
        py::arg("lo"), py::arg("hi"), py::arg("step"), py::arg("eps"),
        py::arg("threads") = 0);

    m.def(
        "check_neceint",
        [](const LacunarySeq& seq) {
            py::list out;
            for (const auto& row : check_neceint(seq)) {
                py::dict d;
                d["index"] = row.index;
                d["verdict"] = to_string(row.verdict);
                d["reciprocal"] = to_string(row.lhs);
                d["tail_lower"] = to_string(row.tail_lower);
                d["tail_upper"] = to_string(row.tail_upper);
                out.append(d);
            }
            return out;
        },
        py::arg("seq"));
    m.def(
        "kakeya_classify",
        [](const LacunarySeq& seq, std::size_t witnesses) {
            auto c = kakeya_classify(seq, witnesses);
            py::dict d;
            d["kind"] = c.name();
            d["witnesses"] = c.witnesses;
            if (c.gap) {
                d["gap_index"] = c.gap_index;
                d["gap"] =
                    py::make_tuple(to_string(c.gap->first), to_string(c.gap->second));
            }
            return d;
        },
        py::arg("seq"), py::arg("witnesses") = 3);
    m.def(
        "interval_cover",
        [](const LacunarySeq& seq, std::size_t k) {
            py::list out;
            for (const auto& [lo, hi] : interval_cover(seq, k))
                out.append(py::make_tuple(to_string(lo), to_string(hi)));
            return out;
        },
        py::arg("seq"), py::arg("k"));
    m.def(
        "check_jump_optimality",
        [](const std::string& big, const std::string& lam) {
            auto r = check_jump_optimality(parse_rat(big), parse_rat(lam));
            py::dict d;
            d["feasible"] = r.feasible;
            d["trace"] = r.trace;
            return d;
        },
        py::arg("Lambda"), py::arg("lambda_"));
    m.def(
        "analysis_report",
        [](const LacunarySeq& seq, std::size_t witnesses) {
            return analysis_report(seq, witnesses).dump();
        },
        py::arg("seq"), py::arg("witnesses") = 3);
    m.def(
        "make_sequence",
        [](const py::sequence& terms, const std::string& lam) {
            return make_raw_sequence(terms_vector(terms), parse_rat(lam));
        },
        py::arg("terms"), py::arg("lambda_"));
}
