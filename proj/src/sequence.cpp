#include "lacunary/sequence.hpp"

#include <fstream>

namespace lacunary {

Rat LacunarySeq::prefix_sum(std::size_t m) const {
    if (m > terms.size()) throw param_error("prefix_sum: prefix longer than stored terms");
    Rat sum(0);
    for (std::size_t i = 0; i < m; ++i) sum += make_rat(1, terms[i]);
    return sum;
}

std::vector<Rat> LacunarySeq::milestone_sums() const {
    std::vector<Rat> sums;
    sums.reserve(milestones.size());
    Int units = 0;      // running prefix sum, in units of 1/prev_pivot
    Int prev_pivot = 1;
    std::size_t covered = 0;
    for (std::size_t m : milestones) {
        const Int& pivot = terms.at(m - 1);
        units *= pivot / prev_pivot;  // exact: milestones divide each other
        for (; covered < m; ++covered) units += pivot / terms[covered];
        sums.push_back(make_rat(units, pivot));
        prev_pivot = pivot;
    }
    return sums;
}

std::optional<Rat> LacunarySeq::continuation_ratio_cap() const {
    if (provenance.contains("ratio_cap"))
        return parse_rat(provenance["ratio_cap"].get<std::string>());
    return std::nullopt;
}

void LacunarySeq::set_continuation_ratio_cap(const Rat& cap) {
    provenance["ratio_cap"] = to_string(cap);
}

void LacunarySeq::validate() const {
    if (lambda <= 1) throw param_error("sequence lambda must exceed 1");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] < 1) throw param_error("terms must be positive");
        if (i + 1 < terms.size()) {
            if (terms[i] >= terms[i + 1])
                throw param_error("terms must be strictly increasing");
            if (lambda.get_num() * terms[i] > lambda.get_den() * terms[i + 1])
                throw param_error("lacunarity violated at index " + std::to_string(i + 1));
        }
    }
    std::size_t prev = 0;
    for (std::size_t m : milestones) {
        if (m <= prev || m > terms.size())
            throw param_error("milestones must be increasing and within the prefix");
        prev = m;
        const Int& pivot = terms[m - 1];
        for (std::size_t j = 0; j + 1 < m; ++j)
            if (pivot % terms[j] != 0)
                throw param_error("milestone " + std::to_string(m) +
                                  " not divisible by term " + std::to_string(j + 1));
    }
}

nlohmann::json LacunarySeq::to_json() const {
    nlohmann::json j;
    j["lambda"] = to_string(lambda);
    auto& arr = j["terms"] = nlohmann::json::array();
    for (const Int& t : terms) arr.push_back(to_string(t));
    j["milestones"] = milestones;
    j["provenance"] = provenance;
    return j;
}

LacunarySeq LacunarySeq::from_json(const nlohmann::json& j) {
    LacunarySeq seq;
    seq.lambda = parse_rat(j.at("lambda").get<std::string>());
    for (const auto& t : j.at("terms")) seq.terms.push_back(parse_int(t.get<std::string>()));
    if (j.contains("milestones"))
        seq.milestones = j["milestones"].get<std::vector<std::size_t>>();
    if (j.contains("provenance")) seq.provenance = j["provenance"];
    seq.validate();
    return seq;
}

void LacunarySeq::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw param_error("cannot write " + path);
    out << to_json().dump(2) << '\n';
}

LacunarySeq LacunarySeq::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw param_error("cannot read " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

LacunarySeq make_raw_sequence(std::vector<Int> terms, const Rat& lambda) {
    LacunarySeq seq;
    seq.lambda = lambda;
    seq.terms = std::move(terms);
    seq.provenance["construction"] = "raw";
    seq.validate();
    return seq;
}

}  // namespace lacunary
