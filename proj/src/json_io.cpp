#include "luequiv/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace luequiv {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json matrix_to_json(const ComplexMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix JSON must be a nonempty array of rows");
    const std::size_t r = j.size();
    const std::size_t c = j.at(0).size();
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const auto& row = j.at(i);
        if (row.size() != c) throw std::invalid_argument("ragged matrix JSON");
        for (std::size_t k = 0; k < c; ++k) {
            const auto& e = row.at(k);
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("matrix entries must be [re, im] pairs");
            m(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

ordered_json operator_to_json(const BipartiteOperator& op) {
    ordered_json j;
    j["dim_a"] = op.dim_a;
    j["dim_b"] = op.dim_b;
    j["matrix"] = matrix_to_json(op.mat);
    return j;
}

BipartiteOperator operator_from_json(const json& j) {
    const std::size_t m = j.at("dim_a").get<std::size_t>();
    const std::size_t n = j.at("dim_b").get<std::size_t>();
    // the BipartiteOperator constructor validates Hermiticity and the size contract
    return BipartiteOperator(m, n, matrix_from_json(j.at("matrix")));
}

BipartiteOperator load_operator(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open operator file: " + path);
    json j;
    in >> j;
    return operator_from_json(j);
}

void save_operator(const BipartiteOperator& op, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write operator file: " + path);
    out << operator_to_json(op).dump(2) << "\n";
}

ordered_json verdict_to_json(const EquivalenceVerdict& v) {
    ordered_json j;
    j["kind"] = to_string(v.kind);
    j["residual"] = v.residual;
    if (v.certificate) {
        ordered_json c;
        c["kind"] = to_string(v.certificate->kind);
        c["index"] = v.certificate->index;
        if (v.certificate->factor)
            c["factor"] = *v.certificate->factor == Factor::A ? "A" : "B";
        c["detail"] = v.certificate->detail;
        j["certificate"] = std::move(c);
    } else {
        j["certificate"] = nullptr;
    }
    if (v.lu.u.rows() > 0) {
        j["lu"] = {{"u", matrix_to_json(v.lu.u)}, {"v", matrix_to_json(v.lu.v)}};
    } else {
        j["lu"] = nullptr;
    }
    return j;
}

ordered_json classification_to_json(const StateClassification& c) {
    ordered_json j;
    j["trace"] = c.trace;
    j["is_npt"] = c.is_npt;
    j["is_ppt"] = c.is_ppt;
    j["ppt_boundary"] = c.ppt_boundary;
    j["pt_min"] = c.pt_min;
    j["pt_max"] = c.pt_max;
    j["d_lambda"] = {{"member", c.d_lambda}, {"evidence", to_string(c.d_lambda_evidence)}};
    j["d_lambda_bar"] = {{"member", c.d_lambda_bar},
                         {"evidence", to_string(c.d_lambda_bar_evidence)}};
    j["extremal"] = to_string(c.extremal);
    j["separable_certified"] = c.separable_certified;
    j["ppt_entangled_candidate"] = c.ppt_entangled_candidate;
    ordered_json spaces = ordered_json::array();
    for (const auto& e : c.eigenspaces) {
        spaces.push_back({{"eigenvalue", e.eigenvalue},
                          {"multiplicity", e.multiplicity},
                          {"product_found", e.product_found},
                          {"product_proof", e.product_proof},
                          {"spanned_by_products", e.spanned_by_products},
                          {"best_overlap", e.best_overlap}});
    }
    j["eigenspaces"] = std::move(spaces);
    return j;
}

}  // namespace luequiv
