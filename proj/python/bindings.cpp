#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "luequiv/fixtures.hpp"
#include "luequiv/json_io.hpp"

namespace py = pybind11;
using namespace luequiv;

namespace {

using PyMatrix = std::vector<std::vector<cplx>>;

ComplexMatrix to_matrix(const PyMatrix& rows) {
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    ComplexMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged matrix");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

PyMatrix from_matrix(const ComplexMatrix& m) {
    PyMatrix rows(m.rows(), std::vector<cplx>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

BipartiteOperator make_op(std::size_t m, std::size_t n, const PyMatrix& rows) {
    return BipartiteOperator(m, n, to_matrix(rows));
}

}  // namespace

PYBIND11_MODULE(_luequiv, mod) {
    mod.doc() = "bipartite local-unitary equivalence toolkit";

    py::class_<BipartiteOperator>(mod, "BipartiteOperator")
        .def(py::init(&make_op), py::arg("dim_a"), py::arg("dim_b"), py::arg("matrix"))
        .def_readonly("dim_a", &BipartiteOperator::dim_a)
        .def_readonly("dim_b", &BipartiteOperator::dim_b)
        .def_property_readonly("matrix",
                               [](const BipartiteOperator& o) { return from_matrix(o.mat); });

    py::class_<LocalUnitary>(mod, "LocalUnitary")
        .def_property_readonly("u", [](const LocalUnitary& l) { return from_matrix(l.u); })
        .def_property_readonly("v", [](const LocalUnitary& l) { return from_matrix(l.v); });

    mod.def("fixture", &fixtures::get, py::arg("name"));
    mod.def("fixture_names", &fixtures::names);

    mod.def("eigenvalues",
            [](const BipartiteOperator& o) { return hermitian_eig(o.mat).values; },
            "ascending eigenvalues");
    mod.def("pt_eigenvalues", [](const BipartiteOperator& o) {
        return hermitian_eig(partial_transpose(o).mat).values;
    });
    mod.def("partial_transpose", &partial_transpose);

    mod.def(
        "max_product_overlap",
        [](const BipartiteOperator& o, std::uint64_t seed, std::size_t restarts) {
            SeesawOptions s;
            s.seed = seed;
            s.restarts = restarts;
            return max_product_overlap(o, s).value;
        },
        py::arg("op"), py::arg("seed") = 42, py::arg("restarts") = 64);

    mod.def(
        "decide_lu",
        [](const BipartiteOperator& a, const BipartiteOperator& b, std::uint64_t seed) {
            SearchOptions s;
            s.seed = seed;
            s.product_opts.seed = seed;
            return verdict_to_json(decide_lu(a, b, s)).dump();
        },
        py::arg("a"), py::arg("b"), py::arg("seed") = 42,
        "JSON verdict string");

    mod.def(
        "decide_slu",
        [](const std::vector<BipartiteOperator>& ps, const std::vector<BipartiteOperator>& qs,
           std::uint64_t seed) {
            SearchOptions s;
            s.seed = seed;
            s.product_opts.seed = seed;
            return verdict_to_json(decide_slu(ps, qs, s)).dump();
        },
        py::arg("p"), py::arg("q"), py::arg("seed") = 42, "JSON verdict string");

    mod.def(
        "classify",
        [](const BipartiteOperator& o, std::uint64_t seed) {
            SeesawOptions s;
            s.seed = seed;
            return classification_to_json(classify(o, s)).dump();
        },
        py::arg("op"), py::arg("seed") = 42, "JSON classification string");

    mod.def(
        "verify_witness",
        [](const BipartiteOperator& w, std::uint64_t seed) {
            SeesawOptions s;
            s.seed = seed;
            WitnessCandidate c = verify_witness(w, s);
            py::dict d;
            d["status"] = to_string(c.status);
            d["min_eigenvalue"] = c.min_eigenvalue;
            d["min_product_value"] = c.min_product_value;
            return d;
        },
        py::arg("w"), py::arg("seed") = 42);
}
