#ifndef LUEQUIV_JSON_IO_HPP
#define LUEQUIV_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "luequiv/classify.hpp"
#include "luequiv/equivalence.hpp"

namespace luequiv {

// Operator files: {"dim_a": m, "dim_b": n, "matrix": [[[re, im], ...], ...]}
nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::ordered_json operator_to_json(const BipartiteOperator& op);
BipartiteOperator operator_from_json(const nlohmann::json& j);
BipartiteOperator load_operator(const std::string& path);
void save_operator(const BipartiteOperator& op, const std::string& path);

nlohmann::ordered_json verdict_to_json(const EquivalenceVerdict& v);
nlohmann::ordered_json classification_to_json(const StateClassification& c);

}  // namespace luequiv

#endif
