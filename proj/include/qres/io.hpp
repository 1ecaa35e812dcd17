#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qres/divergences.hpp"
#include "qres/qmat.hpp"

namespace qres {

/// {dim, re, im} with row-major entries.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DensityOperator& rho);
DensityOperator density_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ClassicalDist& p);
ClassicalDist classical_from_json(const nlohmann::json& j);

/// {alpha, bits, infinite}; infinite values carry bits = null, alpha = "inf" when infinite.
nlohmann::json to_json(const DivergenceValue& v);
DivergenceValue divergence_from_json(const nlohmann::json& j);

/// Twelve significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double x);

}  // namespace qres
