#include "qres/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace qres {

nlohmann::json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("only square matrices are serialized");
  std::vector<double> re, im;
  re.reserve(static_cast<size_t>(m.size()));
  im.reserve(static_cast<size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  const auto re = j.at("re").get<std::vector<double>>();
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
  const size_t n = static_cast<size_t>(dim) * static_cast<size_t>(dim);
  if (dim < 1 || re.size() != n || im.size() != n) {
    throw DimensionMismatch("matrix JSON has inconsistent dim and entry counts");
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      size_t k = static_cast<size_t>(r) * static_cast<size_t>(dim) + static_cast<size_t>(c);
      m(r, c) = Complex(re[k], im[k]);
    }
  }
  return m;
}

nlohmann::json to_json(const DensityOperator& rho) { return matrix_to_json(rho.matrix()); }

DensityOperator density_from_json(const nlohmann::json& j) {
  if (j.is_array()) return classical_from_json(j).to_operator();
  return DensityOperator(matrix_from_json(j));
}

nlohmann::json to_json(const ClassicalDist& p) { return p.probs(); }

ClassicalDist classical_from_json(const nlohmann::json& j) {
  return ClassicalDist(j.get<std::vector<double>>());
}

nlohmann::json to_json(const DivergenceValue& v) {
  nlohmann::json j;
  if (std::isinf(v.alpha)) {
    j["alpha"] = "inf";
  } else {
    j["alpha"] = v.alpha;
  }
  if (v.infinite()) {
    j["bits"] = nullptr;
  } else {
    j["bits"] = v.bits;
  }
  j["infinite"] = v.infinite();
  return j;
}

DivergenceValue divergence_from_json(const nlohmann::json& j) {
  DivergenceValue v;
  const auto& a = j.at("alpha");
  v.alpha = a.is_string() ? std::numeric_limits<double>::infinity() : a.get<double>();
  if (j.at("infinite").get<bool>()) {
    v.bits = std::numeric_limits<double>::infinity();
  } else {
    v.bits = j.at("bits").get<double>();
  }
  return v;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace qres
