#include "qres/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qres {

namespace {

constexpr double kEpsMach = std::numeric_limits<double>::epsilon();

struct Spectrum {
  Eigensystem es;
  RealVector w;
  double threshold = 0.0;
  bool in_support(Eigen::Index i) const { return w(i) > threshold; }
};

Spectrum spectrum_of(const DensityOperator& m) {
  Spectrum s;
  s.es = eigh(m.matrix());
  s.w = psd_spectrum(s.es);
  s.threshold = kSupportTol * s.w.maxCoeff();
  return s;
}

// Spectral function restricted to the support; zero on the kernel.
Matrix support_power(const Spectrum& s, double t) {
  std::vector<double> f(static_cast<size_t>(s.w.size()), 0.0);
  for (Eigen::Index i = 0; i < s.w.size(); ++i) {
    if (s.in_support(i)) f[static_cast<size_t>(i)] = std::pow(s.w(i), t);
  }
  return spectral_apply(s.es, f);
}

Matrix support_log2(const Spectrum& s) {
  std::vector<double> f(static_cast<size_t>(s.w.size()), 0.0);
  for (Eigen::Index i = 0; i < s.w.size(); ++i) {
    if (s.in_support(i)) f[static_cast<size_t>(i)] = std::log2(s.w(i));
  }
  return spectral_apply(s.es, f);
}

double leakage(const DensityOperator& rho, const Spectrum& sigma) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < sigma.w.size(); ++i) {
    if (!sigma.in_support(i)) {
      const auto v = sigma.es.vectors.col(i);
      out += (v.adjoint() * rho.matrix() * v)(0, 0).real();
    }
  }
  return std::max(0.0, out) / rho.trace();
}

bool violates_support(const DensityOperator& rho, const Spectrum& sigma) {
  return leakage(rho, sigma) > kSupportTol;
}

void check_dims(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("divergence of operators of different dimension");
}

void check_alpha_lower(double alpha, double lower, bool inclusive) {
  if (std::isnan(alpha) || (inclusive ? alpha < lower : alpha <= lower)) {
    throw AlphaOutOfRange("alpha = " + std::to_string(alpha));
  }
}

double trace_power_sum(const Matrix& a, double alpha, double scale) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(a), Eigen::EigenvaluesOnly);
  const RealVector& w = solver.eigenvalues();
  double floor = 8.0 * kEpsMach * static_cast<double>(w.size()) * scale;
  double q = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > floor) q += std::pow(w(i), alpha);
  }
  return q;
}

}  // namespace

double support_leakage(const DensityOperator& rho, const DensityOperator& sigma) {
  check_dims(rho, sigma);
  return leakage(rho, spectrum_of(sigma));
}

double sandwiched_trace(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
  check_dims(rho, sigma);
  check_alpha_lower(alpha, 0.5, true);
  if (alpha == 1.0 || std::isinf(alpha)) throw AlphaOutOfRange("trace functional needs finite alpha != 1");
  Spectrum s = spectrum_of(sigma);
  if (alpha > 1.0 && violates_support(rho, s)) return kInf;
  if (alpha == 0.5) {
    Matrix root_rho = mpow(rho.matrix(), 0.5);
    return trace_norm(root_rho * support_power(s, 0.5));
  }
  const double exponent = (1.0 - alpha) / (2.0 * alpha);
  Matrix p = support_power(s, exponent);
  Matrix a = p * rho.matrix() * p;
  double p_norm = 0.0;
  for (Eigen::Index i = 0; i < s.w.size(); ++i) {
    if (s.in_support(i)) p_norm = std::max(p_norm, std::pow(s.w(i), exponent));
  }
  double rho_norm = rho.matrix().cwiseAbs().rowwise().sum().maxCoeff();
  return trace_power_sum(a, alpha, p_norm * p_norm * rho_norm);
}

DivergenceValue sandwiched(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
  check_dims(rho, sigma);
  check_alpha_lower(alpha, 0.5, true);
  if (std::isinf(alpha)) return {alpha, dmax(rho, sigma).bits};
  if (std::abs(alpha - 1.0) < kAlphaOneWindow) return {alpha, umegaki(rho, sigma).bits};
  double q = sandwiched_trace(rho, sigma, alpha);
  if (std::isinf(q) || q <= 0.0) return {alpha, kInf};
  return {alpha, std::log2(q) / (alpha - 1.0)};
}

DivergenceValue petz(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
  check_dims(rho, sigma);
  check_alpha_lower(alpha, 0.0, false);
  if (alpha > 2.0) throw AlphaOutOfRange("Petz divergence needs alpha <= 2, got " + std::to_string(alpha));
  if (std::abs(alpha - 1.0) < kAlphaOneWindow) return {alpha, umegaki(rho, sigma).bits};
  Spectrum s = spectrum_of(sigma);
  if (alpha > 1.0 && violates_support(rho, s)) return {alpha, kInf};
  Matrix a = mpow(rho.matrix(), alpha);
  Matrix b = support_power(s, 1.0 - alpha);
  double q = (a * b).trace().real();
  double floor = 8.0 * kEpsMach * rho.dim();
  if (alpha < 1.0 && q <= floor * std::max(1.0, b.cwiseAbs().maxCoeff())) return {alpha, kInf};
  return {alpha, std::log2(q) / (alpha - 1.0)};
}

DivergenceValue umegaki(const DensityOperator& rho, const DensityOperator& sigma) {
  check_dims(rho, sigma);
  Spectrum s = spectrum_of(sigma);
  if (violates_support(rho, s)) return {1.0, kInf};
  Spectrum r = spectrum_of(rho);
  double neg_entropy = 0.0;
  for (Eigen::Index i = 0; i < r.w.size(); ++i) {
    if (r.w(i) > 0.0) neg_entropy += r.w(i) * std::log2(r.w(i));
  }
  double cross = 0.0;
  for (Eigen::Index j = 0; j < s.w.size(); ++j) {
    if (!s.in_support(j)) continue;
    const auto v = s.es.vectors.col(j);
    cross += std::log2(s.w(j)) * (v.adjoint() * rho.matrix() * v)(0, 0).real();
  }
  return {1.0, neg_entropy - cross};
}

DivergenceValue dmax(const DensityOperator& rho, const DensityOperator& sigma) {
  check_dims(rho, sigma);
  Spectrum s = spectrum_of(sigma);
  if (violates_support(rho, s)) return {kInf, kInf};
  Matrix p = support_power(s, -0.5);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(p * rho.matrix() * p), Eigen::EigenvaluesOnly);
  return {kInf, std::log2(solver.eigenvalues().maxCoeff())};
}

double q_alpha(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
  if (std::isnan(alpha) || alpha < 0.5 || alpha >= 1.0) {
    throw AlphaOutOfRange("q_alpha needs alpha in [1/2, 1), got " + std::to_string(alpha));
  }
  return sandwiched_trace(rho, sigma, alpha);
}

double continuity_bound(double q, double alpha, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRange("continuity bound needs alpha in (0, 1)");
  if (!(eps >= 0.0) || !(q > 0.0)) throw InvalidArgument("need eps >= 0 and q > 0");
  double x = std::pow(eps, alpha) / q;
  if (x > 1.0 + 1e-12) throw InvalidArgument("eps exceeds Q_alpha^(1/alpha)");
  if (x >= 1.0) return kInf;
  return std::log2(1.0 - x) / (alpha - 1.0);
}

double rel_entropy_variance(const DensityOperator& rho, const DensityOperator& sigma) {
  check_dims(rho, sigma);
  Spectrum s = spectrum_of(sigma);
  if (violates_support(rho, s)) throw SupportViolation("supp(rho) not contained in supp(sigma)");
  Spectrum r = spectrum_of(rho);
  Matrix x = support_log2(r) - support_log2(s);
  Matrix rx = rho.matrix() * x;
  double d = rx.trace().real();
  double second = (rx * x).trace().real();
  return second - d * d;
}

DivergenceValue classical_renyi(const ClassicalDist& p, const ClassicalDist& q, double alpha) {
  if (p.dim() != q.dim()) throw DimensionMismatch("classical divergence of different dimensions");
  check_alpha_lower(alpha, 0.0, false);
  const int d = p.dim();
  if (std::isinf(alpha)) {
    double best = -kInf;
    for (int i = 0; i < d; ++i) {
      if (p[i] <= 0.0) continue;
      if (q[i] <= 0.0) return {alpha, kInf};
      best = std::max(best, std::log2(p[i] / q[i]));
    }
    return {alpha, best};
  }
  if (std::abs(alpha - 1.0) < kAlphaOneWindow) {
    double kl = 0.0;
    for (int i = 0; i < d; ++i) {
      if (p[i] <= 0.0) continue;
      if (q[i] <= 0.0) return {alpha, kInf};
      kl += p[i] * std::log2(p[i] / q[i]);
    }
    return {alpha, kl};
  }
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      if (alpha > 1.0) return {alpha, kInf};
      continue;
    }
    sum += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  }
  if (sum <= 0.0) return {alpha, kInf};
  return {alpha, std::log2(sum) / (alpha - 1.0)};
}

double classical_variance(const ClassicalDist& p, const ClassicalDist& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("classical variance of different dimensions");
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < p.dim(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) throw SupportViolation("p not absolutely continuous with respect to q");
    double l = std::log2(p[i] / q[i]);
    m1 += p[i] * l;
    m2 += p[i] * l * l;
  }
  return m2 - m1 * m1;
}

}  // namespace qres
