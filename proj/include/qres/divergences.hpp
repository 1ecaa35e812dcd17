#pragma once

#include <cmath>
#include <limits>

#include "qres/qmat.hpp"

namespace qres {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Below this distance from alpha = 1 the relative entropy is used instead.
inline constexpr double kAlphaOneWindow = 1e-6;

/// Support of sigma is the span of eigenvectors above this fraction of its largest eigenvalue.
inline constexpr double kSupportTol = 1e-12;

/// A divergence in bits; +inf encodes the support conventions.
struct DivergenceValue {
  double alpha = 1.0;
  double bits = 0.0;
  bool infinite() const { return std::isinf(bits); }
};

/// Sandwiched Renyi divergence, alpha in [1/2, inf].
DivergenceValue sandwiched(const DensityOperator& rho, const DensityOperator& sigma, double alpha);

/// Petz Renyi divergence, alpha in (0, 2].
DivergenceValue petz(const DensityOperator& rho, const DensityOperator& sigma, double alpha);

DivergenceValue umegaki(const DensityOperator& rho, const DensityOperator& sigma);
DivergenceValue dmax(const DensityOperator& rho, const DensityOperator& sigma);

/// Tr((sigma^s rho sigma^s)^alpha) with s = (1 - alpha) / (2 alpha); +inf on support violation for alpha > 1.
double sandwiched_trace(const DensityOperator& rho, const DensityOperator& sigma, double alpha);

/// 2^{(alpha - 1) D}, alpha in [1/2, 1).
double q_alpha(const DensityOperator& rho, const DensityOperator& sigma, double alpha);

/// (1 / (alpha - 1)) log(1 - eps^alpha / q): bound on |D_alpha(rho||sigma) - D_alpha(rho~||sigma)| when
/// Delta(rho, rho~) <= eps <= q^(1/alpha), q = Q_alpha(rho||sigma), alpha in (0, 1).
double continuity_bound(double q, double alpha, double eps);

/// Relative entropy variance in bits^2.
double rel_entropy_variance(const DensityOperator& rho, const DensityOperator& sigma);

/// Classical Renyi divergence, alpha in (0, inf].
DivergenceValue classical_renyi(const ClassicalDist& p, const ClassicalDist& q, double alpha);
double classical_variance(const ClassicalDist& p, const ClassicalDist& q);

/// Weight of rho outside the support of sigma relative to tr(rho).
double support_leakage(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace qres
