#include <algorithm>
#include <cmath>

#include "optim.hpp"
#include "qres/catalysis.hpp"

namespace qres {

namespace {

void require_full_support(const DensityOperator& s, const char* name) {
  RealVector ev = eigh(s.matrix()).values;
  if (!(ev.minCoeff() > kSupportTol * ev.maxCoeff())) throw SupportViolation(std::string(name) + " needs full support");
}

void require_dims(const DensityOperator& r1, const DensityOperator& s1, const DensityOperator& r2,
                  const DensityOperator& s2) {
  if (r1.dim() != s1.dim() || r2.dim() != s2.dim()) throw DimensionMismatch("each pair must share a dimension");
}

}  // namespace

double error_exponent_first_order(const DensityOperator& rho1, const DensityOperator& sigma1,
                                  const DensityOperator& rho2, const DensityOperator& sigma2) {
  require_dims(rho1, sigma1, rho2, sigma2);
  require_full_support(rho1, "rho1");
  require_full_support(sigma1, "sigma1");
  require_full_support(rho2, "rho2");
  require_full_support(sigma2, "sigma2");
  const double gap = umegaki(rho1, sigma1).bits - umegaki(rho2, sigma2).bits;
  const double v = rel_entropy_variance(rho1, sigma1) + rel_entropy_variance(rho2, sigma2);
  if (v < 1e-12) throw DegenerateVariance("V1 + V2 below 1e-12");
  if (gap <= 0.0) return 0.0;
  return gap * gap * std::log2(std::exp(1.0)) / (8.0 * v);
}

OptimizedExponent error_exponent_optimized(const DensityOperator& rho1, const DensityOperator& sigma1,
                                           const DensityOperator& rho2, const DensityOperator& sigma2) {
  require_dims(rho1, sigma1, rho2, sigma2);
  if (support_leakage(rho1, sigma1) > 1e-12 || support_leakage(rho2, sigma2) > 1e-12) {
    throw SupportViolation("supp(rho_i) must lie in supp(sigma_i)");
  }
  constexpr int kGrid = 200;
  const double lo1 = std::log(1e-5), hi1 = std::log(0.5);
  const double lo2 = std::log(1e-5), hi2 = std::log(5.0);
  auto d1 = [&](double delta) { return sandwiched(rho1, sigma1, 1.0 - delta).bits; };
  auto d2 = [&](double delta) { return sandwiched(rho2, sigma2, 1.0 + delta).bits; };
  std::vector<double> a(kGrid), b(kGrid), x1(kGrid), x2(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    x1[i] = lo1 + (hi1 - lo1) * i / (kGrid - 1);
    x2[i] = lo2 + (hi2 - lo2) * i / (kGrid - 1);
    a[i] = d1(std::exp(x1[i]));
    b[i] = d2(std::exp(x2[i]));
  }
  auto objective = [](double kappa, double delta1, double delta2) {
    return kappa > 0.0 ? kappa / (1.0 / delta1 + 2.0 / delta2) : 0.0;
  };
  OptimizedExponent best;
  int bi = -1, bj = -1;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      double kappa = a[i] - b[j];
      double g = objective(kappa, std::exp(x1[i]), std::exp(x2[j]));
      if (kappa > 0.0 && (bi < 0 || g > best.gamma)) {
        best = {g, std::exp(x1[i]), std::exp(x2[j]), kappa};
        bi = i;
        bj = j;
      }
    }
  }
  if (bi < 0) throw NoFeasiblePoint("kappa <= 0 on the whole delta grid");

  // Local refinement in log coordinates, kept inside the box.
  auto clampv = [](double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); };
  auto f = [&](const Eigen::VectorXd& x) {
    double delta1 = std::exp(clampv(x(0), lo1, hi1)), delta2 = std::exp(clampv(x(1), lo2, hi2));
    return -objective(d1(delta1) - d2(delta2), delta1, delta2);
  };
  Eigen::VectorXd x0(2);
  x0 << x1[bi], x2[bj];
  optim::NelderMeadOptions opts;
  opts.initial_step = (hi1 - lo1) / (kGrid - 1);
  opts.x_tol = 1e-9;
  opts.max_evaluations = 2000;
  optim::NelderMeadResult r = optim::nelder_mead(f, x0, opts);
  if (-r.value > best.gamma) {
    double delta1 = std::exp(clampv(r.x(0), lo1, hi1)), delta2 = std::exp(clampv(r.x(1), lo2, hi2));
    best = {-r.value, delta1, delta2, d1(delta1) - d2(delta2)};
  }
  return best;
}

}  // namespace qres
