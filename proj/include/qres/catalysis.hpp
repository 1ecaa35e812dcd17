#pragma once

#include <ostream>
#include <vector>

#include "qres/divergences.hpp"
#include "qres/monotones.hpp"
#include "qres/qmat.hpp"

namespace qres {

struct CatalystBound {
  double alpha = 0.5;
  double eps = 0.0;
  double q_rho = 0.0;
  double q_rho_prime = 0.0;
  double bound = 0.0;       // upper bound on Q_alpha(nu), clamped to 1
  bool clamped = false;     // the raw bound was >= 1
  double lower_bits = 0.0;  // induced lower bound on D_alpha(nu), D(nu) and LR_g(nu)
};

/// Q_alpha(nu) <= eps^alpha / (Q_alpha(rho) - Q_alpha(rho')), alpha in [1/2, 1).
CatalystBound catalyst_q_bound(const DensityOperator& rho, const DensityOperator& rho_prime,
                               const ResourceTheory& theory, double alpha, double eps);
CatalystBound catalyst_q_bound_from_values(double q_rho, double q_rho_prime, double alpha, double eps);

struct FidelityBound {
  double eps = 0.0;
  double sqrt_f_rho = 0.0;
  double sqrt_f_rho_prime = 0.0;
  double tight = 0.0;     // eps / (sqrt F(rho) - sqrt F(rho')), clamped to 1
  double general = 0.0;   // the alpha = 1/2 value of catalyst_q_bound
  double ratio = 0.0;     // unclamped tight / general, equal to sqrt(eps)
  double lower_bits = 0.0;  // -log F(nu) >= -2 log(tight)
};

FidelityBound catalyst_fidelity_bound_tight(const DensityOperator& rho, const DensityOperator& rho_prime,
                                            const ResourceTheory& theory, double eps);
FidelityBound fidelity_bound_from_values(double f_rho, double f_rho_prime, double eps);

/// Leading-order exponent DeltaD^2 log e / (8 (V1 + V2)) in bits per copy; needs full support.
double error_exponent_first_order(const DensityOperator& rho1, const DensityOperator& sigma1,
                                  const DensityOperator& rho2, const DensityOperator& sigma2);

struct OptimizedExponent {
  double gamma = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double kappa = 0.0;
};

/// Maximizes kappa / (1/delta1 + 2/delta2) with kappa = D_{1-delta1}(rho1||sigma1) - D_{1+delta2}(rho2||sigma2).
OptimizedExponent error_exponent_optimized(const DensityOperator& rho1, const DensityOperator& sigma1,
                                           const DensityOperator& rho2, const DensityOperator& sigma2);

enum class XiMode { kExactSurrogate, kSupplied };

/// Classical block catalyst. Every block of tau and rho' (x) nu carries the system as its last factor.
struct CatalystBlocks {
  int n = 1;
  ClassicalDist rho, rho_prime, eta, eta_prime;
  std::vector<ClassicalDist> xi;  // xi[m] on d^m outcomes, xi[0] = [1]
  ClassicalDist nu;               // n blocks of d^(n-1)
  ClassicalDist gibbs;            // reference for nu, same layout
  ClassicalDist tau;              // n blocks of d^n
  ClassicalDist target;           // rho' (x) nu in the layout of tau
};

struct DuanReport {
  CatalystBlocks blocks;
  double d_nu_bits = 0.0;     // D(nu || gibbs)
  double bound_bits = 0.0;    // 2 n D(rho || eta)
  double eps0 = 0.0;          // max_k P(xi_k, rho'^(x)k)
  double p_tau = 0.0;         // P(tau, rho' (x) nu)
  double marginal_error = 0.0;  // trace distance of the catalyst marginal of tau to nu
  bool free_energy_ok() const { return d_nu_bits <= bound_bits + 1e-10; }
  bool error_ok() const { return p_tau <= 2.0 * eps0 + 1e-10; }
};

inline constexpr long long kMaxCatalystSize = 10000;

/// xi lists xi_1 .. xi_n when mode is kSupplied and is ignored otherwise.
DuanReport duan_catalyst(const ClassicalDist& rho, const ClassicalDist& rho_prime, const ClassicalDist& eta,
                         const ClassicalDist& eta_prime, int n, XiMode mode,
                         const std::vector<ClassicalDist>& xi = {});

struct BoundCurve {
  double alpha = 0.5;
  std::vector<double> eps_list;
  std::vector<double> lower_bound_bits;
  std::vector<double> upper_bound_bits;  // NaN outside athermality
  std::vector<int> n_used;
  std::vector<double> tight_lower_bits;  // -2 log of the alpha = 1/2 tight bound; NaN for other alpha
  double gamma_used = 0.0;
  double lower_slope = 0.0;  // bits per bit of log(1/eps), over unclamped points
  double lower_intercept = 0.0;
  double lower_fit_residual = 0.0;
  double upper_slope = 0.0;  // 2 D(rho||gamma) / gamma_used, the slope without the ceiling
  bool sandwich_holds() const;
};

BoundCurve scaling_curve(const DensityOperator& rho, const DensityOperator& rho_prime, const ResourceTheory& theory,
                         const std::vector<double>& eps_list, double alpha = 0.5);

void write_bound_csv(std::ostream& out, const BoundCurve& curve);

}  // namespace qres
