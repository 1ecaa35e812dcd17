#include "qres/catalysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qres/io.hpp"

namespace qres {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("eps must lie in (0, 1]");
}

std::vector<double> kron(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (double x : a) {
    for (double y : b) out.push_back(x * y);
  }
  return out;
}

std::vector<double> power(const std::vector<double>& a, int k) {
  std::vector<double> out{1.0};
  for (int i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

double classical_pd(const std::vector<double>& a, const std::vector<double>& b) {
  double bc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) bc += std::sqrt(std::max(0.0, a[i]) * std::max(0.0, b[i]));
  return std::sqrt(std::max(0.0, 1.0 - bc * bc));
}

void check_full(const ClassicalDist& g, const char* name) {
  for (double v : g.probs()) {
    if (!(v > 0.0)) throw InvalidGibbs(std::string(name) + " needs full support");
  }
}

}  // namespace

CatalystBound catalyst_q_bound_from_values(double q_rho, double q_rho_prime, double alpha, double eps) {
  if (!(alpha >= 0.5 && alpha < 1.0)) throw AlphaOutOfRange("alpha must lie in [1/2, 1)");
  check_eps(eps);
  if (!(q_rho > q_rho_prime)) throw HypothesisViolated("Q_alpha(rho) <= Q_alpha(rho'): the pair is not hard at this alpha");
  CatalystBound b;
  b.alpha = alpha;
  b.eps = eps;
  b.q_rho = q_rho;
  b.q_rho_prime = q_rho_prime;
  double raw = std::pow(eps, alpha) / (q_rho - q_rho_prime);
  b.clamped = raw >= 1.0;
  b.bound = std::min(1.0, raw);
  b.lower_bits = std::log2(b.bound) / (alpha - 1.0);
  if (b.lower_bits == 0.0) b.lower_bits = 0.0;  // drop -0
  return b;
}

CatalystBound catalyst_q_bound(const DensityOperator& rho, const DensityOperator& rho_prime,
                               const ResourceTheory& theory, double alpha, double eps) {
  if (!(alpha >= 0.5 && alpha < 1.0)) throw AlphaOutOfRange("alpha must lie in [1/2, 1)");
  auto q = [&](const DensityOperator& s) { return std::exp2((alpha - 1.0) * monotone_alpha(s, theory, alpha).bits); };
  return catalyst_q_bound_from_values(q(rho), q(rho_prime), alpha, eps);
}

FidelityBound fidelity_bound_from_values(double f_rho, double f_rho_prime, double eps) {
  check_eps(eps);
  if (!(f_rho > f_rho_prime)) throw HypothesisViolated("F(rho) <= F(rho')");
  FidelityBound b;
  b.eps = eps;
  b.sqrt_f_rho = std::sqrt(f_rho);
  b.sqrt_f_rho_prime = std::sqrt(f_rho_prime);
  const double gap = b.sqrt_f_rho - b.sqrt_f_rho_prime;
  b.tight = std::min(1.0, eps / gap);
  b.general = std::min(1.0, std::sqrt(eps) / gap);
  b.ratio = std::sqrt(eps);
  b.lower_bits = -2.0 * std::log2(b.tight);
  if (b.lower_bits == 0.0) b.lower_bits = 0.0;
  return b;
}

FidelityBound catalyst_fidelity_bound_tight(const DensityOperator& rho, const DensityOperator& rho_prime,
                                            const ResourceTheory& theory, double eps) {
  return fidelity_bound_from_values(monotone_fidelity(rho, theory), monotone_fidelity(rho_prime, theory), eps);
}

DuanReport duan_catalyst(const ClassicalDist& rho, const ClassicalDist& rho_prime, const ClassicalDist& eta,
                         const ClassicalDist& eta_prime, int n, XiMode mode, const std::vector<ClassicalDist>& xi) {
  const int d = rho.dim();
  if (rho_prime.dim() != d || eta.dim() != d || eta_prime.dim() != d) {
    throw DimensionMismatch("catalyst inputs must share a dimension");
  }
  if (n < 1 || n > 5) throw InvalidArgument("n must lie in [1, 5]");
  long long size = n;
  for (int i = 0; i < n; ++i) size *= d;
  if (size > kMaxCatalystSize) throw DimensionOverflow("n * d^n exceeds 10^4");
  check_full(eta, "eta");
  check_full(eta_prime, "eta'");

  DuanReport rep;
  CatalystBlocks& cb = rep.blocks;
  cb.n = n;
  cb.rho = rho;
  cb.rho_prime = rho_prime;
  cb.eta = eta;
  cb.eta_prime = eta_prime;
  cb.xi.push_back(ClassicalDist({1.0}));
  if (mode == XiMode::kExactSurrogate) {
    for (int m = 1; m <= n; ++m) cb.xi.push_back(ClassicalDist(power(rho_prime.probs(), m)));
  } else {
    if (static_cast<int>(xi.size()) != n) throw InvalidXi("expected xi_1 .. xi_n");
    long long dim = 1;
    for (int m = 1; m <= n; ++m) {
      dim *= d;
      const auto& x = xi[static_cast<size_t>(m - 1)];
      if (x.dim() != dim) throw InvalidXi("xi_" + std::to_string(m) + " must have d^" + std::to_string(m) + " entries");
      if (std::abs(x.sum() - 1.0) > 1e-12) throw InvalidXi("xi_" + std::to_string(m) + " must have unit trace");
      cb.xi.push_back(x);
    }
  }

  const double w = 1.0 / n;
  std::vector<double> nu, gibbs, tau, target;
  for (int k = 1; k <= n; ++k) {
    auto head = power(rho.probs(), k - 1);
    auto nu_k = kron(head, cb.xi[static_cast<size_t>(n - k)].probs());
    auto g_k = kron(power(eta.probs(), k - 1), power(eta_prime.probs(), n - k));
    auto tau_k = kron(head, cb.xi[static_cast<size_t>(n - k + 1)].probs());
    auto target_k = kron(nu_k, rho_prime.probs());
    for (double v : nu_k) nu.push_back(w * v);
    for (double v : g_k) gibbs.push_back(w * v);
    for (double v : tau_k) tau.push_back(w * v);
    for (double v : target_k) target.push_back(w * v);
  }
  cb.nu = ClassicalDist(nu);
  cb.gibbs = ClassicalDist(gibbs);
  cb.tau = ClassicalDist(tau);
  cb.target = ClassicalDist(target);

  rep.d_nu_bits = classical_renyi(cb.nu, cb.gibbs, 1.0).bits;
  rep.bound_bits = 2.0 * n * classical_renyi(rho, eta, 1.0).bits;
  for (int m = 1; m <= n; ++m) {
    rep.eps0 = std::max(rep.eps0, classical_pd(cb.xi[static_cast<size_t>(m)].probs(), power(rho_prime.probs(), m)));
  }
  rep.p_tau = classical_pd(tau, target);
  double tv = 0.0;
  for (size_t i = 0; i < nu.size(); ++i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += tau[i * static_cast<size_t>(d) + static_cast<size_t>(j)];
    tv += std::abs(s - nu[i]);
  }
  rep.marginal_error = 0.5 * tv;
  return rep;
}

bool BoundCurve::sandwich_holds() const {
  for (size_t i = 0; i < eps_list.size(); ++i) {
    if (std::isnan(upper_bound_bits[i])) continue;
    if (lower_bound_bits[i] > upper_bound_bits[i]) return false;
  }
  return true;
}

BoundCurve scaling_curve(const DensityOperator& rho, const DensityOperator& rho_prime, const ResourceTheory& theory,
                         const std::vector<double>& eps_list, double alpha) {
  if (eps_list.empty()) throw InvalidArgument("eps_list is empty");
  for (size_t i = 0; i < eps_list.size(); ++i) {
    check_eps(eps_list[i]);
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw InvalidArgument("eps_list must be decreasing");
  }
  BoundCurve c;
  c.alpha = alpha;
  c.eps_list = eps_list;
  std::vector<char> unclamped;
  for (double e : eps_list) {
    CatalystBound b = catalyst_q_bound(rho, rho_prime, theory, alpha, e);
    c.lower_bound_bits.push_back(b.lower_bits);
    unclamped.push_back(!b.clamped);
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (alpha == 0.5) {
    const double f = monotone_fidelity(rho, theory), fp = monotone_fidelity(rho_prime, theory);
    for (double e : eps_list) c.tight_lower_bits.push_back(fidelity_bound_from_values(f, fp, e).lower_bits);
  } else {
    c.tight_lower_bits.assign(eps_list.size(), nan);
  }
  if (theory.kind() == ResourceTheory::Kind::kAthermality) {
    const DensityOperator& g = theory.gibbs();
    c.gamma_used = error_exponent_optimized(rho, g, rho_prime, g).gamma;
    const double d_rho = umegaki(rho, g).bits;
    c.upper_slope = 2.0 * d_rho / c.gamma_used;
    for (double e : eps_list) {
      int n = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / e) / c.gamma_used)));
      c.n_used.push_back(n);
      c.upper_bound_bits.push_back(2.0 * n * d_rho);
    }
  } else {
    c.n_used.assign(eps_list.size(), 0);
    c.upper_bound_bits.assign(eps_list.size(), nan);
    c.gamma_used = nan;
    c.upper_slope = nan;
  }

  // Least-squares line through the unclamped lower-bound points.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (size_t i = 0; i < eps_list.size(); ++i) {
    if (!unclamped[i]) continue;
    double x = std::log2(1.0 / eps_list[i]), y = c.lower_bound_bits[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    double den = m * sxx - sx * sx;
    c.lower_slope = (m * sxy - sx * sy) / den;
    c.lower_intercept = (sy - c.lower_slope * sx) / m;
    for (size_t i = 0; i < eps_list.size(); ++i) {
      if (!unclamped[i]) continue;
      double x = std::log2(1.0 / eps_list[i]);
      c.lower_fit_residual =
          std::max(c.lower_fit_residual, std::abs(c.lower_bound_bits[i] - (c.lower_slope * x + c.lower_intercept)));
    }
  } else {
    c.lower_slope = nan;
    c.lower_intercept = nan;
    c.lower_fit_residual = nan;
  }
  return c;
}

void write_bound_csv(std::ostream& out, const BoundCurve& curve) {
  out << "eps,lower_bits,upper_bits,n_used,gamma_used,tight_lower_bits\n";
  for (size_t i = 0; i < curve.eps_list.size(); ++i) {
    out << format_double(curve.eps_list[i]) << ',' << format_double(curve.lower_bound_bits[i]) << ','
        << format_double(curve.upper_bound_bits[i]) << ',' << curve.n_used[i] << ','
        << format_double(curve.gamma_used) << ',' << format_double(curve.tight_lower_bits[i]) << '\n';
  }
}

}  // namespace qres
