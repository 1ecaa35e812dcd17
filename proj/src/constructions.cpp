#include "qres/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qres {

namespace {

long long parse_integer(const std::string& text, const std::string& whole) {
  long long v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) throw NotRational("cannot parse '" + whole + "'");
  return v;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

DensityOperator schmidt_state(const std::vector<double>& lambda) {
  const int d = static_cast<int>(lambda.size());
  Vector psi = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = std::sqrt(std::max(0.0, lambda[static_cast<size_t>(i)]));
  return DensityOperator::pure(psi);
}

// Equal monotone values are part of several constructions, so ties are kept.
constexpr double kPairTol = 1e-9;

void finish(HardPairReport& r) {
  r.d_gap = r.d_rho - r.d_rho_prime;
  r.fid_gap = std::sqrt(r.f_rho) - std::sqrt(r.f_rho_prime);
  r.conditions.relent_ordered = r.d_gap >= -kPairTol;
  r.conditions.fidelity_reversed = r.f_rho > r.f_rho_prime;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text = trim(raw);
  size_t slash = text.find('/');
  Rational r;
  if (slash == std::string::npos) {
    r.num = parse_integer(text, raw);
    r.den = 1;
  } else {
    r.num = parse_integer(trim(text.substr(0, slash)), raw);
    r.den = parse_integer(trim(text.substr(slash + 1)), raw);
  }
  if (r.den <= 0) throw NotRational("denominator must be positive in '" + raw + "'");
  long long g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw NotRational("empty list");
  return out;
}

Rational rationalize(double x, long long max_den) {
  if (!std::isfinite(x) || max_den < 1) throw NotRational("cannot rationalize " + std::to_string(x));
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(v);
    long long ai = static_cast<long long>(a);
    long long q2 = q0 + ai * q1;
    if (q2 > max_den) break;
    long long p2 = p0 + ai * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = v - a;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return parse_rational(std::to_string(p1) + "/" + std::to_string(q1));
}

RationalGibbs rational_gibbs(const std::vector<Rational>& gamma) {
  long long total = 1;
  for (const auto& r : gamma) {
    if (r.num <= 0) throw InvalidGibbs("Gibbs weights must be positive");
    total = std::lcm(total, r.den);
    if (total > kMaxEmbeddingDim) throw DimensionOverflow("common denominator exceeds 10^6");
  }
  RationalGibbs g;
  g.total = total;
  long long sum = 0;
  for (const auto& r : gamma) {
    g.counts.push_back(r.num * (total / r.den));
    sum += g.counts.back();
  }
  if (sum != total) throw NotRational("Gibbs weights do not sum to one");
  return g;
}

ClassicalDist embedding_channel(const ClassicalDist& p, const std::vector<Rational>& gamma) {
  if (static_cast<size_t>(p.dim()) != gamma.size()) throw DimensionMismatch("p and gamma differ in length");
  RationalGibbs g = rational_gibbs(gamma);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(g.total));
  for (size_t i = 0; i < gamma.size(); ++i) {
    double share = p[static_cast<int>(i)] / static_cast<double>(g.counts[i]);
    out.insert(out.end(), static_cast<size_t>(g.counts[i]), share);
  }
  return ClassicalDist(out);
}

KrausChannel embedding_kraus(const std::vector<Rational>& gamma) {
  RationalGibbs g = rational_gibbs(gamma);
  const int d = static_cast<int>(gamma.size());
  const int big = static_cast<int>(g.total);
  std::vector<Matrix> kraus;
  int row = 0;
  for (int i = 0; i < d; ++i) {
    double amp = 1.0 / std::sqrt(static_cast<double>(g.counts[static_cast<size_t>(i)]));
    for (long long c = 0; c < g.counts[static_cast<size_t>(i)]; ++c) {
      Matrix k = Matrix::Zero(big, d);
      k(row++, i) = amp;
      kraus.push_back(k);
    }
  }
  return KrausChannel(kraus);
}

double HardPairReport::diagnostic(const std::string& key) const {
  for (const auto& [k, v] : diagnostics) {
    if (k == key) return v;
  }
  throw InvalidArgument("no diagnostic named " + key);
}

HardPairReport build_athermal_qutrit_pair(long long big_d, double eps) {
  if (big_d < 100) throw InvalidArgument("D must be at least 100");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  const double dm1 = static_cast<double>(big_d - 1);
  const double x = std::pow(dm1, 1.0 - eps);
  const long long m = std::llround(x);
  if (m < 2 || std::abs(static_cast<double>(m) - x) / x > 0.01 || m >= big_d) {
    throw InfeasibleRounding("(D-1)^(1-eps) = " + std::to_string(x) + " has no integer within 1%");
  }
  const long long d2 = m - 1;
  const long long d1 = big_d - m;
  const double dd = static_cast<double>(big_d);
  const double eps_real = 1.0 - std::log(static_cast<double>(m)) / std::log(dm1);
  const double mu = eps_real + 1.0 / std::log2(dm1);
  if (mu >= 1.0) throw InfeasibleRounding("mu' >= 1 for this D");
  const double kappa = (1.0 - mu) / dm1;
  ClassicalDist gamma({static_cast<double>(d1) / dd, static_cast<double>(d2) / dd, 1.0 / dd});
  ClassicalDist rho({kappa * static_cast<double>(d1), kappa * static_cast<double>(d2), mu});
  ClassicalDist rho_p({0.0, static_cast<double>(d2) / static_cast<double>(m), 1.0 / static_cast<double>(m)});
  HardPairReport r;
  r.theory = ResourceTheory::athermality(gamma.to_operator());
  r.rho_classical = rho;
  r.rho_prime_classical = rho_p;
  r.rho = rho.to_operator();
  r.rho_prime = rho_p.to_operator();
  r.d_rho = classical_renyi(rho, gamma, 1.0).bits;
  r.d_rho_prime = classical_renyi(rho_p, gamma, 1.0).bits;
  r.f_rho = std::pow(2.0, -classical_renyi(rho, gamma, 0.5).bits);
  r.f_rho_prime = std::pow(2.0, -classical_renyi(rho_p, gamma, 0.5).bits);
  finish(r);
  r.diagnostics = {{"D", dd},
                   {"D1", static_cast<double>(d1)},
                   {"D2", static_cast<double>(d2)},
                   {"eps_realized", eps_real},
                   {"mu_prime", mu},
                   {"target_F_rho", 1.0 - eps},
                   {"target_F_rho_prime", std::pow(1.0 / dd, eps)}};
  return r;
}

HardPairReport entanglement_pair_from_schmidt(const std::vector<double>& lambda,
                                              const std::vector<double>& lambda_prime) {
  if (lambda.size() != lambda_prime.size() || lambda.size() < 2) {
    throw DimensionMismatch("Schmidt vectors must share a length >= 2");
  }
  ClassicalDist a(lambda), b(lambda_prime);
  if (std::abs(a.sum() - 1.0) > kClassicalSumTol || std::abs(b.sum() - 1.0) > kClassicalSumTol) {
    throw InvalidState("Schmidt vectors must sum to one");
  }
  const int d = a.dim();
  HardPairReport r;
  r.theory = ResourceTheory::pure_bipartite_entanglement(d, d);
  r.rho_classical = a;
  r.rho_prime_classical = b;
  if (d <= 16) {
    r.rho = schmidt_state(lambda);
    r.rho_prime = schmidt_state(lambda_prime);
  }
  r.d_rho = shannon_entropy(lambda);
  r.d_rho_prime = shannon_entropy(lambda_prime);
  r.f_rho = *std::max_element(lambda.begin(), lambda.end());
  r.f_rho_prime = *std::max_element(lambda_prime.begin(), lambda_prime.end());
  finish(r);
  return r;
}

HardPairReport build_entanglement_pair(long long d, double kappa) {
  if (d < 3) throw InvalidArgument("d must be at least 3");
  if (d > kMaxEmbeddingDim) throw DimensionOverflow("d above 10^6");
  if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidArgument("kappa must lie in (0, 1)");
  const double x = std::pow(static_cast<double>(d - 1), 1.0 - kappa);
  const long long m = std::llround(x);
  if (m < 1 || m > d) throw InfeasibleRounding("(d-1)^(1-kappa) does not round to a valid count");
  std::vector<double> lambda(static_cast<size_t>(d), (1.0 - kappa) / static_cast<double>(d - 1));
  lambda.front() = kappa;
  std::vector<double> lambda_p(static_cast<size_t>(d), 0.0);
  for (long long i = 0; i < m; ++i) lambda_p[static_cast<size_t>(i)] = 1.0 / static_cast<double>(m);
  HardPairReport r = entanglement_pair_from_schmidt(lambda, lambda_p);
  r.diagnostics = {{"m", static_cast<double>(m)},
                   {"kappa_realized", 1.0 - std::log(static_cast<double>(m)) / std::log(static_cast<double>(d - 1))}};
  return r;
}

HardPairReport build_coherence_pair(int d, double eps, double mu) {
  if (d < 3) throw InvalidArgument("d must be at least 3");
  if (!(eps > 0.0 && eps < 1.0) || !(mu >= 0.0 && mu <= 1.0)) throw InvalidArgument("eps in (0,1), mu in [0,1]");
  const long long d1 = std::llround(std::pow(static_cast<double>(d), 1.0 - eps));
  const long long d2 = std::llround(std::pow(static_cast<double>(d), eps));
  if (d1 < 1 || d2 < 2 || d1 * d2 > d) throw InfeasibleRounding("d1 * d2 must not exceed d");
  HardPairReport r;
  r.theory = ResourceTheory::coherence();
  const double closed_f = mu + (1.0 - mu) / static_cast<double>(d - 1);
  const double witness = std::pow(mu + (1.0 - mu) / std::sqrt(static_cast<double>(d - 1)), 2.0);
  if (d <= 16) {
    Matrix m = Matrix::Zero(d, d);
    m(0, 0) = mu;
    const double block = (1.0 - mu) / static_cast<double>(d - 1);
    for (int i = 1; i < d; ++i) {
      for (int j = 1; j < d; ++j) m(i, j) = block;
    }
    DensityOperator rho(m);
    Vector phi = Vector::Zero(d);
    for (long long j = 0; j < d2; ++j) phi((d1 - 1) * d2 + j) = 1.0 / std::sqrt(static_cast<double>(d2));
    DensityOperator rho_p = DensityOperator::pure(phi);
    r.rho = rho;
    r.rho_prime = rho_p;
    r.d_rho = monotone_alpha(rho, r.theory, 1.0).bits;
    r.d_rho_prime = monotone_alpha(rho_p, r.theory, 1.0).bits;
    r.f_rho = fidelity_coherence_primal(rho).value;
    r.f_rho_prime = fidelity_coherence_primal(rho_p).value;
  } else {
    r.d_rho = (1.0 - mu) * std::log2(static_cast<double>(d - 1));
    r.d_rho_prime = std::log2(static_cast<double>(d2));
    r.f_rho = closed_f;
    r.f_rho_prime = 1.0 / static_cast<double>(d2);
  }
  finish(r);
  r.diagnostics = {{"d1", static_cast<double>(d1)},
                   {"d2", static_cast<double>(d2)},
                   {"eps_realized", std::log(static_cast<double>(d2)) / std::log(static_cast<double>(d))},
                   {"fidelity_witness", witness},
                   {"fidelity_closed_form", closed_f}};
  return r;
}

}  // namespace qres
