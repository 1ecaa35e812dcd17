#include "qres/monotones.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "optim.hpp"
#include "qres/io.hpp"

namespace qres {

namespace {

constexpr double kPurityTol = 1e-10;

// Q(q) = Tr (D rho D)^alpha with D = diag(q^s), on the indices where diag(rho) is nonzero.
struct CoherenceProblem {
  Matrix rho;
  std::vector<int> idx;
  double alpha = 0.5;
  double s = 0.5;

  double value(const std::vector<double>& q, std::vector<double>* grad) const {
    const Eigen::Index m = rho.rows();
    RealVector d(m);
    for (Eigen::Index i = 0; i < m; ++i) d(i) = std::pow(q[static_cast<size_t>(i)], s);
    Matrix a = d.asDiagonal() * rho * d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(a));
    const RealVector& w = solver.eigenvalues();
    double threshold = 1e-13 * std::max(w.maxCoeff(), 1e-300);
    double q_value = 0.0;
    RealVector f = RealVector::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (w(i) > threshold) {
        q_value += std::pow(w(i), alpha);
        f(i) = std::pow(w(i), alpha - 1.0);
      }
    }
    if (grad != nullptr) {
      grad->assign(static_cast<size_t>(m), 0.0);
      Matrix mm = solver.eigenvectors() * f.asDiagonal() * solver.eigenvectors().adjoint();
      Matrix md = mm * d.asDiagonal() * rho;
      for (Eigen::Index i = 0; i < m; ++i) {
        double qi = q[static_cast<size_t>(i)];
        (*grad)[static_cast<size_t>(i)] = 2.0 * alpha * s * std::pow(qi, s - 1.0) * md(i, i).real();
      }
    }
    return q_value;
  }
};

CoherenceProblem make_problem(const DensityOperator& rho, double alpha) {
  CoherenceProblem p;
  const Matrix& m = rho.matrix();
  double dmax = m.diagonal().real().maxCoeff();
  for (int i = 0; i < rho.dim(); ++i) {
    if (m(i, i).real() > 1e-14 * dmax) p.idx.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(p.idx.size());
  p.rho.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) p.rho(i, j) = m(p.idx[static_cast<size_t>(i)], p.idx[static_cast<size_t>(j)]);
  }
  p.alpha = alpha;
  p.s = (1.0 - alpha) / (2.0 * alpha);
  return p;
}

std::vector<std::vector<double>> simplex_starts(const CoherenceProblem& p, int restarts) {
  const size_t m = p.idx.size();
  std::vector<std::vector<double>> starts;
  starts.emplace_back(m, 1.0 / static_cast<double>(m));
  std::vector<double> diag(m);
  double total = 0.0;
  for (size_t i = 0; i < m; ++i) total += p.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  for (size_t i = 0; i < m; ++i) {
    diag[i] = std::max(p.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real() / total, 1e-6);
  }
  starts.push_back(diag);
  for (int k = 2; k < restarts; ++k) {
    std::mt19937_64 gen(derive_seed(0x5eed, static_cast<std::uint64_t>(k)));
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> x(m);
    for (double& v : x) v = expo(gen) + 1e-3;
    starts.push_back(x);
  }
  return starts;
}

// Optimizes Q over the simplex: maximized for alpha < 1, minimized for alpha > 1.
std::pair<std::vector<double>, double> optimize_coherence(const CoherenceProblem& p, int restarts) {
  const size_t m = p.idx.size();
  if (m == 1) return {{1.0}, p.value({1.0}, nullptr)};
  const double sign = p.alpha < 1.0 ? -1.0 : 1.0;
  optim::SimplexObjective f = [&](const std::vector<double>& q, std::vector<double>* grad) {
    double v = p.value(q, grad);
    if (grad != nullptr) {
      for (double& g : *grad) g *= sign;
    }
    return sign * v;
  };
  std::vector<double> best;
  double best_value = kInf;
  for (const auto& start : simplex_starts(p, std::max(1, restarts))) {
    optim::SimplexResult r = optim::minimize_on_simplex(f, start);
    if (r.value < best_value) {
      best_value = r.value;
      best = r.x;
    }
  }
  return {best, sign * best_value};
}

ClassicalDist expand(const CoherenceProblem& p, const std::vector<double>& q, int d) {
  std::vector<double> full(static_cast<size_t>(d), 0.0);
  for (size_t i = 0; i < p.idx.size(); ++i) full[static_cast<size_t>(p.idx[i])] = q[i];
  double total = std::accumulate(full.begin(), full.end(), 0.0);
  for (double& v : full) v /= total;
  return ClassicalDist(full);
}

std::vector<double> diagonal_of(const DensityOperator& rho) {
  std::vector<double> p(static_cast<size_t>(rho.dim()));
  for (int i = 0; i < rho.dim(); ++i) p[static_cast<size_t>(i)] = std::max(0.0, rho.matrix()(i, i).real());
  return p;
}

void require_pure(const DensityOperator& rho, int d_a, int d_b) {
  if (rho.dim() != d_a * d_b) throw DimensionMismatch("state dimension does not match d_A * d_B");
  if (!rho.is_normalized() || rho.purity() < 1.0 - kPurityTol) {
    throw TheoryUnsupported("entanglement monotones are implemented for pure states only");
  }
}

// min sum(x) subject to diag(x) >= rho, by a log-det barrier path.
double coherence_robustness_sum(const Matrix& rho) {
  const Eigen::Index d = rho.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  RealVector x = RealVector::Constant(d, solver.eigenvalues().maxCoeff() + 1.0);
  auto barrier = [&](const RealVector& y, double mu, double* out) {
    Matrix s = y.cast<Complex>().asDiagonal();
    s -= rho;
    Eigen::LLT<Matrix> llt(s);
    if (llt.info() != Eigen::Success) return false;
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      double l = llt.matrixL()(i, i).real();
      if (!(l > 0.0)) return false;
      logdet += 2.0 * std::log(l);
    }
    *out = y.sum() - mu * logdet;
    return true;
  };
  for (double mu = 1.0; mu >= 1e-14; mu *= 0.1) {
    for (int it = 0; it < 200; ++it) {
      Matrix s = x.cast<Complex>().asDiagonal();
      s -= rho;
      Matrix sinv = s.llt().solve(Matrix::Identity(d, d));
      RealVector g(d);
      Eigen::MatrixXd h(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        g(i) = 1.0 - mu * sinv(i, i).real();
        for (Eigen::Index j = 0; j < d; ++j) h(i, j) = mu * std::norm(sinv(i, j));
      }
      RealVector dx = -h.ldlt().solve(g);
      double decrement = -g.dot(dx);
      if (!(decrement > 1e-15 * std::max(1.0, x.sum()))) break;
      double f0 = 0.0;
      barrier(x, mu, &f0);
      double t = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        double f1 = 0.0;
        if (barrier(x + t * dx, mu, &f1) && f1 <= f0 - 0.25 * t * decrement) {
          x += t * dx;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
    }
  }
  return x.sum();
}

}  // namespace

std::string to_string(Certification c) {
  switch (c) {
    case Certification::kAnalyticExact:
      return "AnalyticExact";
    case Certification::kHeuristicLowerBound:
      return "HeuristicLowerBound";
    case Certification::kHeuristicUpperBound:
      return "HeuristicUpperBound";
  }
  return "unknown";
}

ResourceTheory ResourceTheory::athermality(const DensityOperator& gibbs) {
  if (!gibbs.is_normalized()) throw InvalidGibbs("Gibbs state must have unit trace");
  RealVector w = psd_spectrum(eigh(gibbs.matrix()));
  if (w.minCoeff() <= kKernelTol) throw InvalidGibbs("Gibbs state must be full rank");
  ResourceTheory t;
  t.kind_ = Kind::kAthermality;
  t.gibbs_ = gibbs;
  return t;
}

ResourceTheory ResourceTheory::coherence() { return ResourceTheory(); }

ResourceTheory ResourceTheory::pure_bipartite_entanglement(int d_a, int d_b) {
  if (d_a < 1 || d_b < 1) throw InvalidArgument("local dimensions must be positive");
  ResourceTheory t;
  t.kind_ = Kind::kPureBipartiteEntanglement;
  t.d_a_ = d_a;
  t.d_b_ = d_b;
  return t;
}

const DensityOperator& ResourceTheory::gibbs() const {
  if (kind_ != Kind::kAthermality) throw TheoryUnsupported("theory has no Gibbs state");
  return gibbs_;
}

std::string ResourceTheory::name() const {
  switch (kind_) {
    case Kind::kAthermality:
      return "athermality";
    case Kind::kCoherence:
      return "coherence";
    case Kind::kPureBipartiteEntanglement:
      return "entanglement";
  }
  return "unknown";
}

CoherenceMonotone coherence_monotone(const DensityOperator& rho, double alpha, int restarts) {
  if (std::isnan(alpha) || alpha < 0.5) throw AlphaOutOfRange("alpha = " + std::to_string(alpha));
  const int d = rho.dim();
  std::vector<double> p = diagonal_of(rho);
  double total = std::accumulate(p.begin(), p.end(), 0.0);
  std::vector<double> dephased(p);
  for (double& v : dephased) v /= total;
  ClassicalDist dephased_dist(dephased);
  if (rho.is_diagonal() || std::abs(alpha - 1.0) < kAlphaOneWindow) {
    return {sandwiched(rho, dephased_dist.to_operator(), alpha), dephased_dist};
  }
  if (std::isinf(alpha)) {
    double x = coherence_robustness_sum(rho.matrix());
    return {{alpha, std::log2(x)}, dephased_dist};
  }
  CoherenceProblem problem = make_problem(rho, alpha);
  auto [q, value] = optimize_coherence(problem, restarts);
  ClassicalDist sigma = expand(problem, q, d);
  return {{alpha, std::log2(value) / (alpha - 1.0)}, sigma};
}

DivergenceValue monotone_alpha(const DensityOperator& rho, const ResourceTheory& theory, double alpha) {
  if (std::isnan(alpha) || alpha < 0.5) throw AlphaOutOfRange("alpha = " + std::to_string(alpha));
  switch (theory.kind()) {
    case ResourceTheory::Kind::kAthermality:
      return sandwiched(rho, theory.gibbs(), alpha);
    case ResourceTheory::Kind::kCoherence:
      return coherence_monotone(rho, alpha).value;
    case ResourceTheory::Kind::kPureBipartiteEntanglement: {
      require_pure(rho, theory.d_a(), theory.d_b());
      std::vector<double> lambda = schmidt_coefficients(rho, theory.d_a(), theory.d_b());
      if (std::abs(alpha - 1.0) < kAlphaOneWindow) return {alpha, shannon_entropy(lambda)};
      if (alpha == 0.5) return {alpha, -std::log2(lambda.front())};
      throw TheoryUnsupported("entanglement monotone available for alpha in {1/2, 1} only");
    }
  }
  throw TheoryUnsupported("unknown theory");
}

FidelityPrimal fidelity_coherence_primal(const DensityOperator& rho, int restarts) {
  const int d = rho.dim();
  if (rho.is_diagonal()) {
    std::vector<double> p = diagonal_of(rho);
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= total;
    ClassicalDist q(p);
    return {fidelity(rho, q.to_operator()), q};
  }
  CoherenceProblem problem = make_problem(rho, 0.5);
  auto [q, value] = optimize_coherence(problem, restarts);
  ClassicalDist argmax = expand(problem, q, d);
  return {fidelity(rho, argmax.to_operator()), argmax};
}

FidelityDual fidelity_coherence_dual(const DensityOperator& rho, int restarts) {
  const int d = rho.dim();
  const double floor = 1e-10;
  const Matrix& r = rho.matrix();
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  auto unpack = [&](const Eigen::VectorXd& x) {
    Matrix v(d, d);
    for (Eigen::Index k = 0; k < n; ++k) v(k / d, k % d) = Complex(x(k), x(n + k));
    return v;
  };
  auto build = [&](const Matrix& v, Matrix* w, RealVector* norms) {
    *norms = v.rowwise().norm();
    *w = norms->cwiseInverse().asDiagonal() * v;
    Matrix big = (*w) * w->adjoint();
    big.diagonal().array() += floor;
    return big;
  };
  optim::RealObjective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    Matrix v = unpack(x);
    Matrix w;
    RealVector norms;
    Matrix big = build(v, &w, &norms);
    if (norms.minCoeff() < 1e-150) return kInf;
    Eigen::LLT<Matrix> llt(big);
    if (llt.info() != Eigen::Success) return kInf;
    Matrix inv = llt.solve(Matrix::Identity(d, d));
    double value = (r * inv).trace().real() * (1.0 + floor);
    if (grad != nullptr) {
      Matrix k = inv * r * inv;
      Matrix gamma = -2.0 * (1.0 + floor) * k * w;
      grad->resize(2 * n);
      for (int i = 0; i < d; ++i) {
        double proj = w.row(i).dot(gamma.row(i)).real();
        Eigen::RowVectorXcd gi = (gamma.row(i) - proj * w.row(i)) / norms(i);
        for (int j = 0; j < d; ++j) {
          (*grad)(i * d + j) = gi(j).real();
          (*grad)(n + i * d + j) = gi(j).imag();
        }
      }
    }
    return value;
  };
  double best = kInf;
  Matrix best_r = Matrix::Identity(d, d);
  for (int k = 0; k < std::max(1, restarts); ++k) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2 * n);
    if (k == 0) {
      for (int i = 0; i < d; ++i) x0(i * d + i) = 1.0;
    } else {
      std::mt19937_64 gen(derive_seed(0xd0a1, static_cast<std::uint64_t>(k)));
      std::normal_distribution<double> normal(0.0, 1.0);
      for (Eigen::Index i = 0; i < 2 * n; ++i) x0(i) = normal(gen);
    }
    optim::LbfgsResult res = optim::minimize_lbfgs(f, x0);
    if (res.value < best) {
      best = res.value;
      Matrix w;
      RealVector norms;
      best_r = build(unpack(res.x), &w, &norms);
    }
  }
  FidelityPrimal primal = fidelity_coherence_primal(rho);
  return {best, best_r, best - primal.value};
}

Robustness generalized_robustness(const DensityOperator& rho, const ResourceTheory& theory) {
  switch (theory.kind()) {
    case ResourceTheory::Kind::kAthermality:
      return {dmax(rho, theory.gibbs()).bits};
    case ResourceTheory::Kind::kCoherence:
      if (rho.is_diagonal()) {
        return {std::log2(rho.trace())};
      }
      return {std::log2(coherence_robustness_sum(rho.matrix()))};
    case ResourceTheory::Kind::kPureBipartiteEntanglement:
      break;
  }
  throw TheoryUnsupported("generalized robustness is implemented for athermality and coherence");
}

Multiplicativity multiplicativity_check(const DensityOperator& rho, const DensityOperator& tau) {
  if (rho.dim() * tau.dim() > 16) throw DimensionCap("product dimension above 16");
  double lhs = fidelity_coherence_primal(tensor(rho, tau)).value;
  double rhs = fidelity_coherence_primal(rho).value * fidelity_coherence_primal(tau).value;
  return {lhs, rhs, lhs - rhs};
}

double monotone_fidelity(const DensityOperator& rho, const ResourceTheory& theory) {
  switch (theory.kind()) {
    case ResourceTheory::Kind::kAthermality:
      return fidelity(rho, theory.gibbs());
    case ResourceTheory::Kind::kCoherence:
      return fidelity_coherence_primal(rho).value;
    case ResourceTheory::Kind::kPureBipartiteEntanglement:
      require_pure(rho, theory.d_a(), theory.d_b());
      return schmidt_coefficients(rho, theory.d_a(), theory.d_b()).front();
  }
  throw TheoryUnsupported("unknown theory");
}

std::vector<double> schmidt_coefficients(const DensityOperator& psi, int d_a, int d_b) {
  if (psi.dim() != d_a * d_b) throw DimensionMismatch("state dimension does not match d_A * d_B");
  Matrix reduced = partial_trace(psi.matrix(), {d_a, d_b}, {0});
  RealVector w = psd_spectrum(eigh(reduced));
  return std::vector<double>(w.data(), w.data() + w.size());
}

KrausChannel gibbs_preserving_channel(const DensityOperator& gibbs, std::uint64_t seed) {
  const int d = gibbs.dim();
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigensystem es = eigh(gibbs.matrix());
  RealVector lambda = psd_spectrum(es);
  Vector phases(d);
  for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, 2.0 * M_PI * unit(gen));
  Matrix u = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  double w = 0.1 + 0.8 * unit(gen);
  std::vector<Matrix> kraus{std::sqrt(1.0 - w) * u};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix k = Matrix::Zero(d, d);
      k.col(j) = std::sqrt(w * lambda(i)) * es.vectors.col(i);
      kraus.push_back(k);
    }
  }
  return KrausChannel(kraus);
}

KrausChannel dephasing_covariant_channel(int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  double w_unitary = expo(gen), w_stochastic = expo(gen), w_identity = expo(gen);
  double total = w_unitary + w_stochastic + w_identity;
  std::vector<int> perm(static_cast<size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), gen);
  Matrix p = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) p(perm[static_cast<size_t>(j)], j) = std::polar(1.0, 2.0 * M_PI * unit(gen));
  std::vector<Matrix> kraus{std::sqrt(w_identity / total) * Matrix::Identity(d, d),
                            std::sqrt(w_unitary / total) * p};
  for (int j = 0; j < d; ++j) {
    std::vector<double> column(static_cast<size_t>(d));
    for (double& v : column) v = expo(gen);
    double sum = std::accumulate(column.begin(), column.end(), 0.0);
    for (int i = 0; i < d; ++i) {
      Matrix k = Matrix::Zero(d, d);
      k(i, j) = std::sqrt(w_stochastic / total * column[static_cast<size_t>(i)] / sum);
      kraus.push_back(k);
    }
  }
  return KrausChannel(kraus);
}

void write_monotone_csv(std::ostream& out, const std::vector<MonotoneRow>& rows) {
  out << "state_id,theory,alpha,value_bits,certified\n";
  for (const auto& r : rows) {
    out << r.state_id << ',' << r.theory << ',' << format_double(r.alpha) << ',' << format_double(r.value_bits)
        << ',' << to_string(r.certified) << '\n';
  }
}

}  // namespace qres
