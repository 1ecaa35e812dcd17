#include "qres/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qres/io.hpp"
#include "qres/parallel.hpp"

namespace qres {

namespace {

constexpr double kRankTol = 1e-14;

// Columns U sqrt(w) over the eigenvalues above kRankTol * max.
Matrix factor_of(const Matrix& m) {
  Eigensystem es = eigh(m);
  RealVector w = psd_spectrum(es);
  double top = std::max(w.maxCoeff(), 0.0);
  int r = 0;
  while (r < w.size() && w(r) > kRankTol * top) ++r;
  Matrix l(m.rows(), std::max(r, 1));
  l.setZero();
  for (int i = 0; i < r; ++i) l.col(i) = std::sqrt(w(i)) * es.vectors.col(i);
  return l;
}

double noise_floor(const RealVector& w) {
  return 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(w.size()) *
         std::max(w.maxCoeff(), 1e-300);
}

Matrix pad(const Matrix& l, Eigen::Index k) {
  if (l.cols() >= k) return l;
  Matrix out = Matrix::Zero(l.rows(), k);
  out.leftCols(l.cols()) = l;
  return out;
}

double nuclear_norm(const Matrix& m) {
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

class Projector {
 public:
  Projector(const DensityOperator& rho, Ball ball, double eps)
      : rho_(rho.matrix()), ball_(ball), eps_(eps), tr_rho_(rho.trace()), l_rho_(factor_of(rho.matrix())) {}

  double distance(const Matrix& l) const {
    if (ball_ == Ball::kSubnormalizedTrace) {
      Matrix diff = rho_ - l * l.adjoint();
      Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(diff), Eigen::EigenvaluesOnly);
      return 0.5 * (solver.eigenvalues().cwiseAbs().sum() + std::abs(diff.trace().real()));
    }
    double tr = l.squaredNorm();
    double root = nuclear_norm(l_rho_.adjoint() * l) + std::sqrt(std::max(0.0, (1.0 - tr_rho_) * (1.0 - tr)));
    return std::sqrt(std::max(0.0, 1.0 - root * root));
  }

  bool feasible(const Matrix& l) const { return distance(l) <= eps_; }

  Matrix trace_fix(Matrix l) const {
    double n2 = l.squaredNorm();
    if (ball_ == Ball::kNormalizedPurified) {
      if (n2 > 0.0) l /= std::sqrt(n2);
    } else if (n2 > 1.0) {
      l /= std::sqrt(n2);
    }
    return l;
  }

  Matrix project(const Matrix& l_in) const {
    Matrix l = trace_fix(pad(l_in, l_rho_.cols()));
    if (feasible(l)) return l;
    Matrix overlap = l_rho_.adjoint() * l;
    Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Matrix w = svd.matrixU() * svd.matrixV().adjoint();
    Matrix end = l_rho_ * w;
    if (!feasible(trace_fix(end))) return trace_fix(end);
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 48; ++i) {
      double mid = 0.5 * (lo + hi);
      if (feasible(trace_fix((1.0 - mid) * l + mid * end))) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return trace_fix((1.0 - hi) * l + hi * end);
  }

  const Matrix& l_rho() const { return l_rho_; }

 private:
  Matrix rho_;
  Ball ball_;
  double eps_;
  double tr_rho_;
  Matrix l_rho_;
};

// Q-functional of rho_tilde = L L^dagger; always minimized.
class Objective {
 public:
  Objective(const DensityOperator& sigma, double alpha, SmoothedDivergence kind) : alpha_(alpha), kind_(kind) {
    Eigensystem es = eigh(sigma.matrix());
    RealVector w = psd_spectrum(es);
    double threshold = kSupportTol * w.maxCoeff();
    double t = kind == SmoothedDivergence::kSandwiched ? (1.0 - alpha) / alpha : 1.0 - alpha;
    std::vector<double> f(static_cast<size_t>(w.size()), 0.0);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w(i) > threshold) {
        f[static_cast<size_t>(i)] = std::pow(w(i), t);
      } else {
        kernel_.push_back(es.vectors.col(i));
      }
    }
    weight_ = spectral_apply(es, f);
    kernel_proj_ = Matrix::Zero(sigma.dim(), sigma.dim());
    for (const auto& v : kernel_) kernel_proj_ += v * v.adjoint();
  }

  const std::vector<Vector>& kernel() const { return kernel_; }

  double value(const Matrix& l, Matrix* grad) const {
    if (alpha_ > 1.0 && !kernel_.empty()) {
      double leak = (kernel_proj_ * l).squaredNorm();
      if (leak > kSupportTol * std::max(l.squaredNorm(), 1e-300)) return kInf;
    }
    return kind_ == SmoothedDivergence::kSandwiched ? sandwiched(l, grad) : petz(l, grad);
  }

 private:
  double sandwiched(const Matrix& l, Matrix* grad) const {
    Matrix k = hermitize(l.adjoint() * weight_ * l);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(k);
    const RealVector& w = solver.eigenvalues();
    double threshold = noise_floor(w);
    double q = 0.0;
    RealVector f = RealVector::Zero(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w(i) > threshold) {
        q += std::pow(w(i), alpha_);
        f(i) = std::pow(w(i), alpha_ - 1.0);
      }
    }
    if (grad != nullptr) {
      const Matrix& u = solver.eigenvectors();
      *grad = 2.0 * alpha_ * weight_ * l * (u * f.asDiagonal() * u.adjoint());
    }
    return q;
  }

  double petz(const Matrix& l, Matrix* grad) const {
    Matrix r = hermitize(l * l.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(r);
    RealVector w = solver.eigenvalues().cwiseMax(0.0);
    const Matrix& u = solver.eigenvectors();
    Matrix b = u.adjoint() * weight_ * u;
    double top = std::max(w.maxCoeff(), 1e-300);
    double threshold = noise_floor(w);
    double q = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w(i) > threshold) q += std::pow(w(i), alpha_) * b(i, i).real();
    }
    if (grad != nullptr) {
      const Eigen::Index d = w.size();
      Eigen::MatrixXd gamma(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          double a = std::max(w(i), threshold), c = std::max(w(j), threshold);
          if (std::abs(a - c) > 1e-10 * top) {
            gamma(i, j) = (std::pow(a, alpha_) - std::pow(c, alpha_)) / (a - c);
          } else {
            gamma(i, j) = alpha_ * std::pow(0.5 * (a + c), alpha_ - 1.0);
          }
        }
      }
      Matrix g = u * (gamma.cast<Complex>().cwiseProduct(b)) * u.adjoint();
      *grad = 2.0 * g * l;
    }
    return q;
  }

  double alpha_;
  SmoothedDivergence kind_;
  Matrix weight_;
  Matrix kernel_proj_;
  std::vector<Vector> kernel_;
};

struct Candidate {
  Matrix l;
  double q = kInf;
};

Candidate descend(Matrix l, const Objective& obj, const Projector& proj, int max_iterations, double tol) {
  l = proj.project(l);
  Matrix g;
  double q = obj.value(l, &g);
  if (!std::isfinite(q)) return {l, q};
  double gnorm = g.norm();
  double eta = gnorm > 0.0 ? 0.5 * std::max(l.norm(), 1e-3) / gnorm : 1.0;
  int small_steps = 0;
  for (int it = 0; it < max_iterations; ++it) {
    if (!(g.norm() > 0.0)) break;
    bool accepted = false;
    Matrix ln;
    double qn = q;
    for (int ls = 0; ls < 60; ++ls) {
      ln = proj.project(l - eta * g);
      qn = obj.value(ln, nullptr);
      if (qn < q) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    double decrement = q - qn;
    l = ln;
    q = obj.value(l, &g);
    eta *= 2.0;
    if (decrement <= tol * std::max(std::abs(q), 1e-300)) {
      if (++small_steps >= 5) break;
    } else {
      small_steps = 0;
    }
  }
  return {l, q};
}

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      double re = normal(gen);
      double im = normal(gen);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

std::vector<Matrix> starting_points(const DensityOperator& rho, const Objective& obj, const Projector& proj,
                                    double eps, const SmoothingOptions& options) {
  const int d = rho.dim();
  const Matrix& l_rho = proj.l_rho();
  const double shrink = std::sqrt(std::max(0.0, 1.0 - eps * eps));
  std::vector<Matrix> starts;
  starts.push_back(pad(l_rho, d));
  starts.push_back(pad(shrink * l_rho, d));
  const auto& kernel = obj.kernel();
  if (!kernel.empty()) {
    const double tr = rho.trace();
    Matrix mixed = Matrix::Zero(d, l_rho.cols() + static_cast<Eigen::Index>(kernel.size()));
    mixed.leftCols(l_rho.cols()) = shrink * l_rho;
    double weight = eps * std::sqrt(tr / static_cast<double>(kernel.size()));
    for (size_t i = 0; i < kernel.size(); ++i) mixed.col(l_rho.cols() + static_cast<Eigen::Index>(i)) = weight * kernel[i];
    starts.push_back(mixed);
    Matrix tilted = pad(shrink * l_rho, d);
    tilted.col(0) += eps * std::sqrt(tr) * kernel.front();
    starts.push_back(tilted);
  }
  for (int i = 0; i < options.random_restarts; ++i) {
    int rank = 1 + i % d;
    Matrix g = gaussian(d, rank, derive_seed(options.seed, static_cast<std::uint64_t>(rank * 1000 + i)));
    starts.push_back(pad(g * std::sqrt(rho.trace()) / g.norm(), d));
  }
  for (const auto& w : options.warm_starts) {
    if (w.dim() != d) throw DimensionMismatch("warm start dimension");
    starts.push_back(pad(factor_of(w.matrix()), d));
  }
  return starts;
}

Candidate polish(Candidate best, const Objective& obj, const Projector& proj, const SmoothingOptions& options) {
  if (!std::isfinite(best.q)) return best;
  for (double tau = 1e-2; tau >= 1e-8; tau *= 0.1) {
    Matrix m = hermitize(best.l * best.l.adjoint());
    Eigensystem es = eigh(m);
    RealVector w = psd_spectrum(es);
    Matrix l = Matrix::Zero(m.rows(), m.rows());
    bool truncated = false;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w(i) >= tau * w(0)) {
        l.col(i) = std::sqrt(w(i)) * es.vectors.col(i);
      } else if (w(i) > 0.0) {
        truncated = true;
      }
    }
    if (!truncated) continue;
    Candidate c = descend(l, obj, proj, options.max_iterations / 5, options.stationarity_tol);
    if (c.q < best.q) best = c;
  }
  return best;
}

DensityOperator to_state(const Matrix& l) {
  Matrix m = hermitize(l * l.adjoint());
  double tr = m.trace().real();
  if (tr > 1.0) m /= tr;
  return DensityOperator(m);
}

Candidate optimize(const DensityOperator& rho, const DensityOperator& sigma, const SmoothingSpec& spec,
                   const SmoothingOptions& options) {
  Objective obj(sigma, spec.alpha, spec.divergence);
  Projector proj(rho, spec.ball, spec.epsilon);
  std::vector<Matrix> starts = starting_points(rho, obj, proj, spec.epsilon, options);
  std::vector<Candidate> results(starts.size());
  parallel_for(starts.size(), [&](size_t i) {
    results[i] = descend(starts[i], obj, proj, options.max_iterations, options.stationarity_tol);
  });
  Candidate best = results.front();
  for (const auto& c : results) {
    if (c.q < best.q) best = c;
  }
  return polish(best, obj, proj, options);
}

void check_spec(const DensityOperator& rho, const DensityOperator& sigma, const SmoothingSpec& spec) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("smoothing of operators of different dimension");
  if (rho.dim() > kSmoothingDimCap) throw DimensionCap("smoothing is limited to d <= 16");
  if (std::isnan(spec.alpha) || spec.alpha < 0.5 || spec.alpha == 1.0 || std::isinf(spec.alpha)) {
    throw AlphaOutOfRange("smoothing needs alpha in [1/2, 1) or (1, inf), got " + std::to_string(spec.alpha));
  }
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  if (spec.ball == Ball::kNormalizedPurified && !rho.is_normalized()) {
    throw InvalidArgument("normalized ball needs a normalized center");
  }
}

}  // namespace

std::string to_string(Ball ball) {
  switch (ball) {
    case Ball::kSubnormalizedPurified:
      return "subnormalized_purified";
    case Ball::kNormalizedPurified:
      return "normalized_purified";
    case Ball::kSubnormalizedTrace:
      return "subnormalized_trace";
  }
  return "unknown";
}

double ball_distance(const DensityOperator& rho, const DensityOperator& rho_tilde, Ball ball) {
  return ball == Ball::kSubnormalizedTrace ? gen_trace_distance(rho, rho_tilde) : purified_distance(rho, rho_tilde);
}

SmoothedValue smoothed_sandwiched(const DensityOperator& rho, const DensityOperator& sigma, const SmoothingSpec& spec,
                                  const SmoothingOptions& options) {
  if (spec.divergence != SmoothedDivergence::kSandwiched) {
    throw BallUnsupported("smoothed Petz divergences are not a supported quantity");
  }
  check_spec(rho, sigma, spec);
  if (std::abs(spec.alpha - 1.0) < kAlphaOneWindow) throw AlphaOutOfRange("alpha too close to 1 for smoothing");
  Candidate best = optimize(rho, sigma, spec, options);
  DensityOperator optimizer = to_state(best.l);
  double bits = sandwiched(optimizer, sigma, spec.alpha).bits;
  Certification cert =
      spec.alpha < 1.0 ? Certification::kHeuristicLowerBound : Certification::kHeuristicUpperBound;
  return {bits, optimizer, cert};
}

std::vector<SmoothedValue> smoothed_sweep(const DensityOperator& rho, const DensityOperator& sigma,
                                          const std::vector<double>& epsilons, double alpha, Ball ball,
                                          const SmoothingOptions& options) {
  if (!std::is_sorted(epsilons.begin(), epsilons.end())) throw InvalidArgument("epsilons must be ascending");
  std::vector<SmoothedValue> out;
  SmoothingOptions opts = options;
  for (double eps : epsilons) {
    if (!out.empty()) opts.warm_starts.push_back(out.back().optimizer);
    out.push_back(smoothed_sandwiched(rho, sigma, {eps, alpha, ball}, opts));
  }
  return out;
}

SmoothedValue smoothed_monotone(const DensityOperator& rho, const ResourceTheory& theory, double alpha,
                                double epsilon, const SmoothingOptions& options) {
  SmoothingSpec spec{epsilon, alpha, Ball::kSubnormalizedPurified};
  switch (theory.kind()) {
    case ResourceTheory::Kind::kAthermality:
      return smoothed_sandwiched(rho, theory.gibbs(), spec, options);
    case ResourceTheory::Kind::kCoherence: {
      ClassicalDist sigma = coherence_monotone(rho, alpha).sigma;
      SmoothedValue best = smoothed_sandwiched(rho, sigma.to_operator(), spec, options);
      SmoothedValue last = best;
      for (int round = 0; round < 4; ++round) {
        ClassicalDist next = coherence_monotone(last.optimizer, alpha).sigma;
        SmoothingOptions opts = options;
        opts.warm_starts.push_back(last.optimizer);
        SmoothedValue v = smoothed_sandwiched(rho, next.to_operator(), spec, opts);
        bool improved = v.bits < best.bits - 1e-12;
        if (improved) best = v;
        last = v;
        if (!improved) break;
      }
      best.certified =
          alpha < 1.0 ? Certification::kHeuristicLowerBound : Certification::kHeuristicUpperBound;
      return best;
    }
    case ResourceTheory::Kind::kPureBipartiteEntanglement:
      break;
  }
  throw TheoryUnsupported("smoothed entanglement monotones are not available");
}

DpCheck dp_check(const DensityOperator& rho, const DensityOperator& sigma, const KrausChannel& channel, double alpha,
                 double epsilon, const SmoothingOptions& options) {
  if (std::isnan(alpha) || alpha < 0.5 || alpha >= 1.0) {
    throw AlphaOutOfRange("data-processing check needs alpha in [1/2, 1)");
  }
  if (channel.in_dim() != rho.dim()) throw DimensionMismatch("channel input dimension");
  SmoothingSpec spec{epsilon, alpha, Ball::kSubnormalizedPurified};
  DensityOperator out_rho = apply_channel(rho, channel);
  DensityOperator out_sigma = apply_channel(sigma, channel);

  SmoothedValue first = smoothed_sandwiched(rho, sigma, spec, options);
  SmoothingOptions rhs_opts = options;
  rhs_opts.warm_starts.push_back(apply_channel(first.optimizer, channel));
  SmoothedValue rhs = smoothed_sandwiched(out_rho, out_sigma, spec, rhs_opts);

  // Pull the output optimizer back through the Stinespring dilation.
  const int n_env = static_cast<int>(channel.kraus().size());
  Matrix v = channel.stinespring();
  Matrix psi = v * rho.matrix() * v.adjoint();
  const Matrix& omega = out_rho.matrix();
  Matrix root = mpow(omega, 0.5);
  Matrix inv_root = mpow(omega, -0.5);
  Matrix m = inv_root * mpow(hermitize(root * rhs.optimizer.matrix() * root), 0.5) * inv_root;
  Matrix lift = kron(Matrix::Identity(n_env, n_env), m);
  Matrix tau = lift * psi * lift.adjoint();
  Matrix pulled = hermitize(v.adjoint() * tau * v);
  double tr = pulled.trace().real();
  if (tr > 1.0) pulled /= tr;
  Projector proj(rho, Ball::kSubnormalizedPurified, epsilon);
  Matrix l_hat = proj.project(factor_of(pulled));
  DensityOperator rho_hat = to_state(l_hat);
  double lifted = sandwiched(rho_hat, sigma, alpha).bits;

  SmoothingOptions lhs_opts = options;
  lhs_opts.warm_starts.push_back(rho_hat);
  lhs_opts.warm_starts.push_back(first.optimizer);
  SmoothedValue lhs = smoothed_sandwiched(rho, sigma, spec, lhs_opts);
  double lhs_bits = std::max({lhs.bits, lifted, first.bits});
  DpCheck out;
  out.lhs = lhs_bits;
  out.rhs = rhs.bits;
  out.slack = lhs_bits - rhs.bits;
  out.lifted = lifted;
  out.certified = lifted >= rhs.bits - 1e-10;
  return out;
}

std::vector<AppendixBRow> appendix_b_suite(double alpha, double epsilon, const SmoothingOptions& options) {
  if (std::isnan(alpha) || alpha < 0.5 || alpha >= 1.0) throw AlphaOutOfRange("suite needs alpha in [1/2, 1)");
  std::vector<double> r2{1.0, 0.0}, s2{0.5, 0.5}, r3{1.0, 0.0, 0.0}, s3{0.5, 0.5, 0.0};
  DensityOperator rho2 = DensityOperator::diagonal(r2), sigma2 = DensityOperator::diagonal(s2);
  DensityOperator rho3 = DensityOperator::diagonal(r3), sigma3 = DensityOperator::diagonal(s3);
  const double shrink_log = std::log2(1.0 - epsilon * epsilon);
  const double target = 1.0 - alpha / (1.0 - alpha) * shrink_log;
  const double petz_target = 1.0 - 1.0 / (1.0 - alpha) * shrink_log;
  struct Case {
    std::string label;
    SmoothedDivergence div;
    Ball ball;
    int dim;
    double analytic;
    bool lower_only;
  };
  const auto S = SmoothedDivergence::kSandwiched;
  const auto P = SmoothedDivergence::kPetz;
  const auto N = Ball::kNormalizedPurified;
  const auto U = Ball::kSubnormalizedPurified;
  std::vector<Case> cases{{"(1)", S, N, 2, 1.0, false},        {"(2)", S, N, 3, target, false},
                          {"(3)", S, U, 2, target, false},     {"(4)", S, U, 3, target, false},
                          {"(1.1)", P, N, 2, 1.0, false},      {"(2.1)", P, N, 3, petz_target, true},
                          {"(3.1)", P, U, 2, target, false}};
  std::vector<AppendixBRow> rows;
  for (const auto& c : cases) {
    const DensityOperator& rho = c.dim == 2 ? rho2 : rho3;
    const DensityOperator& sigma = c.dim == 2 ? sigma2 : sigma3;
    SmoothingSpec spec{epsilon, alpha, c.ball, c.div};
    check_spec(rho, sigma, spec);
    Candidate best = optimize(rho, sigma, spec, options);
    AppendixBRow row;
    row.label = c.label;
    row.divergence = c.div;
    row.ball = c.ball;
    row.dim = c.dim;
    row.optimizer = to_state(best.l);
    row.value_bits = c.div == S ? sandwiched(row.optimizer, sigma, alpha).bits : petz(row.optimizer, sigma, alpha).bits;
    row.analytic_bits = c.analytic;
    row.abs_err = std::abs(row.value_bits - c.analytic);
    row.lower_bound_only = c.lower_only;
    rows.push_back(row);
  }
  return rows;
}

void write_smoothing_csv(std::ostream& out, const std::vector<AppendixBRow>& rows, double alpha, double epsilon) {
  out << "case,alpha,eps,ball,value_bits,analytic_bits,abs_err\n";
  for (const auto& r : rows) {
    std::string name = (r.divergence == SmoothedDivergence::kPetz ? "petz" : "sandwiched") + std::string("_") +
                       std::to_string(r.dim) + "d" + r.label;
    out << name << ',' << format_double(alpha) << ',' << format_double(epsilon) << ',' << to_string(r.ball) << ','
        << format_double(r.value_bits) << ',' << format_double(r.analytic_bits) << ',' << format_double(r.abs_err)
        << '\n';
  }
}

}  // namespace qres
