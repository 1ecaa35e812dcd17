#include "qres/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace qres {

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Eigenvalues below this are indistinguishable from zero for a solver
// working in double precision on a matrix of the given spectral radius.
double noise_floor(const RealVector& w) {
  if (w.size() == 0) return 0.0;
  double scale = w.cwiseAbs().maxCoeff();
  return 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(w.size()) * scale;
}

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
    strides[static_cast<size_t>(i)] =
        strides[static_cast<size_t>(i) + 1] * dims[static_cast<size_t>(i) + 1];
  }
  return strides;
}

// Offsets of every multi-index over the chosen subsystems.
std::vector<int> offsets_over(const std::vector<int>& dims, const std::vector<int>& strides,
                              const std::vector<int>& subsystems) {
  std::vector<int> offsets{0};
  for (int s : subsystems) {
    std::vector<int> next;
    next.reserve(offsets.size() * static_cast<size_t>(dims[static_cast<size_t>(s)]));
    for (int o : offsets) {
      for (int k = 0; k < dims[static_cast<size_t>(s)]; ++k) {
        next.push_back(o + k * strides[static_cast<size_t>(s)]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

DensityOperator::DensityOperator(const Matrix& data) {
  if (data.rows() != data.cols() || data.rows() == 0) {
    throw DimensionMismatch("density operator must be a nonempty square matrix");
  }
  double herm = hermiticity_error(data);
  if (herm > kHermitianTol) {
    throw NonHermitian("asymmetry " + std::to_string(herm));
  }
  Matrix h = hermitize(data);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol) {
    throw InvalidState("negative eigenvalue " + std::to_string(min_eig));
  }
  double tr = h.trace().real();
  if (!(tr > 0.0) || tr > 1.0 + kTraceTol) {
    throw InvalidState("trace " + std::to_string(tr) + " outside (0, 1]");
  }
  data_ = std::move(h);
}

DensityOperator DensityOperator::diagonal(std::span<const double> p) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
  return DensityOperator(m);
}

DensityOperator DensityOperator::pure(const Vector& psi) {
  return DensityOperator(psi * psi.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(int d) {
  return DensityOperator(Matrix::Identity(d, d) / static_cast<double>(d));
}

bool DensityOperator::is_normalized(double tol) const { return std::abs(trace() - 1.0) <= tol; }

bool DensityOperator::is_diagonal(double tol) const {
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      if (i != j && std::abs(data_(i, j)) > tol) return false;
    }
  }
  return true;
}

double DensityOperator::purity() const { return (data_ * data_).trace().real(); }

ClassicalDist::ClassicalDist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DimensionMismatch("empty distribution");
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -1e-15) throw InvalidState("negative or non-finite probability");
    if (p < 0.0) p = 0.0;
  }
  if (sum() > 1.0 + kClassicalSumTol) throw InvalidState("probabilities sum above 1");
}

double ClassicalDist::sum() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

DensityOperator ClassicalDist::to_operator() const { return DensityOperator::diagonal(probs_); }

ClassicalDist ClassicalDist::uniform(int d) {
  return ClassicalDist(std::vector<double>(static_cast<size_t>(d), 1.0 / d));
}

KrausChannel::KrausChannel(std::vector<Matrix> kraus, bool trace_nonincreasing)
    : trace_nonincreasing_(trace_nonincreasing), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvalidChannel("no Kraus operators");
  in_dim_ = static_cast<int>(kraus_.front().cols());
  out_dim_ = static_cast<int>(kraus_.front().rows());
  Matrix sum = Matrix::Zero(in_dim_, in_dim_);
  for (const Matrix& k : kraus_) {
    if (k.cols() != in_dim_ || k.rows() != out_dim_) {
      throw DimensionMismatch("Kraus operators of unequal shape");
    }
    sum += k.adjoint() * k;
  }
  Matrix defect = Matrix::Identity(in_dim_, in_dim_) - sum;
  if (trace_nonincreasing_) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(defect), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
      throw InvalidChannel("sum of K^dag K exceeds identity");
    }
  } else if (max_abs(defect) > 1e-10) {
    throw InvalidChannel("completeness violated by " + std::to_string(max_abs(defect)));
  }
}

KrausChannel KrausChannel::identity(int d) { return KrausChannel({Matrix::Identity(d, d)}); }

KrausChannel KrausChannel::dephasing(int d) {
  std::vector<Matrix> ks;
  for (int i = 0; i < d; ++i) {
    Matrix k = Matrix::Zero(d, d);
    k(i, i) = 1.0;
    ks.push_back(k);
  }
  return KrausChannel(std::move(ks));
}

KrausChannel KrausChannel::isometry(const Matrix& v) { return KrausChannel({v}); }

Matrix KrausChannel::stinespring() const {
  Matrix v(static_cast<Eigen::Index>(out_dim_) * static_cast<Eigen::Index>(kraus_.size()), in_dim_);
  for (size_t k = 0; k < kraus_.size(); ++k) {
    v.block(static_cast<Eigen::Index>(k) * out_dim_, 0, out_dim_, in_dim_) = kraus_[k];
  }
  return v;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double hermiticity_error(const Matrix& m) { return max_abs(m - m.adjoint()); }

Eigensystem eigh(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eigh needs a square matrix");
  double herm = hermiticity_error(m);
  if (herm > kHermitianTol * std::max(1.0, max_abs(m))) {
    throw NonHermitian("asymmetry " + std::to_string(herm));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(m));
  const Eigen::Index n = m.rows();
  Eigensystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    es.values(i) = solver.eigenvalues()(n - 1 - i);
    es.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return es;
}

RealVector psd_spectrum(const Eigensystem& es) {
  RealVector w = es.values;
  double scale = std::max(1.0, w.size() ? w.cwiseAbs().maxCoeff() : 0.0);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < -kPsdTol * scale) {
      throw NotPositiveSemidefinite("eigenvalue " + std::to_string(w(i)));
    }
    if (w(i) < 0.0) w(i) = 0.0;
  }
  return w;
}

Matrix spectral_apply(const Eigensystem& es, const std::vector<double>& f_values) {
  const Eigen::Index n = es.values.size();
  Matrix scaled = es.vectors;
  for (Eigen::Index i = 0; i < n; ++i) scaled.col(i) *= f_values[static_cast<size_t>(i)];
  return hermitize(scaled * es.vectors.adjoint());
}

Matrix mpow(const Matrix& m, double t) {
  Eigensystem es = eigh(m);
  RealVector w = psd_spectrum(es);
  double floor = noise_floor(w);
  std::vector<double> f(static_cast<size_t>(w.size()), 0.0);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    double wi = w(i);
    if (t <= 0.0) {
      f[static_cast<size_t>(i)] = wi <= kKernelTol ? 0.0 : std::pow(wi, t);
    } else {
      f[static_cast<size_t>(i)] = wi <= floor ? 0.0 : std::pow(wi, t);
    }
  }
  return spectral_apply(es, f);
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double sqrt_fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity of different dimensions");
  double overlap = trace_norm(mpow(rho.matrix(), 0.5) * mpow(sigma.matrix(), 0.5));
  double defect = std::max(0.0, 1.0 - rho.trace()) * std::max(0.0, 1.0 - sigma.trace());
  return std::min(1.0, overlap + std::sqrt(defect));
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  double s = sqrt_fidelity(rho, sigma);
  return s * s;
}

double purified_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  return std::sqrt(std::max(0.0, 1.0 - fidelity(rho, sigma)));
}

double gen_trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("trace distance of different dimensions");
  Matrix diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(diff), Eigen::EigenvaluesOnly);
  double norm1 = solver.eigenvalues().cwiseAbs().sum();
  return 0.5 * (norm1 + std::abs(diff.trace().real()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(kron(a.matrix(), b.matrix()));
}

DensityOperator tensor_power(const DensityOperator& a, int n) {
  if (n < 1) throw InvalidArgument("tensor power needs n >= 1");
  Matrix out = a.matrix();
  for (int k = 1; k < n; ++k) out = kron(out, a.matrix());
  return DensityOperator(out);
}

Matrix partial_trace(const Matrix& tau, const std::vector<int>& dims, const std::vector<int>& keep) {
  int total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionMismatch("subsystem dimension below 1");
    total *= d;
  }
  if (tau.rows() != total || tau.cols() != total) {
    throw DimensionMismatch("dims do not multiply to the operator dimension");
  }
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DimensionMismatch("repeated subsystem in keep set");
  }
  std::vector<int> traced;
  for (int s = 0; s < static_cast<int>(dims.size()); ++s) {
    if (std::find(kept.begin(), kept.end(), s) == kept.end()) traced.push_back(s);
  }
  for (int s : kept) {
    if (s < 0 || s >= static_cast<int>(dims.size())) throw DimensionMismatch("keep index out of range");
  }
  std::vector<int> strides = strides_of(dims);
  std::vector<int> keep_off = offsets_over(dims, strides, kept);
  std::vector<int> trace_off = offsets_over(dims, strides, traced);
  const auto n = static_cast<Eigen::Index>(keep_off.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      Complex acc = 0.0;
      for (int t : trace_off) acc += tau(keep_off[static_cast<size_t>(a)] + t, keep_off[static_cast<size_t>(b)] + t);
      out(a, b) = acc;
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& tau, const std::vector<int>& dims,
                              const std::vector<int>& keep) {
  return DensityOperator(hermitize(partial_trace(tau.matrix(), dims, keep)));
}

Matrix apply_channel(const Matrix& rho, const KrausChannel& ch) {
  if (rho.rows() != ch.in_dim()) throw DimensionMismatch("channel input dimension");
  Matrix out = Matrix::Zero(ch.out_dim(), ch.out_dim());
  for (const Matrix& k : ch.kraus()) out += k * rho * k.adjoint();
  return hermitize(out);
}

DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& ch) {
  return DensityOperator(apply_channel(rho.matrix(), ch));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.in_dim() != first.out_dim()) throw DimensionMismatch("channel composition");
  std::vector<Matrix> ks;
  for (const Matrix& a : second.kraus()) {
    for (const Matrix& b : first.kraus()) ks.push_back(a * b);
  }
  return KrausChannel(std::move(ks), second.trace_nonincreasing() || first.trace_nonincreasing());
}

KrausChannel mix(const KrausChannel& a, const KrausChannel& b, double weight_b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw DimensionMismatch("mixing channels of different shapes");
  }
  if (weight_b < 0.0 || weight_b > 1.0) throw InvalidArgument("mixing weight outside [0, 1]");
  std::vector<Matrix> ks;
  for (const Matrix& k : a.kraus()) ks.push_back(std::sqrt(1.0 - weight_b) * k);
  for (const Matrix& k : b.kraus()) ks.push_back(std::sqrt(weight_b) * k);
  return KrausChannel(std::move(ks), a.trace_nonincreasing() || b.trace_nonincreasing());
}

namespace {

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      double re = normal(gen);
      double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

DensityOperator random_state(int d, int rank, std::uint64_t seed) {
  if (d < 1 || rank < 1 || rank > d) {
    throw InvalidRank("rank " + std::to_string(rank) + " for dimension " + std::to_string(d));
  }
  std::mt19937_64 gen(seed);
  Matrix g = gaussian_matrix(d, rank, gen);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(hermitize(rho));
}

KrausChannel random_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || n_kraus < 1) throw InvalidArgument("channel dimensions must be positive");
  if (d_out * n_kraus < d_in) {
    throw DimensionMismatch("d_out * n_kraus must be at least d_in for an isometric dilation");
  }
  std::mt19937_64 gen(seed);
  Matrix g = gaussian_matrix(static_cast<Eigen::Index>(d_out) * n_kraus, d_in, gen);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), d_in);
  std::vector<Matrix> ks;
  for (int k = 0; k < n_kraus; ++k) ks.push_back(q.block(static_cast<Eigen::Index>(k) * d_out, 0, d_out, d_in));
  return KrausChannel(std::move(ks));
}

Matrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Matrix g = gaussian_matrix(d, d, gen);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    Complex diag = r(i, i);
    double mag = std::abs(diag);
    if (mag > 0.0) q.col(i) *= diag / mag;
  }
  return q;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double von_neumann_entropy(const DensityOperator& rho) {
  Eigensystem es = eigh(rho.matrix());
  RealVector w = psd_spectrum(es);
  std::vector<double> v(w.data(), w.data() + w.size());
  return shannon_entropy(v);
}

double mutual_information(const DensityOperator& tau, int d_s, int d_c) {
  if (d_s * d_c != tau.dim()) throw DimensionMismatch("d_s * d_c differs from the state dimension");
  DensityOperator s = partial_trace(tau, {d_s, d_c}, {0});
  DensityOperator c = partial_trace(tau, {d_s, d_c}, {1});
  return von_neumann_entropy(s) + von_neumann_entropy(c) - von_neumann_entropy(tau);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace qres
