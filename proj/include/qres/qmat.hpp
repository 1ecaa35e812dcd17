#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qres/errors.hpp"

namespace qres {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kKernelTol = 1e-14;
inline constexpr double kClassicalSumTol = 1e-12;

/// Hermitian positive semidefinite matrix with 0 < trace <= 1.
///
/// The constructor validates and symmetrizes the input, so every stored
/// matrix is exactly Hermitian.
class DensityOperator {
 public:
  DensityOperator() = default;
  explicit DensityOperator(const Matrix& data);

  static DensityOperator diagonal(std::span<const double> p);
  static DensityOperator pure(const Vector& psi);
  static DensityOperator maximally_mixed(int d);

  int dim() const { return static_cast<int>(data_.rows()); }
  const Matrix& matrix() const { return data_; }
  double trace() const { return data_.trace().real(); }
  bool is_normalized(double tol = kTraceTol) const;
  bool is_diagonal(double tol = 1e-14) const;
  double purity() const;

 private:
  Matrix data_;
};

/// Nonnegative real vector with sum <= 1.
class ClassicalDist {
 public:
  ClassicalDist() = default;
  explicit ClassicalDist(std::vector<double> probs);

  int dim() const { return static_cast<int>(probs_.size()); }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](int i) const { return probs_[static_cast<size_t>(i)]; }
  double sum() const;
  DensityOperator to_operator() const;
  static ClassicalDist uniform(int d);

 private:
  std::vector<double> probs_;
};

/// Completely positive map given by Kraus operators of shape out_dim x in_dim.
class KrausChannel {
 public:
  KrausChannel() = default;
  explicit KrausChannel(std::vector<Matrix> kraus, bool trace_nonincreasing = false);

  static KrausChannel identity(int d);
  static KrausChannel dephasing(int d);
  static KrausChannel isometry(const Matrix& v);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  bool trace_nonincreasing() const { return trace_nonincreasing_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  /// Stinespring isometry with environment index outermost: row k*out_dim + i.
  Matrix stinespring() const;

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  bool trace_nonincreasing_ = false;
  std::vector<Matrix> kraus_;
};

struct Eigensystem {
  RealVector values;  // descending
  Matrix vectors;     // columns
};

Matrix hermitize(const Matrix& m);
double hermiticity_error(const Matrix& m);

Eigensystem eigh(const Matrix& m);

/// Applies t-th power to the spectrum; w^t := 0 on the kernel for t <= 0.
Matrix mpow(const Matrix& m, double t);

/// Eigenvalues clipped to [0, inf); throws NotPositiveSemidefinite below -kPsdTol.
RealVector psd_spectrum(const Eigensystem& es);

Matrix spectral_apply(const Eigensystem& es, const std::vector<double>& f_values);

double trace_norm(const Matrix& m);

/// Square root of the generalized fidelity.
double sqrt_fidelity(const DensityOperator& rho, const DensityOperator& sigma);
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);
double purified_distance(const DensityOperator& rho, const DensityOperator& sigma);
double gen_trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

Matrix kron(const Matrix& a, const Matrix& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
DensityOperator tensor_power(const DensityOperator& a, int n);

Matrix partial_trace(const Matrix& tau, const std::vector<int>& dims, const std::vector<int>& keep);
DensityOperator partial_trace(const DensityOperator& tau, const std::vector<int>& dims,
                              const std::vector<int>& keep);

Matrix apply_channel(const Matrix& rho, const KrausChannel& ch);
DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& ch);
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);
KrausChannel mix(const KrausChannel& a, const KrausChannel& b, double weight_b);

DensityOperator random_state(int d, int rank, std::uint64_t seed);
KrausChannel random_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed);
Matrix random_unitary(int d, std::uint64_t seed);

/// Entropies are in bits.
double shannon_entropy(std::span<const double> p);
double von_neumann_entropy(const DensityOperator& rho);
double mutual_information(const DensityOperator& tau, int d_s, int d_c);

/// Mixes a 64-bit seed with a stream index; used to derive per-restart seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qres
