#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qres/divergences.hpp"
#include "qres/qmat.hpp"

namespace qres {

enum class Certification { kAnalyticExact, kHeuristicLowerBound, kHeuristicUpperBound };

std::string to_string(Certification c);

/// Free-set descriptor.
class ResourceTheory {
 public:
  enum class Kind { kAthermality, kCoherence, kPureBipartiteEntanglement };

  /// gibbs must be full rank and normalized, otherwise InvalidGibbs.
  static ResourceTheory athermality(const DensityOperator& gibbs);
  static ResourceTheory coherence();
  static ResourceTheory pure_bipartite_entanglement(int d_a, int d_b);

  Kind kind() const { return kind_; }
  const DensityOperator& gibbs() const;
  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }
  std::string name() const;

 private:
  Kind kind_ = Kind::kCoherence;
  DensityOperator gibbs_;
  int d_a_ = 0;
  int d_b_ = 0;
};

/// min over free states of the sandwiched divergence.
DivergenceValue monotone_alpha(const DensityOperator& rho, const ResourceTheory& theory, double alpha);

struct CoherenceMonotone {
  DivergenceValue value;
  ClassicalDist sigma;  // minimizing diagonal state
};

/// Coherence branch of monotone_alpha with its optimal free state.
CoherenceMonotone coherence_monotone(const DensityOperator& rho, double alpha, int restarts = 10);

struct FidelityPrimal {
  double value = 0.0;
  ClassicalDist argmax;
};

/// max over diagonal sigma of F(rho, sigma).
FidelityPrimal fidelity_coherence_primal(const DensityOperator& rho, int restarts = 10);

struct FidelityDual {
  double value = 0.0;
  Matrix argmin_r;
  double duality_gap = 0.0;  // dual - primal
};

/// inf over R > 0 of Tr[rho R^-1] * max_i R_ii.
FidelityDual fidelity_coherence_dual(const DensityOperator& rho, int restarts = 10);

struct Robustness {
  double log_robustness = 0.0;
};

Robustness generalized_robustness(const DensityOperator& rho, const ResourceTheory& theory);

struct Multiplicativity {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

/// Compares F(rho x tau) with F(rho) F(tau) for the coherence fidelity; product dim <= 16.
Multiplicativity multiplicativity_check(const DensityOperator& rho, const DensityOperator& tau);

/// max over free states of F: F(rho, gamma), the coherence primal, or lambda_max.
double monotone_fidelity(const DensityOperator& rho, const ResourceTheory& theory);

/// Schmidt coefficients (descending) of a pure bipartite state.
std::vector<double> schmidt_coefficients(const DensityOperator& psi, int d_a, int d_b);

/// Mixture of a gamma-covariant unitary with the replacement map X -> tr(X) gamma.
KrausChannel gibbs_preserving_channel(const DensityOperator& gibbs, std::uint64_t seed);

/// Mixture of incoherent unitaries and dephase-then-stochastic maps.
KrausChannel dephasing_covariant_channel(int d, std::uint64_t seed);

struct MonotoneRow {
  std::string state_id;
  std::string theory;
  double alpha = 0.0;
  double value_bits = 0.0;
  Certification certified = Certification::kAnalyticExact;
};

void write_monotone_csv(std::ostream& out, const std::vector<MonotoneRow>& rows);

}  // namespace qres
