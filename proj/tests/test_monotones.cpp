#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qres/errors.hpp"
#include "qres/monotones.hpp"

using namespace qres;

namespace {

DensityOperator max_coherent(int d) {
  Vector psi = Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
  return DensityOperator::pure(psi);
}

}  // namespace

TEST(Athermality, MonotoneIsDivergenceToGibbs) {
  std::vector<double> g{0.6, 0.3, 0.1};
  auto th = ResourceTheory::athermality(DensityOperator::diagonal(g));
  DensityOperator rho = random_state(3, 2, 1);
  for (double a : {0.5, 0.9, 1.0, 2.0}) {
    EXPECT_NEAR(monotone_alpha(rho, th, a).bits, sandwiched(rho, th.gibbs(), a).bits, 1e-12);
  }
  EXPECT_NEAR(monotone_fidelity(rho, th), fidelity(rho, th.gibbs()), 1e-12);
}

TEST(Athermality, GibbsValidation) {
  std::vector<double> rank_def{1.0, 0.0}, sub{0.4, 0.4};
  EXPECT_THROW(ResourceTheory::athermality(DensityOperator::diagonal(rank_def)), InvalidGibbs);
  EXPECT_THROW(ResourceTheory::athermality(DensityOperator::diagonal(sub)), InvalidGibbs);
  EXPECT_THROW(ResourceTheory::coherence().gibbs(), TheoryUnsupported);
}

TEST(Athermality, GibbsPreservingChannelIsFree) {
  std::vector<double> g{0.5, 0.3, 0.2};
  DensityOperator gibbs = DensityOperator::diagonal(g);
  auto th = ResourceTheory::athermality(gibbs);
  for (int k = 0; k < 10; ++k) {
    KrausChannel ch = gibbs_preserving_channel(gibbs, 100 + k);
    EXPECT_LT((apply_channel(gibbs, ch).matrix() - gibbs.matrix()).norm(), 1e-12);
    DensityOperator rho = random_state(3, 2, 200 + k);
    for (double a : {0.5, 0.8, 1.0, 1.5}) {
      EXPECT_LE(monotone_alpha(apply_channel(rho, ch), th, a).bits, monotone_alpha(rho, th, a).bits + 1e-9);
    }
  }
}

TEST(Coherence, DiagonalStatesAreFree) {
  std::vector<double> p{0.2, 0.5, 0.3};
  for (double a : {0.5, 0.8, 1.0, 2.0}) {
    EXPECT_NEAR(monotone_alpha(DensityOperator::diagonal(p), ResourceTheory::coherence(), a).bits, 0.0, 1e-8);
  }
}

TEST(Coherence, RelativeEntropyOfCoherenceClosedForm) {
  for (int k = 0; k < 10; ++k) {
    DensityOperator rho = random_state(3, 1 + k % 3, 300 + k);
    std::vector<double> diag;
    for (int i = 0; i < 3; ++i) diag.push_back(rho.matrix()(i, i).real());
    double expected = oracle::shannon(diag) - von_neumann_entropy(rho);
    EXPECT_NEAR(monotone_alpha(rho, ResourceTheory::coherence(), 1.0).bits, expected, 1e-8);
  }
}

TEST(Coherence, MaximallyCoherentStateValues) {
  for (int d = 2; d <= 8; ++d) {
    DensityOperator phi = max_coherent(d);
    EXPECT_NEAR(fidelity_coherence_primal(phi).value, 1.0 / d, 1e-8) << "d " << d;
    EXPECT_NEAR(monotone_alpha(phi, ResourceTheory::coherence(), 1.0).bits, std::log2(d), 1e-8);
  }
}

TEST(Coherence, PrimalEqualsDual) {
  for (int k = 0; k < 12; ++k) {
    DensityOperator rho = random_state(2 + k % 4, 1 + k % 2, 400 + k);
    double primal = fidelity_coherence_primal(rho).value;
    FidelityDual dual = fidelity_coherence_dual(rho);
    EXPECT_NEAR(primal, dual.value, 1e-5) << "state " << k;
    EXPECT_GE(dual.value, primal - 1e-9);
  }
}

TEST(Coherence, DiagonalStateHasUnitFidelity) {
  std::vector<double> p{0.6, 0.3, 0.1};
  DensityOperator rho = DensityOperator::diagonal(p);
  EXPECT_NEAR(fidelity_coherence_primal(rho).value, 1.0, 1e-10);
  EXPECT_NEAR(fidelity_coherence_dual(rho).value, 1.0, 1e-8);
}

TEST(Coherence, PrimalIsAFidelityWithAFreeState) {
  DensityOperator rho = random_state(3, 2, 5);
  FidelityPrimal p = fidelity_coherence_primal(rho);
  EXPECT_NEAR(p.value, fidelity(rho, p.argmax.to_operator()), 1e-10);
  EXPECT_NEAR(monotone_alpha(rho, ResourceTheory::coherence(), 0.5).bits, -std::log2(p.value), 1e-6);
}

TEST(Coherence, Multiplicative) {
  for (int k = 0; k < 6; ++k) {
    Multiplicativity m = multiplicativity_check(random_state(2, 1 + k % 2, 500 + k), random_state(2, 2, 600 + k));
    EXPECT_LE(std::abs(m.gap), 1e-5);
  }
  EXPECT_THROW(multiplicativity_check(random_state(4, 2, 1), random_state(5, 2, 1)), DimensionCap);
}

TEST(Coherence, FreeOperationsDoNotIncrease) {
  for (int k = 0; k < 6; ++k) {
    DensityOperator rho = random_state(3, 1 + k % 2, 700 + k);
    KrausChannel ch = dephasing_covariant_channel(3, 800 + k);
    auto th = ResourceTheory::coherence();
    for (double a : {0.5, 1.0, 2.0}) {
      EXPECT_LE(monotone_alpha(apply_channel(rho, ch), th, a).bits, monotone_alpha(rho, th, a).bits + 1e-6);
    }
  }
}

TEST(Coherence, RobustnessBoundsMonotone) {
  DensityOperator rho = random_state(2, 1, 3);
  double lr = generalized_robustness(rho, ResourceTheory::coherence()).log_robustness;
  double dmax_c = monotone_alpha(rho, ResourceTheory::coherence(), kInf).bits;
  EXPECT_NEAR(lr, dmax_c, 1e-5);
  std::vector<double> g{0.7, 0.3};
  auto th = ResourceTheory::athermality(DensityOperator::diagonal(g));
  EXPECT_NEAR(generalized_robustness(rho, th).log_robustness, dmax(rho, th.gibbs()).bits, 1e-5);
}

TEST(Entanglement, PureStateClosedForms) {
  std::vector<double> lambda{2.0 / 3, 1.0 / 6, 1.0 / 6};
  Vector psi = Vector::Zero(9);
  for (int i = 0; i < 3; ++i) psi(i * 3 + i) = std::sqrt(lambda[static_cast<size_t>(i)]);
  DensityOperator rho = DensityOperator::pure(psi);
  auto th = ResourceTheory::pure_bipartite_entanglement(3, 3);
  auto schmidt = schmidt_coefficients(rho, 3, 3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(schmidt[static_cast<size_t>(i)], lambda[static_cast<size_t>(i)], 1e-12);
  EXPECT_NEAR(monotone_alpha(rho, th, 1.0).bits, oracle::shannon(lambda), 1e-10);
  EXPECT_NEAR(monotone_fidelity(rho, th), 2.0 / 3, 1e-10);
  EXPECT_NEAR(monotone_alpha(rho, th, 0.5).bits, -std::log2(2.0 / 3), 1e-10);
  EXPECT_THROW(monotone_alpha(random_state(9, 2, 1), th, 1.0), TheoryUnsupported);
  EXPECT_THROW(monotone_alpha(rho, th, 0.7), TheoryUnsupported);
}

TEST(MonotoneCsv, Header) {
  std::ostringstream o;
  write_monotone_csv(o, {{"s", "coherence", 0.5, 1.0, Certification::kAnalyticExact}});
  EXPECT_EQ(o.str().substr(0, o.str().find('\n')), "state_id,theory,alpha,value_bits,certified");
}
