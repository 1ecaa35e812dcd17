#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qres/divergences.hpp"
#include "qres/errors.hpp"

using namespace qres;

namespace {

std::vector<double> probs(std::mt19937_64& rng, int d) { return oracle::random_simplex(d, rng); }

}  // namespace

TEST(Sandwiched, CommutingCaseIsClassicalRenyi) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    auto p = probs(rng, 3), q = probs(rng, 3);
    auto rp = DensityOperator::diagonal(p), rq = DensityOperator::diagonal(q);
    for (double a : {0.5, 0.7, 0.99, 1.0, 1.5, 3.0, kInf}) {
      EXPECT_NEAR(sandwiched(rp, rq, a).bits, oracle::renyi(p, q, a), 1e-10) << "alpha " << a;
      EXPECT_NEAR(classical_renyi(ClassicalDist(p), ClassicalDist(q), a).bits, oracle::renyi(p, q, a), 1e-12);
    }
    EXPECT_NEAR(petz(rp, rq, 0.3).bits, oracle::renyi(p, q, 0.3), 1e-10);
  }
}

TEST(Sandwiched, AlphaTwoAndHalfMatchIteration) {
  for (int k = 0; k < 15; ++k) {
    DensityOperator rho = random_state(3, 1 + k % 3, 40 + k), sigma = random_state(3, 3, 80 + k);
    EXPECT_NEAR(sandwiched(rho, sigma, 2.0).bits, oracle::sandwiched_two(rho.matrix(), sigma.matrix()), 1e-8);
    EXPECT_NEAR(sandwiched(rho, sigma, 0.5).bits, -std::log2(fidelity(rho, sigma)), 1e-9);
    // The iteration needs an invertible argument.
    DensityOperator full = random_state(3, 3, 120 + k);
    EXPECT_NEAR(sandwiched(full, sigma, 0.5).bits, oracle::sandwiched_half(full.matrix(), sigma.matrix()), 1e-8);
  }
}

TEST(Sandwiched, MonotoneInAlpha) {
  for (int k = 0; k < 20; ++k) {
    DensityOperator rho = random_state(3, 2, 140 + k), sigma = random_state(3, 3, 180 + k);
    double prev = -kInf;
    for (double a : {0.5, 0.6, 0.8, 0.95, 1.0, 1.2, 2.0, 5.0, kInf}) {
      double v = sandwiched(rho, sigma, a).bits;
      EXPECT_GE(v, prev - 1e-9) << "alpha " << a;
      prev = v;
    }
  }
}

TEST(Sandwiched, ContinuousThroughAlphaOne) {
  DensityOperator rho = random_state(3, 3, 1), sigma = random_state(3, 3, 2);
  double d1 = umegaki(rho, sigma).bits;
  double below = sandwiched(rho, sigma, 1.0 - 1e-5).bits, above = sandwiched(rho, sigma, 1.0 + 1e-5).bits;
  EXPECT_LE(below, d1);
  EXPECT_GE(above, d1);
  // The linear term cancels in the symmetric mean.
  EXPECT_NEAR(0.5 * (below + above), d1, 1e-7);
}

TEST(Sandwiched, DataProcessing) {
  for (int k = 0; k < 20; ++k) {
    DensityOperator rho = random_state(3, 2, 240 + k), sigma = random_state(3, 3, 260 + k);
    KrausChannel ch = random_channel(3, 2, 2, 280 + k);
    for (double a : {0.5, 0.75, 1.0, 2.0}) {
      EXPECT_LE(sandwiched(apply_channel(rho, ch), apply_channel(sigma, ch), a).bits,
                sandwiched(rho, sigma, a).bits + 1e-9);
    }
  }
}

TEST(Sandwiched, AdditiveOnProducts) {
  DensityOperator r1 = random_state(2, 2, 5), s1 = random_state(2, 2, 6);
  DensityOperator r2 = random_state(2, 1, 7), s2 = random_state(2, 2, 8);
  for (double a : {0.5, 0.8, 1.0, 1.7}) {
    EXPECT_NEAR(sandwiched(tensor(r1, r2), tensor(s1, s2), a).bits,
                sandwiched(r1, s1, a).bits + sandwiched(r2, s2, a).bits, 1e-9);
  }
}

TEST(Sandwiched, SupportConventions) {
  std::vector<double> p{0.5, 0.5}, q{1.0, 0.0};
  auto rp = DensityOperator::diagonal(p), rq = DensityOperator::diagonal(q);
  EXPECT_TRUE(sandwiched(rp, rq, 2.0).infinite());
  EXPECT_TRUE(umegaki(rp, rq).infinite());
  EXPECT_TRUE(dmax(rp, rq).infinite());
  EXPECT_NEAR(sandwiched(rp, rq, 0.5).bits, -std::log2(0.5), 1e-12);
  std::vector<double> r{0.0, 1.0};
  EXPECT_TRUE(sandwiched(DensityOperator::diagonal(r), rq, 0.7).infinite());
}

TEST(Sandwiched, AlphaRangeEnforced) {
  DensityOperator rho = random_state(2, 2, 1);
  EXPECT_THROW(sandwiched(rho, rho, 0.4), AlphaOutOfRange);
  EXPECT_THROW(petz(rho, rho, 2.5), AlphaOutOfRange);
  EXPECT_THROW(q_alpha(rho, rho, 1.0), AlphaOutOfRange);
  EXPECT_THROW(sandwiched(rho, random_state(3, 3, 1), 0.7), DimensionMismatch);
}

TEST(Sandwiched, ClassicalSwapIdentity) {
  // For classical p against gamma: D_a(gamma || p) = a / (1 - a) * D_{1-a}(p || gamma).
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    auto p = probs(rng, 4), g = probs(rng, 4);
    for (double a : {0.3, 0.5, 0.8}) {
      EXPECT_NEAR(oracle::renyi(g, p, a), a / (1.0 - a) * classical_renyi(ClassicalDist(p), ClassicalDist(g), 1.0 - a).bits,
                  1e-10);
    }
  }
}

TEST(ContinuityBound, HoldsForPerturbations) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 40; ++k) {
    DensityOperator rho = random_state(3, 3, 400 + k), sigma = random_state(3, 3, 500 + k);
    DensityOperator other = random_state(3, 3, 600 + k);
    double t = 0.05 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    DensityOperator tilde(Matrix((1.0 - t) * rho.matrix() + t * other.matrix()));
    double alpha = 0.5 + 0.45 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double q = q_alpha(rho, sigma, alpha);
    double eps = gen_trace_distance(rho, tilde);
    if (eps > std::pow(q, 1.0 / alpha)) continue;
    double diff = std::abs(sandwiched(rho, sigma, alpha).bits - sandwiched(tilde, sigma, alpha).bits);
    EXPECT_LE(diff, continuity_bound(q, alpha, eps) + 1e-9);
  }
}

TEST(ContinuityBound, EdgeCases) {
  EXPECT_EQ(continuity_bound(0.5, 0.5, 0.0), 0.0);
  EXPECT_TRUE(std::isinf(continuity_bound(0.5, 0.5, 0.25)));
  EXPECT_THROW(continuity_bound(0.5, 0.5, 0.5), InvalidArgument);
  EXPECT_THROW(continuity_bound(0.5, 1.0, 0.1), AlphaOutOfRange);
}

TEST(Variance, ClassicalMatchesDirectSum) {
  std::vector<double> p{0.5, 0.25, 0.25}, q{0.25, 0.25, 0.5};
  // log ratios 1, 0, -1: mean 0.25, second moment 0.75.
  EXPECT_NEAR(classical_variance(ClassicalDist(p), ClassicalDist(q)), 0.75 - 0.0625, 1e-14);
  EXPECT_NEAR(rel_entropy_variance(DensityOperator::diagonal(p), DensityOperator::diagonal(q)), 0.6875, 1e-12);
}
