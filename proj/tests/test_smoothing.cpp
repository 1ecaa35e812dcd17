#include <cmath>

#include <gtest/gtest.h>

#include "qres/errors.hpp"
#include "qres/smoothing.hpp"

using namespace qres;

TEST(AppendixB, SevenCasesMatchClosedForms) {
  auto rows = appendix_b_suite(0.75, 0.1);
  ASSERT_EQ(rows.size(), 7u);
  for (const auto& r : rows) {
    if (r.lower_bound_only) {
      EXPECT_GE(r.value_bits, r.analytic_bits - 1e-6) << r.label;
    } else {
      EXPECT_LE(r.abs_err, 1e-6) << r.label;
    }
  }
  // The subnormalized ball does not see the embedding into a larger space.
  double v3 = 0.0, v4 = 0.0;
  for (const auto& r : rows) {
    if (r.label == "(3)") v3 = r.value_bits;
    if (r.label == "(4)") v4 = r.value_bits;
  }
  EXPECT_NEAR(v3, v4, 1e-6);
}

TEST(Smoothing, OptimizerStaysInBall) {
  for (int k = 0; k < 6; ++k) {
    DensityOperator rho = random_state(2 + k % 2, 2, 10 + k), sigma = random_state(2 + k % 2, 2 + k % 2, 20 + k);
    for (Ball ball : {Ball::kSubnormalizedPurified, Ball::kNormalizedPurified, Ball::kSubnormalizedTrace}) {
      SmoothingSpec spec;
      spec.alpha = 0.7;
      spec.epsilon = 0.1;
      spec.ball = ball;
      SmoothingOptions opts;
      opts.random_restarts = 4;
      SmoothedValue v = smoothed_sandwiched(rho, sigma, spec, opts);
      EXPECT_LE(ball_distance(rho, v.optimizer, ball), 0.1 + 1e-9) << to_string(ball);
      EXPECT_GE(v.bits, sandwiched(rho, sigma, 0.7).bits - 1e-9);
      EXPECT_NEAR(v.bits, sandwiched(v.optimizer, sigma, 0.7).bits, 1e-9);
      if (ball == Ball::kNormalizedPurified) EXPECT_NEAR(v.optimizer.trace(), 1.0, 1e-9);
    }
  }
}

TEST(Smoothing, AboveOneMinimizes) {
  DensityOperator rho = random_state(2, 2, 3), sigma = random_state(2, 2, 4);
  SmoothingSpec spec;
  spec.alpha = 2.0;
  spec.epsilon = 0.1;
  SmoothedValue v = smoothed_sandwiched(rho, sigma, spec);
  EXPECT_LE(v.bits, sandwiched(rho, sigma, 2.0).bits + 1e-9);
  EXPECT_EQ(v.certified, Certification::kHeuristicUpperBound);
}

TEST(Smoothing, IncreasesWithEpsilon) {
  DensityOperator rho = random_state(3, 2, 5), sigma = random_state(3, 3, 6);
  SmoothingOptions opts;
  opts.random_restarts = 4;
  auto vals = smoothed_sweep(rho, sigma, {0.02, 0.05, 0.1, 0.2}, 0.75, Ball::kSubnormalizedPurified, opts);
  for (size_t i = 1; i < vals.size(); ++i) EXPECT_GE(vals[i].bits, vals[i - 1].bits - 1e-9);
  EXPECT_THROW(smoothed_sweep(rho, sigma, {0.2, 0.1}, 0.75), InvalidArgument);
}

TEST(Smoothing, DataProcessingCheck) {
  for (int k = 0; k < 8; ++k) {
    int d = 2 + k % 3;
    DensityOperator rho = random_state(d, 1 + k % d, 30 + k), sigma = random_state(d, d, 40 + k);
    KrausChannel ch = random_channel(d, 2, d, 50 + k);
    SmoothingOptions opts;
    opts.random_restarts = 4;
    DpCheck c = dp_check(rho, sigma, ch, k % 2 ? 0.6 : 0.9, k % 2 ? 0.05 : 0.2, opts);
    EXPECT_GE(c.slack, -1e-6) << "instance " << k;
    EXPECT_LE(c.lifted, c.lhs + 1e-9);
  }
}

TEST(Smoothing, RejectsUnsupportedInputs) {
  DensityOperator rho = random_state(2, 2, 1);
  SmoothingSpec spec;
  spec.divergence = SmoothedDivergence::kPetz;
  EXPECT_THROW(smoothed_sandwiched(rho, rho, spec), BallUnsupported);
  spec = {};
  spec.epsilon = 1.5;
  EXPECT_THROW(smoothed_sandwiched(rho, rho, spec), InvalidArgument);
  spec = {};
  spec.alpha = 0.3;
  EXPECT_THROW(smoothed_sandwiched(rho, rho, spec), AlphaOutOfRange);
  DensityOperator big = random_state(17, 2, 1);
  EXPECT_THROW(smoothed_sandwiched(big, big, SmoothingSpec{}), DimensionCap);
}

TEST(Smoothing, CoherenceMonotoneAtLeastUnsmoothed) {
  DensityOperator rho = random_state(2, 1, 9);
  SmoothingOptions opts;
  opts.random_restarts = 3;
  SmoothedValue v = smoothed_monotone(rho, ResourceTheory::coherence(), 0.75, 0.05, opts);
  EXPECT_GE(v.bits, monotone_alpha(rho, ResourceTheory::coherence(), 0.75).bits - 1e-6);
}
