#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qres/constructions.hpp"
#include "qres/errors.hpp"

using namespace qres;

TEST(Rational, ParseAndRationalize) {
  Rational r = parse_rational(" 7/10 ");
  EXPECT_EQ(r.num, 7);
  EXPECT_EQ(r.den, 10);
  EXPECT_EQ(parse_rational("3").den, 1);
  EXPECT_THROW(parse_rational("0.7"), NotRational);
  EXPECT_THROW(parse_rational("1/0"), NotRational);
  Rational a = rationalize(0.333333333, 100);
  EXPECT_EQ(a.num, 1);
  EXPECT_EQ(a.den, 3);
}

TEST(Rational, GibbsCounts) {
  RationalGibbs g = rational_gibbs(parse_rational_list("7/10,2/10,1/10"));
  EXPECT_EQ(g.total, 10);
  EXPECT_EQ(g.counts, (std::vector<long long>{7, 2, 1}));
  EXPECT_THROW(rational_gibbs(parse_rational_list("1/2,1/3")), NotRational);
  EXPECT_THROW(rational_gibbs(parse_rational_list("1/1000003,1000002/1000003")), DimensionOverflow);
}

TEST(Embedding, PreservesRenyiDivergences) {
  auto gamma = parse_rational_list("1/2,1/3,1/6");
  std::vector<double> g{0.5, 1.0 / 3, 1.0 / 6};
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    auto p = oracle::random_simplex(3, rng);
    ClassicalDist hat = embedding_channel(ClassicalDist(p), gamma);
    ClassicalDist uniform = ClassicalDist::uniform(hat.dim());
    for (double a : {0.5, 1.0, 2.0}) {
      EXPECT_NEAR(classical_renyi(hat, uniform, a).bits, oracle::renyi(p, g, a), 1e-10);
    }
  }
  KrausChannel ch = embedding_kraus(gamma);
  EXPECT_EQ(ch.out_dim(), 6);
  std::vector<double> g_vec{0.5, 1.0 / 3, 1.0 / 6};
  DensityOperator out = apply_channel(DensityOperator::diagonal(g_vec), ch);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(out.matrix()(i, i).real(), 1.0 / 6, 1e-12);
}

TEST(QutritPair, ConditionsAndGrowingGap) {
  double prev = -1.0;
  for (long long big_d : {1000LL, 10000LL, 100000LL}) {
    HardPairReport r = build_athermal_qutrit_pair(big_d, 0.1);
    EXPECT_TRUE(r.valid()) << big_d;
    EXPECT_GT(r.fid_gap, prev);
    prev = r.fid_gap;
    // Recompute the monotones from the returned states.
    double d_rho = umegaki(*r.rho, r.theory.gibbs()).bits, d_rp = umegaki(*r.rho_prime, r.theory.gibbs()).bits;
    EXPECT_NEAR(d_rho - d_rp, r.d_gap, 1e-9);
    EXPECT_NEAR(std::sqrt(fidelity(*r.rho, r.theory.gibbs())) - std::sqrt(fidelity(*r.rho_prime, r.theory.gibbs())),
                r.fid_gap, 1e-9);
  }
  EXPECT_THROW(build_athermal_qutrit_pair(50, 0.1), InvalidArgument);
}

TEST(EntanglementPair, ExplicitSchmidtVectors) {
  HardPairReport r = entanglement_pair_from_schmidt({2.0 / 3, 1.0 / 6, 1.0 / 6}, {0.0, 0.5, 0.5});
  EXPECT_GE(r.d_rho, 1.0);
  EXPECT_NEAR(r.d_rho_prime, 1.0, 1e-12);
  EXPECT_NEAR(r.d_rho, oracle::shannon({2.0 / 3, 1.0 / 6, 1.0 / 6}), 1e-12);
  EXPECT_NEAR(r.fid_gap, std::sqrt(2.0 / 3) - std::sqrt(0.5), 1e-10);
  EXPECT_TRUE(r.valid());
}

TEST(EntanglementPair, FamilyIsValid) {
  HardPairReport small = build_entanglement_pair(16, 0.5);
  EXPECT_TRUE(small.valid());
  EXPECT_TRUE(small.rho.has_value());
  double prev = 0.0;
  for (long long d : {100LL, 1000LL, 10000LL}) {
    HardPairReport r = build_entanglement_pair(d, 0.9);
    EXPECT_TRUE(r.valid()) << d;
    EXPECT_FALSE(r.rho.has_value());
    EXPECT_GE(r.fid_gap, prev);
    prev = r.fid_gap;
  }
  // d = 4, kappa = 1/2 gives lambda_max = 1/2 on both sides: no fidelity reversal.
  EXPECT_FALSE(build_entanglement_pair(4, 0.5).conditions.fidelity_reversed);
  EXPECT_THROW(build_entanglement_pair(2, 0.5), InvalidArgument);
}

TEST(CoherencePair, EqualRelativeEntropyAndFidelityWitness) {
  double mu = 1.0 - 1.0 / std::log2(3.0);
  HardPairReport r = build_coherence_pair(4, 0.5, mu);
  EXPECT_NEAR(r.d_rho, 1.0, 1e-9);
  EXPECT_NEAR(r.d_rho_prime, 1.0, 1e-9);
  EXPECT_GT(r.f_rho, 0.5);
  EXPECT_TRUE(r.valid());
  // Cauchy-Schwarz over diagonal sigma gives F = mu + (1 - mu) / 3 exactly; the square witness is only a lower bound.
  double witness = std::pow(mu + (1.0 - mu) / std::sqrt(3.0), 2);
  EXPECT_GE(r.f_rho, witness);
  EXPECT_NEAR(r.f_rho, mu + (1.0 - mu) / 3.0, 1e-8);
}

TEST(Bloch, QubitExample) {
  std::vector<double> g{0.999, 0.001};
  BlochSweep s = bloch_sweep(DensityOperator::diagonal(g), 200, 2.0);
  EXPECT_NEAR(s.theta_max, M_PI / 3.38, 0.02);
  EXPECT_NEAR(s.min_f.z, 2 * 0.713 - 1, 0.01);
  EXPECT_NEAR(s.f_gap, 0.058, 0.005);
  EXPECT_NEAR(s.pure_max.x * s.pure_max.x + s.pure_max.z * s.pure_max.z, 1.0, 1e-9);
  for (const auto& p : s.level_set) EXPECT_NEAR(p.d_bits, 2.0, 1e-6);
  // Independent closed-form fidelity at the reported points.
  DensityOperator top = bloch_state(s.pure_max.x, s.pure_max.z);
  EXPECT_NEAR(oracle::qubit_fidelity(top.matrix(), DensityOperator::diagonal(g).matrix()), s.pure_max.fidelity, 1e-9);
  EXPECT_TRUE(s.pair.valid());
}

TEST(Regions, LorenzCurveAndThermomajorization) {
  ClassicalDist g(std::vector<double>{0.5, 0.5});
  LorenzCurve c = lorenz_curve(ClassicalDist(std::vector<double>{1.0, 0.0}), g);
  EXPECT_NEAR(c.at(0.5), 1.0, 1e-14);
  EXPECT_NEAR(c.at(0.25), 0.5, 1e-14);
  EXPECT_TRUE(thermomajorizes(ClassicalDist(std::vector<double>{1.0, 0.0}), g, g).majorizes);
  EXPECT_FALSE(thermomajorizes(g, ClassicalDist(std::vector<double>{1.0, 0.0}), g).majorizes);
}

TEST(Regions, NestingAndEmbeddingOracle) {
  std::vector<double> p{2.0 / 3, 1.0 / 12, 3.0 / 12}, g{0.7, 0.2, 0.1};
  RegionGrid grid = classify_simplex_regions(ClassicalDist(p), ClassicalDist(g), 40, default_alpha_grid(32));
  EXPECT_EQ(grid.nesting_violations(), 0);
  EXPECT_GT(grid.count(RegionLabel::kFO), 0);
  int disagree = 0;
  for (const auto& pt : grid.points) {
    if (pt.fo != oracle::embedded_majorizes(p, pt.p_prime, {7, 2, 1})) ++disagree;
  }
  EXPECT_EQ(disagree, 0);
  std::ostringstream o;
  write_regions_csv(o, grid);
  EXPECT_EQ(o.str().substr(0, o.str().find('\n')), "i,j,p1,p2,p3,label,D_bits,F_value,fo,co,cco,red,red_alpha_count");
}

TEST(Regions, AlphaGridContainsOneAndInfinity) {
  auto a = default_alpha_grid(16);
  EXPECT_TRUE(std::find(a.begin(), a.end(), 1.0) != a.end());
  EXPECT_TRUE(std::isinf(a.back()));
  EXPECT_NEAR(a.front(), 0.5, 1e-12);
}
