#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qres/divergences.hpp"
#include "qres/monotones.hpp"
#include "qres/qmat.hpp"

namespace qres {

enum class Ball { kSubnormalizedPurified, kNormalizedPurified, kSubnormalizedTrace };

std::string to_string(Ball ball);

enum class SmoothedDivergence { kSandwiched, kPetz };

struct SmoothingSpec {
  double epsilon = 0.1;
  double alpha = 0.75;
  Ball ball = Ball::kSubnormalizedPurified;
  SmoothedDivergence divergence = SmoothedDivergence::kSandwiched;
};

struct SmoothingOptions {
  int random_restarts = 20;
  int max_iterations = 5000;
  /// Descent stops after five consecutive relative decrements below this.
  double stationarity_tol = 1e-13;
  std::uint64_t seed = 0;
  std::vector<DensityOperator> warm_starts;
};

struct SmoothedValue {
  double bits = 0.0;
  DensityOperator optimizer;
  Certification certified = Certification::kHeuristicLowerBound;
};

/// Largest smoothing dimension.
inline constexpr int kSmoothingDimCap = 16;

/// Maximizes (alpha < 1) or minimizes (alpha > 1) D_alpha(rho_tilde || sigma) over the ball around rho.
SmoothedValue smoothed_sandwiched(const DensityOperator& rho, const DensityOperator& sigma, const SmoothingSpec& spec,
                                  const SmoothingOptions& options = {});

/// One value per epsilon (ascending), each warm-started from the previous optimizer.
std::vector<SmoothedValue> smoothed_sweep(const DensityOperator& rho, const DensityOperator& sigma,
                                          const std::vector<double>& epsilons, double alpha,
                                          Ball ball = Ball::kSubnormalizedPurified,
                                          const SmoothingOptions& options = {});

/// Purified distance for the purified balls, generalized trace distance for the trace ball.
double ball_distance(const DensityOperator& rho, const DensityOperator& rho_tilde, Ball ball);

/// Smoothed free-set monotone; coherence uses alternating minimization over the free state.
SmoothedValue smoothed_monotone(const DensityOperator& rho, const ResourceTheory& theory, double alpha,
                                double epsilon, const SmoothingOptions& options = {});

struct DpCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double lifted = 0.0;  // value of the rhs optimizer pulled back through the dilation
  bool certified = false;
};

/// Compares the smoothed divergence before and after the channel.
DpCheck dp_check(const DensityOperator& rho, const DensityOperator& sigma, const KrausChannel& channel, double alpha,
                 double epsilon, const SmoothingOptions& options = {});

struct AppendixBRow {
  std::string label;
  SmoothedDivergence divergence = SmoothedDivergence::kSandwiched;
  Ball ball = Ball::kSubnormalizedPurified;
  int dim = 2;
  double value_bits = 0.0;
  double analytic_bits = 0.0;
  double abs_err = 0.0;
  bool lower_bound_only = false;
  DensityOperator optimizer;
};

/// The seven qubit/qutrit smoothing comparisons between normalized and subnormalized balls.
std::vector<AppendixBRow> appendix_b_suite(double alpha = 0.75, double epsilon = 0.1,
                                           const SmoothingOptions& options = {});

void write_smoothing_csv(std::ostream& out, const std::vector<AppendixBRow>& rows, double alpha, double epsilon);

}  // namespace qres
