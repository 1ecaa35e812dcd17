#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qres::optim {

/// Returns f(x) and, when grad is non-null, writes the gradient.
using SimplexObjective = std::function<double(const std::vector<double>& x, std::vector<double>* grad)>;

struct SimplexOptions {
  int max_iterations = 20000;
  double decrement_tol = 1e-15;
  double kkt_tol = 1e-13;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Entropic mirror descent with backtracking; iterates stay strictly inside the simplex.
SimplexResult minimize_on_simplex(const SimplexObjective& f, std::vector<double> x0,
                                  const SimplexOptions& options = {});

using RealObjective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct LbfgsOptions {
  int max_iterations = 5000;
  int memory = 10;
  double gradient_tol = 1e-12;
  double decrement_tol = 1e-16;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
};

LbfgsResult minimize_lbfgs(const RealObjective& f, Eigen::VectorXd x0, const LbfgsOptions& options = {});

struct NelderMeadOptions {
  int max_evaluations = 4000;
  double f_tol = 1e-14;
  double x_tol = 1e-10;
  double initial_step = 0.1;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
};

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd x0,
                             const NelderMeadOptions& options = {});

/// Golden-section search for the minimum of a unimodal function on [a, b].
double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

}  // namespace qres::optim
