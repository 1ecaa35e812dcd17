#include <algorithm>
#include <cmath>
#include <functional>

#include "optim.hpp"
#include "qres/constructions.hpp"
#include "qres/io.hpp"

namespace qres {

namespace {

struct QubitGibbs {
  double g0 = 0.5;
  double g1 = 0.5;
};

// D(rho || gamma) in bits for the Bloch vector (x, 0, z).
double qubit_relent(const QubitGibbs& g, double x, double z) {
  double r = std::min(1.0, std::hypot(x, z));
  double lp = 0.5 * (1.0 + r), lm = 0.5 * (1.0 - r);
  double neg_entropy = 0.0;
  if (lp > 0.0) neg_entropy += lp * std::log2(lp);
  if (lm > 0.0) neg_entropy += lm * std::log2(lm);
  double rho00 = 0.5 * (1.0 + z), rho11 = 0.5 * (1.0 - z);
  return neg_entropy - rho00 * std::log2(g.g0) - rho11 * std::log2(g.g1);
}

// F(rho, gamma) = Tr A + 2 sqrt(det A) with A = sqrt(gamma) rho sqrt(gamma).
double qubit_fidelity(const QubitGibbs& g, double x, double z) {
  double r2 = std::min(1.0, x * x + z * z);
  double tr = g.g0 * 0.5 * (1.0 + z) + g.g1 * 0.5 * (1.0 - z);
  double det = g.g0 * g.g1 * 0.25 * (1.0 - r2);
  return tr + 2.0 * std::sqrt(std::max(0.0, det));
}

BlochPoint make_point(const QubitGibbs& g, double x, double z, double level) {
  BlochPoint p;
  p.x = x;
  p.z = z;
  p.d_bits = qubit_relent(g, x, z);
  p.fidelity = qubit_fidelity(g, x, z);
  p.band = p.d_bits >= level ? 1 : -1;
  return p;
}

double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (std::abs(fm) <= 1e-13 || b - a < 1e-16) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// All radii r in [0, 1] on the ray at angle phi where D = level.
std::vector<double> ray_crossings(const QubitGibbs& g, double phi, double level, int samples) {
  const double sx = std::sin(phi), cz = std::cos(phi);
  auto f = [&](double r) { return qubit_relent(g, r * sx, r * cz) - level; };
  std::vector<double> out;
  double prev_r = 0.0, prev = f(0.0);
  for (int k = 1; k <= samples; ++k) {
    double r = static_cast<double>(k) / samples;
    double cur = f(r);
    if (cur == 0.0) {
      out.push_back(r);
    } else if ((prev < 0.0) != (cur < 0.0) && prev != 0.0) {
      out.push_back(bisect(f, prev_r, r));
    }
    prev_r = r;
    prev = cur;
  }
  return out;
}

}  // namespace

DensityOperator bloch_state(double x, double z) {
  Matrix m(2, 2);
  m << Complex(0.5 * (1.0 + z), 0.0), Complex(0.5 * x, 0.0), Complex(0.5 * x, 0.0), Complex(0.5 * (1.0 - z), 0.0);
  return DensityOperator(m);
}

BlochSweep bloch_sweep(const DensityOperator& gibbs, int grid_n, double level) {
  if (gibbs.dim() != 2 || !gibbs.is_diagonal()) throw InvalidGibbs("sweep needs a diagonal qubit Gibbs state");
  ResourceTheory theory = ResourceTheory::athermality(gibbs);
  if (grid_n < 2) throw InvalidArgument("grid_n must be at least 2");
  QubitGibbs g{gibbs.matrix()(0, 0).real(), gibbs.matrix()(1, 1).real()};
  BlochSweep out;
  for (int i = 0; i < grid_n; ++i) {
    double z = -1.0 + 2.0 * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      double x = -1.0 + 2.0 * j / (grid_n - 1);
      if (x * x + z * z <= 1.0 + 1e-12) out.grid.push_back(make_point(g, x, z, level));
    }
  }
  // The picture is mirror symmetric in x, so the level set is traced on x >= 0.
  const int n_rays = 4 * grid_n;
  const int samples = std::max(grid_n, 200);
  for (int k = 0; k <= n_rays; ++k) {
    double phi = M_PI * k / n_rays;
    for (double r : ray_crossings(g, phi, level, samples)) {
      out.level_set.push_back(make_point(g, r * std::sin(phi), r * std::cos(phi), level));
    }
  }
  auto pure_f = [&](double theta) { return qubit_relent(g, std::sin(theta), std::cos(theta)) - level; };
  const int n_circle = 4 * grid_n;
  std::vector<BlochPoint> pure_points;
  double prev_t = 0.0, prev = pure_f(0.0);
  for (int k = 1; k <= n_circle; ++k) {
    double t = M_PI * k / n_circle;
    double cur = pure_f(t);
    if ((prev < 0.0) != (cur < 0.0)) {
      double theta = bisect(pure_f, prev_t, t);
      pure_points.push_back(make_point(g, std::sin(theta), std::cos(theta), level));
      out.level_set.push_back(pure_points.back());
    }
    prev_t = t;
    prev = cur;
  }
  if (out.level_set.empty()) throw NoFeasiblePoint("level set is empty on the Bloch disk");

  auto best_of = [&](bool maximize) {
    BlochPoint best = out.level_set.front();
    for (const auto& p : out.level_set) {
      if (maximize ? p.fidelity > best.fidelity : p.fidelity < best.fidelity) best = p;
    }
    return best;
  };
  // Refine along the ray angle, following the crossing closest to the current radius.
  auto refine = [&](BlochPoint best, bool maximize) {
    double r0 = std::hypot(best.x, best.z);
    if (r0 >= 1.0 - 1e-12) return best;
    double phi0 = std::atan2(best.x, best.z);
    double half = 4.0 * M_PI / n_rays;
    auto crossing = [&](double phi) {
      std::vector<double> rs = ray_crossings(g, phi, level, samples);
      if (rs.empty()) return BlochPoint{0.0, 0.0, 0.0, maximize ? -kInf : kInf, 0};
      double r = *std::min_element(rs.begin(), rs.end(),
                                   [&](double a, double b) { return std::abs(a - r0) < std::abs(b - r0); });
      return make_point(g, r * std::sin(phi), r * std::cos(phi), level);
    };
    double phi = optim::golden_section_min(
        [&](double ph) {
          double f = crossing(ph).fidelity;
          return maximize ? -f : f;
        },
        phi0 - half, phi0 + half, 1e-12);
    BlochPoint cand = crossing(phi);
    if (cand.x < 0.0) cand.x = -cand.x;
    // F is even in x, so it is flat to rounding near the z axis; snap onto the axis within 1e-12.
    for (double axis : {0.0, M_PI}) {
      if (std::abs(phi0 - axis) > half) continue;
      BlochPoint a = crossing(axis);
      a.x = 0.0;
      double worse = maximize ? cand.fidelity - a.fidelity : a.fidelity - cand.fidelity;
      if (std::isfinite(a.fidelity) && worse <= 1e-12) cand = a;
    }
    bool better = maximize ? cand.fidelity > best.fidelity : cand.fidelity < best.fidelity;
    return better || std::abs(cand.fidelity - best.fidelity) <= 1e-12 ? cand : best;
  };
  out.max_f = refine(best_of(true), true);
  out.min_f = refine(best_of(false), false);
  if (pure_points.empty()) throw NoFeasiblePoint("level set misses the pure states");
  out.pure_max = *std::max_element(pure_points.begin(), pure_points.end(),
                                   [](const BlochPoint& a, const BlochPoint& b) { return a.fidelity < b.fidelity; });
  out.theta_max = std::atan2(out.pure_max.x, out.pure_max.z);
  out.f_gap = out.pure_max.fidelity - out.min_f.fidelity;
  out.sqrt_f_gap = std::sqrt(out.pure_max.fidelity) - std::sqrt(out.min_f.fidelity);

  HardPairReport& pair = out.pair;
  pair.theory = theory;
  pair.rho = bloch_state(out.pure_max.x, out.pure_max.z);
  pair.rho_prime = bloch_state(out.min_f.x, out.min_f.z);
  pair.d_rho = out.pure_max.d_bits;
  pair.d_rho_prime = out.min_f.d_bits;
  pair.f_rho = out.pure_max.fidelity;
  pair.f_rho_prime = out.min_f.fidelity;
  pair.d_gap = pair.d_rho - pair.d_rho_prime;
  pair.fid_gap = out.sqrt_f_gap;
  pair.conditions.relent_ordered = pair.d_gap >= -1e-9;
  pair.conditions.fidelity_reversed = pair.f_rho > pair.f_rho_prime;
  pair.diagnostics = {{"theta_max", out.theta_max}, {"f_gap", out.f_gap}, {"level", level},
                      {"max_f_overall", out.max_f.fidelity}, {"max_f_radius", std::hypot(out.max_f.x, out.max_f.z)}};
  return out;
}

void write_sweep_csv(std::ostream& out, const BlochSweep& sweep) {
  out << "kind,x,z,theta,D_bits,sqrtF\n";
  auto row = [&](const char* kind, const BlochPoint& p) {
    out << kind << ',' << format_double(p.x) << ',' << format_double(p.z) << ','
        << format_double(std::atan2(p.x, p.z)) << ',' << format_double(p.d_bits) << ','
        << format_double(std::sqrt(p.fidelity)) << '\n';
  };
  row("pure_max", sweep.pure_max);
  row("max_f", sweep.max_f);
  row("min_f", sweep.min_f);
  for (const auto& p : sweep.level_set) row("level", p);
  for (const auto& p : sweep.grid) row("grid", p);
}

}  // namespace qres
