#include <algorithm>
#include <cmath>
#include <numeric>

#include "qres/constructions.hpp"
#include "qres/io.hpp"
#include "qres/parallel.hpp"

namespace qres {

namespace {

constexpr double kOrderTol = 1e-9;

// a >= b up to kOrderTol; an infinite b needs an infinite a.
bool at_least(double a, double b) {
  if (std::isinf(b) && b > 0.0) return std::isinf(a) && a > 0.0;
  if (std::isinf(a) && a > 0.0) return true;
  return a >= b - kOrderTol;
}

bool strictly_below(double a, double b) { return !at_least(a, b); }

}  // namespace

double LorenzCurve::at(double t) const {
  if (x.empty()) return 0.0;
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  auto it = std::upper_bound(x.begin(), x.end(), t);
  size_t k = static_cast<size_t>(it - x.begin());
  double x0 = x[k - 1], x1 = x[k];
  if (x1 - x0 <= 0.0) return y[k];
  double w = (t - x0) / (x1 - x0);
  return y[k - 1] + w * (y[k] - y[k - 1]);
}

LorenzCurve lorenz_curve(const ClassicalDist& p, const ClassicalDist& gamma) {
  if (p.dim() != gamma.dim()) throw DimensionMismatch("p and gamma differ in length");
  for (double g : gamma.probs()) {
    if (g <= 0.0) throw SupportViolation("gamma needs full support");
  }
  std::vector<int> order(static_cast<size_t>(p.dim()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return p[a] / gamma[a] > p[b] / gamma[b]; });
  LorenzCurve c;
  c.x.push_back(0.0);
  c.y.push_back(0.0);
  double sx = 0.0, sy = 0.0;
  for (int i : order) {
    sx += gamma[i];
    sy += p[i];
    c.x.push_back(sx);
    c.y.push_back(sy);
  }
  return c;
}

ThermoResult thermomajorizes(const ClassicalDist& p, const ClassicalDist& p_prime, const ClassicalDist& gamma) {
  ThermoResult r;
  r.curve_p = lorenz_curve(p, gamma);
  r.curve_p_prime = lorenz_curve(p_prime, gamma);
  std::vector<double> xs = r.curve_p.x;
  xs.insert(xs.end(), r.curve_p_prime.x.begin(), r.curve_p_prime.x.end());
  std::sort(xs.begin(), xs.end());
  r.min_gap = kInf;
  for (double t : xs) r.min_gap = std::min(r.min_gap, r.curve_p.at(t) - r.curve_p_prime.at(t));
  r.majorizes = r.min_gap >= -1e-12;
  return r;
}

std::string to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::kFO: return "FO";
    case RegionLabel::kCOOnly: return "CO_only";
    case RegionLabel::kRED: return "RED";
    case RegionLabel::kCCOOnly: return "CCO_only";
    case RegionLabel::kOutside: return "OUTSIDE";
  }
  return "OUTSIDE";
}

int RegionGrid::count(RegionLabel label) const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [&](const RegionPoint& p) { return p.label == label; }));
}

int RegionGrid::nesting_violations() const {
  int n = 0;
  for (const auto& p : points) {
    if (p.fo && !p.co) ++n;
    if (p.co && !p.cco) ++n;
    if (p.red && (!p.cco || p.co)) ++n;
  }
  return n;
}

std::vector<double> default_alpha_grid(int n) {
  std::vector<double> out;
  const double lo = std::log(0.5), hi = std::log(40.0);
  for (int k = 0; k < n; ++k) out.push_back(std::exp(lo + (hi - lo) * k / std::max(1, n - 1)));
  out.push_back(1.0);
  out.push_back(kInf);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RegionGrid classify_simplex_regions(const ClassicalDist& p, const ClassicalDist& gamma, int grid_n,
                                    const std::vector<double>& alpha_grid) {
  if (p.dim() != 3 || gamma.dim() != 3) throw DimensionMismatch("region classifier works on three outcomes");
  if (grid_n < 1) throw InvalidArgument("grid_n must be positive");
  RegionGrid grid;
  grid.grid_n = grid_n;
  grid.alpha_grid = alpha_grid;
  for (int i = 0; i <= grid_n; ++i) {
    for (int j = 0; i + j <= grid_n; ++j) {
      RegionPoint pt;
      pt.i = i;
      pt.j = j;
      pt.p_prime = {static_cast<double>(i) / grid_n, static_cast<double>(j) / grid_n,
                    static_cast<double>(grid_n - i - j) / grid_n};
      grid.points.push_back(pt);
    }
  }
  // Values for p itself are shared by every grid point.
  std::vector<double> fwd_p, rev_p;
  for (double a : alpha_grid) {
    fwd_p.push_back(classical_renyi(p, gamma, a).bits);
    rev_p.push_back(classical_renyi(gamma, p, a).bits);
  }
  const double relent_p = classical_renyi(p, gamma, 1.0).bits;
  parallel_for(grid.points.size(), [&](size_t idx) {
    RegionPoint& pt = grid.points[idx];
    ClassicalDist q(pt.p_prime);
    pt.fo = thermomajorizes(p, q, gamma).majorizes;
    pt.d_bits = classical_renyi(q, gamma, 1.0).bits;
    double bc = 0.0;
    for (int k = 0; k < 3; ++k) bc += std::sqrt(q[k] * gamma[k]);
    pt.f_value = bc * bc;
    pt.cco = at_least(relent_p, pt.d_bits);
    bool co = true;
    for (size_t k = 0; k < alpha_grid.size(); ++k) {
      const double a = alpha_grid[k];
      const double fwd_q = classical_renyi(q, gamma, a).bits;
      const double rev_q = classical_renyi(gamma, q, a).bits;
      if (!at_least(fwd_p[k], fwd_q) || !at_least(rev_p[k], rev_q)) co = false;
      if (a >= 0.5 && a < 1.0 && strictly_below(fwd_p[k], fwd_q)) ++pt.red_alpha_count;
    }
    pt.co = co;
    pt.red = pt.cco && pt.red_alpha_count > 0;
    if (pt.fo) {
      pt.label = RegionLabel::kFO;
    } else if (pt.co) {
      pt.label = RegionLabel::kCOOnly;
    } else if (pt.red) {
      pt.label = RegionLabel::kRED;
    } else if (pt.cco) {
      pt.label = RegionLabel::kCCOOnly;
    } else {
      pt.label = RegionLabel::kOutside;
    }
  });
  return grid;
}

void write_regions_csv(std::ostream& out, const RegionGrid& grid) {
  out << "i,j,p1,p2,p3,label,D_bits,F_value,fo,co,cco,red,red_alpha_count\n";
  for (const auto& pt : grid.points) {
    out << pt.i << ',' << pt.j << ',' << format_double(pt.p_prime[0]) << ',' << format_double(pt.p_prime[1]) << ','
        << format_double(pt.p_prime[2]) << ',' << to_string(pt.label) << ',' << format_double(pt.d_bits) << ','
        << format_double(pt.f_value) << ',' << pt.fo << ',' << pt.co << ',' << pt.cco << ',' << pt.red << ','
        << pt.red_alpha_count << '\n';
  }
}

}  // namespace qres
