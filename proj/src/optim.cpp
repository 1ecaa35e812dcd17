#include "optim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace qres::optim {

SimplexResult minimize_on_simplex(const SimplexObjective& f, std::vector<double> x,
                                  const SimplexOptions& options) {
  const size_t n = x.size();
  double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v = std::max(v / total, 1e-300);
  std::vector<double> g(n), gn(n), xn(n);
  double fx = f(x, &g);
  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, std::abs(v));
  double eta = gmax > 0.0 ? 1.0 / gmax : 1.0;
  int small_steps = 0;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    double gbar = 0.0;
    for (size_t i = 0; i < n; ++i) gbar += x[i] * g[i];
    double kkt = 0.0;
    for (size_t i = 0; i < n; ++i) kkt = std::max(kkt, x[i] * std::abs(g[i] - gbar));
    if (kkt <= options.kkt_tol * std::max(1.0, std::abs(fx))) break;
    double gmin = *std::min_element(g.begin(), g.end());
    bool accepted = false;
    double fn = 0.0;
    for (int ls = 0; ls < 80; ++ls) {
      double norm = 0.0;
      for (size_t i = 0; i < n; ++i) {
        xn[i] = x[i] * std::exp(-eta * (g[i] - gmin));
        norm += xn[i];
      }
      for (double& v : xn) v = std::max(v / norm, 1e-300);
      fn = f(xn, &gn);
      double predicted = 0.0;
      for (size_t i = 0; i < n; ++i) predicted += g[i] * (x[i] - xn[i]);
      if (std::isfinite(fn) && fn <= fx - 1e-4 * std::max(0.0, predicted)) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    double delta = fx - fn;
    x.swap(xn);
    g.swap(gn);
    fx = fn;
    eta = std::min(eta * 2.0, 1e15);
    if (delta <= options.decrement_tol * std::max(1.0, std::abs(fx))) {
      if (++small_steps >= 5) break;
    } else {
      small_steps = 0;
    }
  }
  return {x, fx, it};
}

LbfgsResult minimize_lbfgs(const RealObjective& f, Eigen::VectorXd x, const LbfgsOptions& options) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd g(n), gn(n);
  double fx = f(x, &g);
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;
  int small_steps = 0;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= options.gradient_tol) break;
    Eigen::VectorXd q = g;
    std::vector<double> alphas(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alphas[static_cast<size_t>(i)] = rho_hist[static_cast<size_t>(i)] * s_hist[static_cast<size_t>(i)].dot(q);
      q -= alphas[static_cast<size_t>(i)] * y_hist[static_cast<size_t>(i)];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    else gamma = 1.0 / std::max(1.0, g.norm());
    Eigen::VectorXd r = gamma * q;
    for (size_t i = 0; i < s_hist.size(); ++i) {
      double beta = rho_hist[i] * y_hist[i].dot(r);
      r += s_hist[i] * (alphas[i] - beta);
    }
    Eigen::VectorXd dir = -r;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      dir = -g;
      slope = -g.squaredNorm();
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd xn;
    double fn = 0.0;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * dir;
      fn = f(xn, &gn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    Eigen::VectorXd s = xn - x;
    Eigen::VectorXd y = gn - g;
    double sy = s.dot(y);
    if (sy > 1e-300) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > options.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    double delta = fx - fn;
    x = xn;
    g = gn;
    fx = fn;
    if (delta <= options.decrement_tol * std::max(1.0, std::abs(fx))) {
      if (++small_steps >= 5) break;
    } else {
      small_steps = 0;
    }
  }
  return {x, fx, it};
}

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd x0,
                             const NelderMeadOptions& options) {
  const Eigen::Index n = x0.size();
  std::vector<Eigen::VectorXd> pts;
  std::vector<double> vals;
  pts.push_back(x0);
  vals.push_back(f(x0));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd p = x0;
    p(i) += options.initial_step;
    pts.push_back(p);
    vals.push_back(f(p));
  }
  int evaluations = static_cast<int>(n) + 1;
  std::vector<size_t> order(pts.size());
  while (evaluations < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> p2;
    std::vector<double> v2;
    for (size_t k : order) {
      p2.push_back(pts[k]);
      v2.push_back(vals[k]);
    }
    pts.swap(p2);
    vals.swap(v2);
    double spread = std::abs(vals.back() - vals.front());
    double size = 0.0;
    for (size_t k = 1; k < pts.size(); ++k) size = std::max(size, (pts[k] - pts[0]).lpNorm<Eigen::Infinity>());
    if (spread <= options.f_tol * std::max(1e-300, std::abs(vals.front())) && size <= options.x_tol) break;
    if (size <= options.x_tol * 1e-3) break;
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (size_t k = 0; k + 1 < pts.size(); ++k) centroid += pts[k];
    centroid /= static_cast<double>(n);
    const Eigen::VectorXd& worst = pts.back();
    Eigen::VectorXd xr = centroid + (centroid - worst);
    double fr = f(xr);
    ++evaluations;
    if (fr < vals.front()) {
      Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst);
      double fe = f(xe);
      ++evaluations;
      if (fe < fr) {
        pts.back() = xe;
        vals.back() = fe;
      } else {
        pts.back() = xr;
        vals.back() = fr;
      }
      continue;
    }
    if (fr < vals[vals.size() - 2]) {
      pts.back() = xr;
      vals.back() = fr;
      continue;
    }
    bool outside = fr < vals.back();
    Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                 : Eigen::VectorXd(centroid + 0.5 * (worst - centroid));
    double fc = f(xc);
    ++evaluations;
    if (fc < (outside ? fr : vals.back())) {
      pts.back() = xc;
      vals.back() = fc;
      continue;
    }
    for (size_t k = 1; k < pts.size(); ++k) {
      pts[k] = pts[0] + 0.5 * (pts[k] - pts[0]);
      vals[k] = f(pts[k]);
      ++evaluations;
    }
  }
  size_t best = static_cast<size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best]};
}

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (std::abs(b - a) > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qres::optim
