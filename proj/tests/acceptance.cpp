// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "qres/catalysis.hpp"
#include "qres/constructions.hpp"
#include "qres/divergences.hpp"
#include "qres/monotones.hpp"
#include "qres/smoothing.hpp"

using namespace qres;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += "[fail: " + what + "] ";
    }
  }
  void note(const std::string& s) { detail += s + " "; }
};

std::string f(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

DensityOperator diag(const std::vector<double>& p) { return DensityOperator::diagonal(p); }

Outcome smoothing_closed_forms() {
  Outcome o;
  auto rows = appendix_b_suite(0.75, 0.1);
  double worst = 0.0, v3 = NAN, v4 = NAN;
  for (const auto& r : rows) {
    worst = std::max(worst, std::abs(r.value_bits - r.analytic_bits));
    if (r.label == "(3)") v3 = r.value_bits;
    if (r.label == "(4)") v4 = r.value_bits;
  }
  o.require(rows.size() == 7, "seven cases");
  o.require(worst <= 1e-6, "closed-form error");
  o.require(std::abs(v3 - v4) <= 1e-6, "embedding invariance");
  o.note("max_err=" + f("%.2e", worst) + " |(3)-(4)|=" + f("%.2e", std::abs(v3 - v4)));
  return o;
}

Outcome qubit_example() {
  Outcome o;
  BlochSweep s = bloch_sweep(diag({0.999, 0.001}), 400, 2.0);
  double r2 = s.pure_max.x * s.pure_max.x + s.pure_max.z * s.pure_max.z;
  double p0 = 0.5 * (1.0 + s.min_f.z), p1 = 0.5 * (1.0 - s.min_f.z);
  o.require(std::abs(r2 - 1.0) < 1e-9, "max state pure");
  o.require(std::abs(s.theta_max - M_PI / 3.38) <= 0.02, "theta");
  o.require(std::abs(s.min_f.x) < 1e-9, "min state diagonal");
  o.require(std::abs(p0 - 0.713) <= 0.005 && std::abs(p1 - 0.287) <= 0.005, "min state entries");
  o.require(std::abs(s.f_gap - 0.058) <= 0.005, "F gap");
  o.note("theta=" + f("%.5f", s.theta_max) + " min=diag(" + f("%.5f", p0) + "," + f("%.5f", p1) + ") Fgap=" +
         f("%.5f", s.f_gap));
  return o;
}

Outcome coherence_duality() {
  Outcome o;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    int d = 2 + k % 4;
    DensityOperator rho = random_state(d, 1 + (k / 4) % d, derive_seed(31, static_cast<std::uint64_t>(k)));
    worst = std::max(worst, std::abs(fidelity_coherence_primal(rho).value - fidelity_coherence_dual(rho).value));
  }
  double phi_err = 0.0;
  for (int d = 2; d <= 8; ++d) {
    Vector psi = Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
    phi_err = std::max(phi_err, std::abs(fidelity_coherence_primal(DensityOperator::pure(psi)).value - 1.0 / d));
  }
  double mult = 0.0;
  for (int k = 0; k < 20; ++k) {
    DensityOperator a = random_state(2, 1 + k % 2, derive_seed(37, 2 * k));
    DensityOperator b = random_state(2, 1 + (k / 2) % 2, derive_seed(37, 2 * k + 1));
    mult = std::max(mult, std::abs(multiplicativity_check(a, b).gap));
  }
  o.require(worst <= 1e-5, "primal vs dual");
  o.require(phi_err <= 1e-8, "maximally coherent");
  o.require(mult <= 1e-5, "multiplicativity");
  o.note("duality=" + f("%.2e", worst) + " phi=" + f("%.2e", phi_err) + " mult=" + f("%.2e", mult));
  return o;
}

Outcome hard_pairs() {
  Outcome o;
  HardPairReport q = build_athermal_qutrit_pair(10000, 0.1);
  o.require(q.d_rho >= q.d_rho_prime && q.fid_gap > 0.0, "qutrit conditions");
  double g3 = build_athermal_qutrit_pair(1000, 0.1).fid_gap, g5 = build_athermal_qutrit_pair(100000, 0.1).fid_gap;
  o.require(g3 < q.fid_gap && q.fid_gap < g5, "qutrit gap increasing");
  HardPairReport e = entanglement_pair_from_schmidt({2.0 / 3, 1.0 / 6, 1.0 / 6}, {0.0, 0.5, 0.5});
  double h = oracle::shannon({2.0 / 3, 1.0 / 6, 1.0 / 6}), hp = oracle::shannon({0.0, 0.5, 0.5});
  o.require(std::abs(e.d_rho - h) < 1e-10 && h >= 1.0 && std::abs(e.d_rho_prime - 1.0) < 1e-10 && hp == 1.0,
            "entanglement entropies");
  double target = std::sqrt(2.0 / 3) - std::sqrt(0.5);
  o.require(std::abs(e.fid_gap - target) <= 1e-10, "entanglement gap");
  HardPairReport c = build_coherence_pair(4, 0.5, 1.0 - 1.0 / std::log2(3.0));
  o.require(std::abs(c.d_rho - 1.0) <= 1e-9 && std::abs(c.d_rho_prime - 1.0) <= 1e-9, "coherence D = 1");
  o.require(c.f_rho > 0.5, "coherence F > 1/2");
  o.note("qutrit gaps=" + f("%.4f", g3) + "," + f("%.4f", q.fid_gap) + "," + f("%.4f", g5) + " ent_err=" +
         f("%.1e", std::abs(e.fid_gap - target)) + " coh D=" + f("%.12f", c.d_rho) + "," + f("%.12f", c.d_rho_prime) +
         " F=" + f("%.4f", c.f_rho));
  return o;
}

Outcome data_processing() {
  Outcome o;
  const double alphas[] = {0.5, 0.7, 0.9};
  const double epss[] = {0.05, 0.2};
  double worst = INFINITY;
  int certified = 0;
  SmoothingOptions opts;
  opts.random_restarts = 6;
  for (int k = 0; k < 100; ++k) {
    int d = 2 + k % 3;
    int d_out = 2 + (k / 3) % 3;
    std::uint64_t s = derive_seed(53, static_cast<std::uint64_t>(k));
    DensityOperator rho = random_state(d, 1 + k % d, derive_seed(s, 0));
    DensityOperator sigma = random_state(d, d, derive_seed(s, 1));
    KrausChannel ch = random_channel(d, d_out, d, derive_seed(s, 2));
    opts.seed = derive_seed(s, 3);
    DpCheck c = dp_check(rho, sigma, ch, alphas[k % 3], epss[(k / 3) % 2], opts);
    worst = std::min(worst, c.slack);
    certified += c.certified ? 1 : 0;
  }
  o.require(worst >= -1e-6, "slack");
  o.note("min_slack=" + f("%.3e", worst) + " certified=" + std::to_string(certified) + "/100");
  return o;
}

Outcome continuity() {
  Outcome o;
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = INFINITY;
  int n = 0, attempts = 0;
  while (n < 100 && attempts < 10000) {
    ++attempts;
    int d = 2 + attempts % 3;
    DensityOperator rho = random_state(d, 1 + attempts % d, derive_seed(73, 3 * attempts));
    DensityOperator sigma = random_state(d, d, derive_seed(73, 3 * attempts + 1));
    DensityOperator other = random_state(d, 1 + (attempts / 3) % d, derive_seed(73, 3 * attempts + 2));
    double t = 0.2 * u(rng);
    double shrink = 1.0 - 0.1 * u(rng);
    DensityOperator tilde(Matrix(shrink * ((1.0 - t) * rho.matrix() + t * other.matrix())));
    double alpha = 0.5 + 0.49 * u(rng);
    double q = q_alpha(rho, sigma, alpha);
    double delta = gen_trace_distance(rho, tilde);
    double eps = delta;  // the tightest admissible radius
    if (delta > std::pow(q, 1.0 / alpha)) continue;
    double diff = std::abs(sandwiched(rho, sigma, alpha).bits - sandwiched(tilde, sigma, alpha).bits);
    worst = std::min(worst, continuity_bound(q, alpha, eps) - diff);
    ++n;
  }
  o.require(n == 100, "100 admissible pairs");
  o.require(worst >= -1e-9, "slack");
  o.note("pairs=" + std::to_string(n) + " min_slack=" + f("%.3e", worst));
  return o;
}

Outcome catalyst_bounds() {
  Outcome o;
  HardPairReport r = build_athermal_qutrit_pair(10000, 0.1);
  std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  BoundCurve c = scaling_curve(*r.rho, *r.rho_prime, r.theory, eps, 0.5);
  std::vector<double> x, y;
  for (size_t i = 0; i < eps.size(); ++i) {
    if (c.lower_bound_bits[i] > 0.0) {
      x.push_back(std::log2(1.0 / eps[i]));
      y.push_back(c.lower_bound_bits[i]);
    }
  }
  oracle::Fit fit = oracle::affine_fit(x, y);
  const double alpha = 0.5;
  o.require(x.size() >= 3, "enough unclamped points");
  o.require(std::abs(fit.slope - alpha / (1.0 - alpha)) <= 1e-9 && fit.residual <= 1e-9, "affine lower curve");
  bool dominates = true;
  for (size_t i = 0; i < eps.size(); ++i) dominates = dominates && c.upper_bound_bits[i] >= c.lower_bound_bits[i];
  o.require(dominates, "upper dominates lower");
  bool tight = true;
  double q = std::sqrt(fidelity(*r.rho, r.theory.gibbs())), qp = std::sqrt(fidelity(*r.rho_prime, r.theory.gibbs()));
  for (double e : {0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-8}) {
    FidelityBound fb = fidelity_bound_from_values(q * q, qp * qp, e);
    CatalystBound gb = catalyst_q_bound_from_values(q, qp, 0.5, e);
    tight = tight && fb.tight <= gb.bound + 1e-15;
  }
  for (size_t i = 0; i < eps.size(); ++i) tight = tight && c.tight_lower_bits[i] >= c.lower_bound_bits[i] - 1e-12;
  o.require(tight, "tight <= general");
  o.note("slope=" + f("%.10f", fit.slope) + " residual=" + f("%.1e", fit.residual) + " gamma=" +
         f("%.5g", c.gamma_used) + " upper[1e-6]=" + f("%.1f", c.upper_bound_bits.back()) + " lower[1e-6]=" +
         f("%.3f", c.lower_bound_bits.back()));
  return o;
}

Outcome duan() {
  Outcome o;
  std::mt19937_64 rng(83);
  double fe_slack = INFINITY, err_slack = INFINITY;
  int pairs = 0;
  while (pairs < 10) {
    auto r = oracle::random_simplex(2, rng), rp = oracle::random_simplex(2, rng), e = oracle::random_simplex(2, rng);
    if (oracle::renyi(r, e, 1.0) < oracle::renyi(rp, e, 1.0)) continue;
    ClassicalDist cr(r), crp(rp), ce(e);
    for (int n = 2; n <= 4; ++n) {
      DuanReport rep = duan_catalyst(cr, crp, ce, ce, n, XiMode::kExactSurrogate);
      fe_slack = std::min(fe_slack, rep.bound_bits - rep.d_nu_bits);
      double noise = 0.01 + 0.2 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      std::vector<ClassicalDist> xi;
      std::vector<double> base{1.0};
      for (int m = 1; m <= n; ++m) {
        std::vector<double> next;
        for (double a : base) {
          for (double b : rp) next.push_back(a * b);
        }
        base = next;
        auto w = oracle::random_simplex(static_cast<int>(base.size()), rng, 0.0);
        std::vector<double> mixed;
        for (size_t i = 0; i < base.size(); ++i) mixed.push_back((1.0 - noise) * base[i] + noise * w[i]);
        xi.push_back(ClassicalDist(mixed));
      }
      DuanReport sup = duan_catalyst(cr, crp, ce, ce, n, XiMode::kSupplied, xi);
      err_slack = std::min(err_slack, 2.0 * sup.eps0 - sup.p_tau);
    }
    ++pairs;
  }
  o.require(fe_slack >= -1e-10, "free energy");
  o.require(err_slack >= -1e-10, "error");
  o.note("min D slack=" + f("%.3e", fe_slack) + " min 2eps0-P=" + f("%.3e", err_slack));
  return o;
}

Outcome exponent() {
  Outcome o;
  auto exact = [](double x) { return DensityOperator::diagonal(std::vector<double>{x, 1.0 - x}); };
  DensityOperator s = exact(0.5);
  double scale_err = 0.0;
  for (double p2 : {0.58, 0.55}) {
    double base = error_exponent_first_order(exact(0.6), s, exact(p2), s);
    for (int a : {2, 3}) {
      double v = error_exponent_first_order(tensor_power(exact(0.6), a), tensor_power(s, a), tensor_power(exact(p2), a),
                                            tensor_power(s, a));
      scale_err = std::max(scale_err, std::abs(v - a * base));
    }
  }
  o.require(scale_err <= 1e-9, "copy scaling");

  // Pairs with shrinking gap: rho1 fixed, rho2 chosen so that Delta D hits the target.
  auto d_of = [&](double x) { return umegaki(exact(x), s).bits; };
  const double x1 = 0.7;
  auto second_for_gap = [&](double gap) {
    double lo = 0.5, hi = x1, target = d_of(x1) - gap;
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      (d_of(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  double worst_dom = INFINITY;
  std::vector<double> gaps{0.05, 0.025, 0.0125, 0.00625}, fo, opt;
  for (double g : gaps) {
    double x2 = second_for_gap(g);
    double a = error_exponent_first_order(exact(x1), s, exact(x2), s);
    double b = error_exponent_optimized(exact(x1), s, exact(x2), s).gamma;
    fo.push_back(a);
    opt.push_back(b);
    worst_dom = std::min(worst_dom, b - a);
  }
  o.require(worst_dom >= -1e-6, "optimized >= first order");
  std::string ratios;
  bool trend = true;
  for (size_t i = 1; i < gaps.size(); ++i) {
    double r_fo = fo[i - 1] / fo[i], r_opt = opt[i - 1] / opt[i];
    trend = trend && std::abs(r_fo / 4.0 - 1.0) <= 0.2 && std::abs(r_opt / 4.0 - 1.0) <= 0.2;
    ratios += f("%.3f", r_opt) + "/" + f("%.3f", r_fo) + " ";
  }
  o.require(trend, "quadratic trend");
  o.note("scale_err=" + f("%.1e", scale_err) + " min(opt-fo)=" + f("%.2e", worst_dom) + " halving ratios opt/fo=" +
         ratios);
  return o;
}

Outcome regions() {
  Outcome o;
  std::vector<double> p{2.0 / 3, 1.0 / 12, 3.0 / 12}, g{0.7, 0.2, 0.1};
  RegionGrid grid = classify_simplex_regions(ClassicalDist(p), ClassicalDist(g), 200, default_alpha_grid());
  int red_bad = 0, disagree = 0;
  for (const auto& pt : grid.points) {
    if (pt.red && (!pt.cco || pt.co)) ++red_bad;
    if (pt.fo != oracle::embedded_majorizes(p, pt.p_prime, {7, 2, 1})) ++disagree;
  }
  o.require(grid.points.size() == 201u * 202u / 2u, "grid size");
  o.require(grid.nesting_violations() == 0, "nesting");
  o.require(red_bad == 0, "RED inside CCO minus CO");
  o.require(disagree == 0, "embedding oracle");
  o.note("points=" + std::to_string(grid.points.size()) + " FO=" + std::to_string(grid.count(RegionLabel::kFO)) +
         " CO_only=" + std::to_string(grid.count(RegionLabel::kCOOnly)) + " RED=" +
         std::to_string(grid.count(RegionLabel::kRED)) + " CCO_only=" + std::to_string(grid.count(RegionLabel::kCCOOnly)) +
         " oracle_disagreements=" + std::to_string(disagree));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // <= 0: no runtime limit
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "smoothing closed forms", 30, smoothing_closed_forms},
      {2, "qubit sweep example", 120, qubit_example},
      {3, "fidelity of coherence duality", 120, coherence_duality},
      {4, "hard-pair constructions", 60, hard_pairs},
      {5, "smoothed data processing", 0, data_processing},
      {6, "continuity bound", 0, continuity},
      {7, "catalyst bounds and sandwich", 0, catalyst_bounds},
      {8, "block catalyst", 0, duan},
      {9, "error exponent", 0, exponent},
      {10, "region data", 0, regions},
  };
  int failures = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s) o.require(false, "runtime");
    failures += o.ok ? 0 : 1;
    std::printf("%s criterion %d (%s): %s time=%.2fs\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
