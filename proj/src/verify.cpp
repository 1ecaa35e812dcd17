#include "qres/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "qres/catalysis.hpp"
#include "qres/constructions.hpp"
#include "qres/divergences.hpp"
#include "qres/monotones.hpp"
#include "qres/qmat.hpp"
#include "qres/smoothing.hpp"

namespace qres {

namespace {

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  // worst <= limit passes; worst is the largest violation measure seen.
  void add(const std::string& name, double worst, double limit) {
    bool ok = std::isfinite(worst) ? worst <= limit : false;
    out_.push_back({suite_, name, ok, fmt("worst %.3e", worst) + fmt(" limit %.1e", limit)});
  }
  void flag(const std::string& name, bool ok, const std::string& detail) { out_.push_back({suite_, name, ok, detail}); }
  std::vector<InvariantResult> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::vector<InvariantResult> out_;
};

ClassicalDist random_dist(int d, std::mt19937_64& rng, double floor = 0.0) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> p(static_cast<size_t>(d));
  double s = 0.0;
  for (double& v : p) {
    v = g(rng) + floor;
    s += v;
  }
  for (double& v : p) v /= s;
  return ClassicalDist(p);
}

std::vector<InvariantResult> qmat_suite(std::uint64_t seed) {
  Recorder r("qmat");
  double eig_res = 0.0, sym = 0.0, mono = 0.0, lower = 0.0, upper = 0.0, marg = 0.0;
  for (int k = 0; k < 100; ++k) {
    int d = 2 + k % 3;
    DensityOperator rho = random_state(d, 1 + k % d, derive_seed(seed, 4 * k));
    DensityOperator sigma = random_state(d, d, derive_seed(seed, 4 * k + 1));
    KrausChannel ch = random_channel(d, d, 1 + k % 3, derive_seed(seed, 4 * k + 2));
    Eigensystem es = eigh(rho.matrix());
    Matrix rec = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    eig_res = std::max(eig_res, (rec - rho.matrix()).norm());
    double f = fidelity(rho, sigma);
    sym = std::max(sym, std::abs(f - fidelity(sigma, rho)));
    mono = std::max(mono, f - fidelity(apply_channel(rho, ch), apply_channel(sigma, ch)));
    double delta = gen_trace_distance(rho, sigma), p = purified_distance(rho, sigma);
    lower = std::max(lower, delta - p);
    upper = std::max(upper, p - std::sqrt(2.0 * delta));
    DensityOperator nu = random_state(2, 2, derive_seed(seed, 4 * k + 3));
    DensityOperator t = tensor(rho, nu);
    marg = std::max(marg, (partial_trace(t, {d, 2}, {0}).matrix() - rho.matrix()).norm());
    marg = std::max(marg, (partial_trace(t, {d, 2}, {1}).matrix() - nu.matrix()).norm());
  }
  r.add("eigh reconstruction residual", eig_res, 1e-10);
  r.add("fidelity symmetric", sym, 1e-10);
  r.add("fidelity monotone under channels", mono, 1e-9);
  r.add("trace distance <= purified distance", lower, 1e-10);
  r.add("purified distance <= sqrt(2 trace distance)", upper, 1e-10);
  r.add("partial trace of tensor recovers marginals", marg, 1e-12);
  return r.take();
}

std::vector<InvariantResult> divergences_suite(std::uint64_t seed) {
  Recorder r("divergences");
  std::mt19937_64 rng(derive_seed(seed, 7));
  double mono = 0.0, dpi = 0.0, add = 0.0, remark = 0.0, cont = -kInf;
  for (int k = 0; k < 50; ++k) {
    int d = 2 + k % 3;
    DensityOperator rho = random_state(d, 1 + k % d, derive_seed(seed, 10 * k));
    DensityOperator sigma = random_state(d, d, derive_seed(seed, 10 * k + 1));
    double prev = -kInf;
    for (int i = 0; i <= 25; ++i) {
      double v = sandwiched(rho, sigma, 0.5 + 0.1 * i).bits;
      mono = std::max(mono, prev - v);
      prev = v;
    }
    KrausChannel ch = random_channel(d, d, 2, derive_seed(seed, 10 * k + 2));
    DensityOperator er = apply_channel(rho, ch), es = apply_channel(sigma, ch);
    for (double a : {0.5, 0.75, 1.0, 2.0, kInf}) {
      dpi = std::max(dpi, sandwiched(er, es, a).bits - sandwiched(rho, sigma, a).bits);
    }
    DensityOperator nu = random_state(2, 2, derive_seed(seed, 10 * k + 3));
    DensityOperator mu = random_state(2, 2, derive_seed(seed, 10 * k + 4));
    for (double a : {0.5, 0.8, 1.0, 1.5, 3.0}) {
      double lhs = sandwiched(tensor(rho, nu), tensor(sigma, mu), a).bits;
      add = std::max(add, std::abs(lhs - sandwiched(rho, sigma, a).bits - sandwiched(nu, mu, a).bits));
    }
    ClassicalDist p = random_dist(d, rng, 0.05), g = random_dist(d, rng, 0.05);
    double a = 0.55 + 0.4 * (k % 10) / 10.0;
    double lhs = sandwiched(g.to_operator(), p.to_operator(), a).bits;
    double rhs = a / (1.0 - a) * classical_renyi(p, g, 1.0 - a).bits;
    remark = std::max(remark, std::abs(lhs - rhs));
    // continuity: perturb rho inside the trace-distance ball
    double alpha = 0.5 + 0.45 * (k % 7) / 6.0;
    double q = q_alpha(rho, sigma, alpha);
    double eps_max = std::pow(q, 1.0 / alpha);
    DensityOperator other = random_state(d, d, derive_seed(seed, 10 * k + 5));
    double w = 0.3 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    DensityOperator tilde(Matrix((1.0 - w) * rho.matrix() + w * other.matrix()));
    double delta = gen_trace_distance(rho, tilde);
    if (delta <= eps_max) {
      double eps = delta + (eps_max - delta) * 0.5;
      double diff = std::abs(sandwiched(rho, sigma, alpha).bits - sandwiched(tilde, sigma, alpha).bits);
      cont = std::max(cont, diff - continuity_bound(q, alpha, eps));
    }
  }
  r.add("sandwiched nondecreasing in alpha", mono, 1e-9);
  r.add("data processing", dpi, 1e-9);
  r.add("tensor additivity", add, 1e-9);
  r.add("classical swap identity D_a(g||p) = a/(1-a) D_{1-a}(p||g)", remark, 1e-9);
  r.add("continuity bound", cont, 1e-9);
  return r.take();
}

std::vector<InvariantResult> smoothing_suite(std::uint64_t seed) {
  Recorder r("smoothing");
  SmoothingOptions opts;
  opts.random_restarts = 6;
  opts.seed = seed;
  double member = 0.0, tr = 0.0, mono = 0.0, dp = 0.0;
  for (int k = 0; k < 4; ++k) {
    int d = 2 + k % 2;
    DensityOperator rho = random_state(d, d, derive_seed(seed, 20 * k));
    DensityOperator sigma = random_state(d, d, derive_seed(seed, 20 * k + 1));
    SmoothingSpec spec;
    spec.epsilon = 0.1;
    spec.alpha = 0.75;
    SmoothedValue v = smoothed_sandwiched(rho, sigma, spec, opts);
    member = std::max(member, purified_distance(v.optimizer, rho) - spec.epsilon);
    tr = std::max(tr, v.optimizer.trace() - 1.0);
    auto sweep = smoothed_sweep(rho, sigma, {0.05, 0.1, 0.2}, 0.75, Ball::kSubnormalizedPurified, opts);
    for (size_t i = 1; i < sweep.size(); ++i) mono = std::max(mono, sweep[i - 1].bits - sweep[i].bits);
    KrausChannel ch = random_channel(d, d, 2, derive_seed(seed, 20 * k + 2));
    dp = std::max(dp, -dp_check(rho, sigma, ch, 0.7, 0.1, opts).slack);
  }
  r.add("optimizer inside the purified ball", member, 1e-8);
  r.add("optimizer trace <= 1", tr, 1e-10);
  r.add("value nondecreasing in epsilon", mono, 1e-8);
  r.add("smoothed data processing", dp, 1e-6);
  const double alpha = 0.75, eps = 0.1;
  auto rows = appendix_b_suite(alpha, eps, opts);
  auto find = [&](const std::string& label) {
    for (const auto& row : rows) {
      if (row.label == label) return row.value_bits;
    }
    throw InvalidArgument("missing row " + label);
  };
  r.add("subnormalized ball embedding invariance", std::abs(find("(3)") - find("(4)")), 1e-6);
  double gap = find("(2)") - find("(1)");
  double expected = alpha / (1.0 - alpha) * std::log2(1.0 / (1.0 - eps * eps));
  r.flag("normalized ball embedding gap", gap > 0.0 && std::abs(gap - expected) <= 1e-6,
         fmt("gap %.9f", gap) + fmt(" expected %.9f", expected));
  return r.take();
}

std::vector<InvariantResult> monotones_suite(std::uint64_t seed) {
  Recorder r("monotones");
  double free_ops = 0.0, alpha_mono = 0.0, add = 0.0, mult = 0.0, duality = 0.0;
  const std::vector<double> alphas = {0.5, 0.75, 1.0, 1.5, 2.0};
  for (int k = 0; k < 6; ++k) {
    int d = 2 + k % 2;
    DensityOperator rho = random_state(d, d, derive_seed(seed, 30 * k));
    DensityOperator gibbs = random_state(d, d, derive_seed(seed, 30 * k + 1));
    std::vector<double> diag(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) diag[static_cast<size_t>(i)] = gibbs.matrix()(i, i).real();
    ResourceTheory ath = ResourceTheory::athermality(DensityOperator::diagonal(diag));
    ResourceTheory coh = ResourceTheory::coherence();
    KrausChannel gp = gibbs_preserving_channel(ath.gibbs(), derive_seed(seed, 30 * k + 2));
    KrausChannel dc = dephasing_covariant_channel(d, derive_seed(seed, 30 * k + 3));
    for (double a : {0.5, 0.75}) {
      free_ops = std::max(free_ops, monotone_alpha(apply_channel(rho, gp), ath, a).bits - monotone_alpha(rho, ath, a).bits);
      free_ops = std::max(free_ops, monotone_alpha(apply_channel(rho, dc), coh, a).bits - monotone_alpha(rho, coh, a).bits);
    }
    for (const ResourceTheory& th : {ath, coh}) {
      double prev = -kInf;
      for (double a : alphas) {
        double v = monotone_alpha(rho, th, a).bits;
        alpha_mono = std::max(alpha_mono, prev - v);
        prev = v;
      }
    }
    DensityOperator nu = random_state(2, 2, derive_seed(seed, 30 * k + 4));
    ResourceTheory nu_th = ResourceTheory::athermality(DensityOperator::diagonal(std::vector<double>{0.7, 0.3}));
    ResourceTheory joint = ResourceTheory::athermality(tensor(ath.gibbs(), nu_th.gibbs()));
    for (double a : alphas) {
      add = std::max(add, std::abs(monotone_alpha(tensor(rho, nu), joint, a).bits - monotone_alpha(rho, ath, a).bits -
                                   monotone_alpha(nu, nu_th, a).bits));
    }
    DensityOperator q1 = random_state(2, 2, derive_seed(seed, 30 * k + 5));
    DensityOperator q2 = random_state(2, 1 + k % 2, derive_seed(seed, 30 * k + 6));
    mult = std::max(mult, std::abs(multiplicativity_check(q1, q2).gap));
    duality = std::max(duality, std::abs(fidelity_coherence_primal(rho).value - fidelity_coherence_dual(rho).value));
  }
  r.add("monotone under free operations", free_ops, 1e-6);
  r.add("monotone nondecreasing in alpha", alpha_mono, 1e-6);
  r.add("athermality additivity", add, 1e-9);
  r.add("coherence fidelity multiplicativity", mult, 1e-5);
  r.add("fidelity of coherence primal = dual", duality, 1e-5);
  return r.take();
}

std::vector<InvariantResult> constructions_suite(std::uint64_t seed) {
  Recorder r("constructions");
  std::mt19937_64 rng(derive_seed(seed, 40));
  auto gamma = parse_rational_list("7/10,2/10,1/10");
  std::vector<double> gv;
  for (const auto& q : gamma) gv.push_back(q.value());
  ClassicalDist g(gv);
  ClassicalDist g_hat = embedding_channel(g, gamma);
  double emb = 0.0;
  for (int k = 0; k < 20; ++k) {
    ClassicalDist p = random_dist(3, rng);
    ClassicalDist p_hat = embedding_channel(p, gamma);
    for (double a : {0.5, 0.9, 1.0, 2.0, kInf}) {
      emb = std::max(emb, std::abs(classical_renyi(p, g, a).bits - classical_renyi(p_hat, g_hat, a).bits));
    }
  }
  r.add("embedding preserves classical Renyi divergences", emb, 1e-12);

  std::vector<HardPairReport> pairs = {build_athermal_qutrit_pair(1000, 0.1), build_athermal_qutrit_pair(10000, 0.1),
                                       entanglement_pair_from_schmidt({2.0 / 3, 1.0 / 6, 1.0 / 6}, {0.0, 0.5, 0.5}),
                                       build_entanglement_pair(16, 0.5),
                                       build_coherence_pair(4, 0.5, 1.0 - 1.0 / std::log2(3.0))};
  bool hyp = true;
  std::string detail;
  for (const auto& p : pairs) {
    if (!p.valid() || !p.rho || !p.rho_prime) continue;
    double a = monotone_alpha(*p.rho, p.theory, 0.5).bits;
    double b = monotone_alpha(*p.rho_prime, p.theory, 0.5).bits;
    if (!(a < b)) {
      hyp = false;
      detail += p.theory.name() + fmt(" D_1/2 %.9f", a) + fmt(" vs %.9f; ", b);
    }
  }
  r.flag("valid hard pairs satisfy the alpha = 1/2 hypothesis", hyp, detail.empty() ? "all pairs" : detail);

  ClassicalDist p({2.0 / 3, 1.0 / 12, 3.0 / 12});
  RegionGrid grid = classify_simplex_regions(p, g, 60, default_alpha_grid());
  r.add("region nesting FO in CO in CCO", grid.nesting_violations(), 0);
  int bad = 0;
  for (const auto& pt : grid.points) {
    if (pt.red && classical_renyi(p, g, 1.0).bits < pt.d_bits - 1e-9) ++bad;
  }
  r.add("RED points keep the relative entropy ordering", bad, 0);
  return r.take();
}

std::vector<InvariantResult> catalysis_suite(std::uint64_t seed) {
  Recorder r("catalysis");
  std::mt19937_64 rng(derive_seed(seed, 50));
  // Inequality chain on block catalysts with noisy xi.
  double sub = 0.0, chain = 0.0;
  int done = 0;
  SmoothingOptions opts;
  opts.random_restarts = 4;
  opts.seed = seed;
  for (int k = 0; k < 40 && done < 3; ++k) {
    ClassicalDist rho = random_dist(2, rng, 0.05), rho_p = random_dist(2, rng, 0.05), eta = random_dist(2, rng, 0.05);
    if (classical_renyi(rho, eta, 1.0).bits < classical_renyi(rho_p, eta, 1.0).bits) continue;
    const int n = 2;
    std::vector<ClassicalDist> xi;
    std::vector<double> base{1.0};
    for (int m = 1; m <= n; ++m) {
      std::vector<double> next;
      for (double x : base) {
        for (double y : rho_p.probs()) next.push_back(x * y);
      }
      base = next;
      ClassicalDist noise = random_dist(static_cast<int>(base.size()), rng);
      std::vector<double> mixed;
      for (size_t i = 0; i < base.size(); ++i) mixed.push_back(0.98 * base[i] + 0.02 * noise[static_cast<int>(i)]);
      xi.push_back(ClassicalDist(mixed));
    }
    DuanReport rep = duan_catalyst(rho, rho_p, eta, eta, n, XiMode::kSupplied, xi);
    const double alpha = 0.75;
    ResourceTheory th_s = ResourceTheory::athermality(eta.to_operator());
    ResourceTheory th_c = ResourceTheory::athermality(rep.blocks.gibbs.to_operator());
    DensityOperator nu = rep.blocks.nu.to_operator();
    DensityOperator joint_g = tensor(rep.blocks.gibbs.to_operator(), eta.to_operator());
    DensityOperator joint = tensor(nu, rho.to_operator());
    double lhs = monotone_alpha(rho.to_operator(), th_s, alpha).bits + monotone_alpha(nu, th_c, alpha).bits;
    sub = std::max(sub, sandwiched(joint, joint_g, alpha).bits - lhs);
    SmoothingSpec spec;
    spec.alpha = alpha;
    spec.epsilon = std::max(rep.p_tau, 1e-3);
    SmoothingOptions chain_opts = opts;
    chain_opts.warm_starts = {rep.blocks.target.to_operator()};
    SmoothedValue sm = smoothed_sandwiched(rep.blocks.tau.to_operator(), joint_g, spec, chain_opts);
    double target = sandwiched(rep.blocks.target.to_operator(), joint_g, alpha).bits;
    chain = std::max(chain, target - sm.bits);
    ++done;
  }
  r.add("subadditivity D(rho x nu) <= D(rho) + D(nu)", sub, 1e-9);
  r.add("smoothed output dominates D(rho' x nu)", chain, 1e-6);

  DensityOperator r1 = DensityOperator::diagonal(std::vector<double>{0.6, 0.4});
  DensityOperator s = DensityOperator::diagonal(std::vector<double>{0.5, 0.5});
  DensityOperator r2 = DensityOperator::diagonal(std::vector<double>{0.55, 0.45});
  double base = error_exponent_first_order(r1, s, r2, s);
  double scale = 0.0;
  for (int a : {2, 3}) {
    double v = error_exponent_first_order(tensor_power(r1, a), tensor_power(s, a), tensor_power(r2, a), tensor_power(s, a));
    scale = std::max(scale, std::abs(v - a * base));
  }
  r.add("first-order exponent scales with copies", scale, 1e-9);

  HardPairReport pair = build_athermal_qutrit_pair(10000, 0.1);
  double tight = 0.0;
  for (double e : {1e-1, 1e-2, 1e-3, 1e-4}) {
    FidelityBound fb = catalyst_fidelity_bound_tight(*pair.rho, *pair.rho_prime, pair.theory, e);
    CatalystBound qb = catalyst_q_bound(*pair.rho, *pair.rho_prime, pair.theory, 0.5, e);
    tight = std::max(tight, fb.tight - qb.bound);
  }
  r.add("alpha = 1/2 tight bound <= general bound", tight, 1e-12);
  BoundCurve curve = scaling_curve(*pair.rho, *pair.rho_prime, pair.theory, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6});
  double mono = 0.0;
  for (size_t i = 1; i < curve.eps_list.size(); ++i) {
    mono = std::max(mono, curve.lower_bound_bits[i - 1] - curve.lower_bound_bits[i]);
  }
  r.add("lower bound grows as eps shrinks", mono, 0.0);
  r.flag("lower <= upper along the curve", curve.sandwich_holds(), fmt("slope %.9f", curve.lower_slope));
  return r.take();
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"qmat", "divergences", "smoothing", "monotones", "constructions", "catalysis"};
}

std::vector<InvariantResult> run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "all") {
    std::vector<InvariantResult> out;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, seed);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (name == "qmat") return qmat_suite(seed);
  if (name == "divergences") return divergences_suite(seed);
  if (name == "smoothing") return smoothing_suite(seed);
  if (name == "monotones") return monotones_suite(seed);
  if (name == "constructions") return constructions_suite(seed);
  if (name == "catalysis") return catalysis_suite(seed);
  throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace qres
