#include "qres/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qres/catalysis.hpp"
#include "qres/constructions.hpp"
#include "qres/io.hpp"
#include "qres/monotones.hpp"
#include "qres/smoothing.hpp"
#include "qres/verify.hpp"

namespace qres::cli {

namespace {

std::vector<std::string> split(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

std::vector<double> doubles(const std::string& csv) {
  std::vector<double> out;
  for (const auto& s : split(csv)) out.push_back(to_double(s));
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

// a/b entries; decimals only when max_den > 0.
std::vector<Rational> rationals(const std::string& csv, long long max_den) {
  std::vector<Rational> out;
  for (const auto& s : split(csv)) {
    try {
      out.push_back(parse_rational(s));
    } catch (const NotRational&) {
      if (max_den <= 0) throw;
      out.push_back(rationalize(to_double(s), max_den));
    }
  }
  if (out.empty()) throw NotRational("empty list");
  return out;
}

std::vector<double> values(const std::vector<Rational>& r) {
  std::vector<double> out;
  for (const auto& q : r) out.push_back(q.value());
  return out;
}

DensityOperator read_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return density_from_json(nlohmann::json::parse(in));
}

DensityOperator state_from(const std::string& file, const std::string& list, const char* what) {
  if (!file.empty()) return read_state(file);
  if (!list.empty()) return DensityOperator::diagonal(doubles(list));
  throw InvalidArgument(std::string("missing ") + what);
}

nlohmann::json cell(const std::string& s) {
  if (s.empty()) return s;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() + s.size() && std::isfinite(v)) return v;
  return s;
}

nlohmann::json csv_to_json(const std::string& csv) {
  std::stringstream ss(csv);
  std::string line;
  std::vector<std::string> keys;
  nlohmann::json rows = nlohmann::json::array();
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (keys.empty()) {
      keys = fields;
      continue;
    }
    nlohmann::json row = nlohmann::json::object();
    for (size_t i = 0; i < keys.size() && i < fields.size(); ++i) row[keys[i]] = cell(fields[i]);
    rows.push_back(row);
  }
  return rows;
}

struct Params {
  std::vector<std::pair<std::string, std::string>> items;
};

Params collect(const CLI::App* sub, std::uint64_t seed) {
  Params p;
  p.items.emplace_back("subcommand", sub->get_name());
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name() == "-h") continue;
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    std::string value;
    if (!opt->results().empty()) {
      for (size_t i = 0; i < opt->results().size(); ++i) value += (i ? ";" : "") + opt->results()[i];
      if (opt->get_type_size() == 0) value = "true";
    } else {
      value = opt->get_default_str();
    }
    if (value.empty()) continue;
    p.items.emplace_back(name, value);
  }
  p.items.emplace_back("seed", std::to_string(seed));
  return p;
}

void emit(std::ostream& out, const std::string& format, const Params& params, const std::string& csv) {
  if (format == "json") {
    nlohmann::ordered_json meta;
    meta["version"] = QRES_VERSION;
    meta["git"] = QRES_GIT_HASH;
    for (const auto& [k, v] : params.items) meta[k] = v;
    nlohmann::ordered_json doc;
    doc["meta"] = meta;
    doc["rows"] = csv_to_json(csv);
    out << doc.dump(2) << '\n';
    return;
  }
  out << "# " << version_string();
  for (const auto& [k, v] : params.items) out << ' ' << k << '=' << v;
  out << '\n' << csv;
}

const char* bool01(bool b) { return b ? "1" : "0"; }

void pair_row(std::ostream& o, const std::string& kind, const HardPairReport& r) {
  o << kind << ',' << format_double(r.d_rho) << ',' << format_double(r.d_rho_prime) << ',' << format_double(r.f_rho)
    << ',' << format_double(r.f_rho_prime) << ',' << format_double(r.d_gap) << ',' << format_double(r.fid_gap) << ','
    << bool01(r.conditions.relent_ordered) << ',' << bool01(r.conditions.fidelity_reversed) << '\n';
}

}  // namespace

std::string version_string() { return std::string("qres ") + QRES_VERSION + " (" + QRES_GIT_HASH + ")"; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Catalysis and resource-monotone toolkit", "qres"};
  app.require_subcommand(1);
  std::string format = "csv", output;
  std::uint64_t seed = 0;
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output,-o", output, "write to this file instead of stdout");
  app.add_option("--seed", seed, "base seed")->capture_default_str();
  app.set_version_flag("--version", version_string());

  std::function<std::string()> job;

  // divergence
  auto* div = app.add_subcommand("divergence", "pointwise divergences");
  std::string d_p, d_q, d_rho, d_sigma, d_alpha = "0.5,1,2", d_kind = "sandwiched";
  div->add_option("--p", d_p, "diagonal of rho");
  div->add_option("--q", d_q, "diagonal of sigma");
  div->add_option("--rho", d_rho, "JSON file with rho");
  div->add_option("--sigma", d_sigma, "JSON file with sigma");
  div->add_option("--alpha", d_alpha, "comma list; inf allowed")->capture_default_str();
  div->add_option("--kind", d_kind)->check(CLI::IsMember({"sandwiched", "petz", "umegaki", "dmax"}))->capture_default_str();
  div->callback([&] {
    job = [&] {
      DensityOperator rho = state_from(d_rho, d_p, "--rho or --p");
      DensityOperator sigma = state_from(d_sigma, d_q, "--sigma or --q");
      std::ostringstream o;
      o << "kind,alpha,bits\n";
      std::vector<double> alphas = d_kind == "umegaki" || d_kind == "dmax" ? std::vector<double>{0.0} : doubles(d_alpha);
      for (double a : alphas) {
        DivergenceValue v;
        if (d_kind == "sandwiched") v = sandwiched(rho, sigma, a);
        if (d_kind == "petz") v = petz(rho, sigma, a);
        if (d_kind == "umegaki") v = umegaki(rho, sigma);
        if (d_kind == "dmax") v = dmax(rho, sigma);
        o << d_kind << ',' << format_double(v.alpha) << ',' << format_double(v.bits) << '\n';
      }
      return o.str();
    };
  });

  // monotone
  auto* mon = app.add_subcommand("monotone", "free-set monotones");
  std::string m_theory = "coherence", m_rho, m_p, m_gibbs, m_alpha = "0.5,1,2", m_id = "input", m_dims;
  mon->add_option("--theory", m_theory)->check(CLI::IsMember({"athermality", "coherence", "entanglement"}))->capture_default_str();
  mon->add_option("--rho", m_rho, "JSON file with the state");
  mon->add_option("--p", m_p, "diagonal state");
  mon->add_option("--gibbs", m_gibbs, "Gibbs diagonal for athermality");
  mon->add_option("--dims", m_dims, "dA,dB for entanglement");
  mon->add_option("--alpha", m_alpha)->capture_default_str();
  mon->add_option("--state-id", m_id)->capture_default_str();
  mon->callback([&] {
    job = [&] {
      DensityOperator rho = state_from(m_rho, m_p, "--rho or --p");
      ResourceTheory th = ResourceTheory::coherence();
      if (m_theory == "athermality") {
        if (m_gibbs.empty()) throw InvalidArgument("athermality needs --gibbs");
        th = ResourceTheory::athermality(DensityOperator::diagonal(doubles(m_gibbs)));
      } else if (m_theory == "entanglement") {
        std::vector<double> dims = doubles(m_dims.empty() ? "0" : m_dims);
        if (dims.size() != 2) throw InvalidArgument("entanglement needs --dims dA,dB");
        th = ResourceTheory::pure_bipartite_entanglement(static_cast<int>(dims[0]), static_cast<int>(dims[1]));
      }
      std::vector<MonotoneRow> rows;
      for (double a : doubles(m_alpha)) {
        Certification c = Certification::kAnalyticExact;
        if (th.kind() == ResourceTheory::Kind::kCoherence && !rho.is_diagonal() && std::abs(a - 1.0) > kAlphaOneWindow) {
          c = Certification::kHeuristicUpperBound;  // numerical minimum over diagonal states
        }
        rows.push_back({m_id, th.name(), a, monotone_alpha(rho, th, a).bits, c});
      }
      std::ostringstream o;
      write_monotone_csv(o, rows);
      return o.str();
    };
  });

  // smooth
  auto* smo = app.add_subcommand("smooth", "smoothed sandwiched divergences");
  bool s_appendix = false;
  std::string s_p, s_q, s_rho, s_sigma, s_ball = "subnormalized_purified";
  double s_alpha = 0.75, s_eps = 0.1;
  int s_restarts = 20;
  smo->add_flag("--appendix-b", s_appendix, "run the seven-case normalized/subnormalized comparison");
  smo->add_option("--p", s_p);
  smo->add_option("--q", s_q);
  smo->add_option("--rho", s_rho);
  smo->add_option("--sigma", s_sigma);
  smo->add_option("--alpha", s_alpha)->capture_default_str();
  smo->add_option("--eps", s_eps)->capture_default_str();
  smo->add_option("--restarts", s_restarts)->capture_default_str();
  smo->add_option("--ball", s_ball)
      ->check(CLI::IsMember({"subnormalized_purified", "normalized_purified", "subnormalized_trace"}))
      ->capture_default_str();
  smo->callback([&] {
    job = [&] {
      SmoothingOptions opts;
      opts.seed = seed;
      opts.random_restarts = s_restarts;
      std::ostringstream o;
      if (s_appendix) {
        write_smoothing_csv(o, appendix_b_suite(s_alpha, s_eps, opts), s_alpha, s_eps);
        return o.str();
      }
      DensityOperator rho = state_from(s_rho, s_p, "--rho or --p");
      DensityOperator sigma = state_from(s_sigma, s_q, "--sigma or --q");
      SmoothingSpec spec;
      spec.alpha = s_alpha;
      spec.epsilon = s_eps;
      spec.ball = s_ball == "normalized_purified" ? Ball::kNormalizedPurified
                  : s_ball == "subnormalized_trace" ? Ball::kSubnormalizedTrace
                                                    : Ball::kSubnormalizedPurified;
      SmoothedValue v = smoothed_sandwiched(rho, sigma, spec, opts);
      o << "alpha,eps,ball,value_bits,certified,distance\n";
      o << format_double(s_alpha) << ',' << format_double(s_eps) << ',' << to_string(spec.ball) << ','
        << format_double(v.bits) << ',' << to_string(v.certified) << ','
        << format_double(ball_distance(rho, v.optimizer, spec.ball)) << '\n';
      return o.str();
    };
  });

  // regions
  auto* reg = app.add_subcommand("regions", "simplex region classifier");
  std::string r_p = "2/3,1/12,3/12", r_gamma = "7/10,2/10,1/10";
  int r_grid = 200, r_alpha_n = 64;
  long long r_rat = 0;
  reg->add_option("--p", r_p, "rational entries a/b")->capture_default_str();
  reg->add_option("--gamma", r_gamma, "rational entries a/b")->capture_default_str();
  reg->add_option("--grid", r_grid)->capture_default_str()->check(CLI::PositiveNumber);
  reg->add_option("--alpha-points", r_alpha_n, "log-spaced alpha points in [1/2, 40]")->capture_default_str();
  reg->add_option("--rationalize", r_rat, "accept decimals, rounded to this max denominator");
  reg->callback([&] {
    job = [&] {
      ClassicalDist p(values(rationals(r_p, r_rat)));
      auto gamma_r = rationals(r_gamma, r_rat);
      rational_gibbs(gamma_r);
      ClassicalDist g(values(gamma_r));
      RegionGrid grid = classify_simplex_regions(p, g, r_grid, default_alpha_grid(r_alpha_n));
      std::ostringstream o;
      write_regions_csv(o, grid);
      return o.str();
    };
  });

  // sweep
  auto* swp = app.add_subcommand("sweep", "qubit Bloch-plane sweep");
  std::string w_gamma = "0.999,0.001";
  double w_level = 2.0;
  int w_grid = 400;
  bool w_level_only = false;
  swp->add_option("--gamma", w_gamma)->capture_default_str();
  swp->add_option("--level", w_level)->capture_default_str();
  swp->add_option("--grid", w_grid)->capture_default_str();
  swp->add_flag("--level-only", w_level_only, "omit the grid rows");
  swp->callback([&] {
    job = [&] {
      BlochSweep s = bloch_sweep(DensityOperator::diagonal(doubles(w_gamma)), w_grid, w_level);
      if (w_level_only) s.grid.clear();
      std::ostringstream o;
      write_sweep_csv(o, s);
      return o.str();
    };
  });

  // pairs
  auto* prs = app.add_subcommand("pairs", "hard-to-transform pairs");
  std::string p_kind = "all";
  long long p_big_d = 10000;
  double p_eps = 0.1, p_kappa = 0.9, p_coh_eps = 0.5, p_mu = 1.0 - 1.0 / std::log2(3.0);
  long long p_ent_d = 0;
  int p_coh_d = 4;
  prs->add_option("--kind", p_kind)->check(CLI::IsMember({"all", "qutrit", "entanglement", "coherence", "qubit"}))->capture_default_str();
  prs->add_option("--D", p_big_d, "qutrit total degeneracy")->capture_default_str();
  prs->add_option("--eps-param", p_eps, "qutrit exponent")->capture_default_str();
  prs->add_option("--ent-d", p_ent_d, "entanglement dimension; 0 uses the explicit d = 3 pair")->capture_default_str();
  prs->add_option("--kappa", p_kappa)->capture_default_str();
  prs->add_option("--coh-d", p_coh_d)->capture_default_str();
  prs->add_option("--coh-eps", p_coh_eps)->capture_default_str();
  prs->add_option("--mu", p_mu)->capture_default_str();
  prs->callback([&] {
    job = [&] {
      std::ostringstream o;
      o << "kind,D_rho,D_rho_prime,F_rho,F_rho_prime,D_gap,sqrtF_gap,relent_ordered,fidelity_reversed\n";
      bool all = p_kind == "all";
      if (all || p_kind == "qutrit") pair_row(o, "qutrit", build_athermal_qutrit_pair(p_big_d, p_eps));
      if (all || p_kind == "entanglement") {
        pair_row(o, "entanglement",
                 p_ent_d == 0 ? entanglement_pair_from_schmidt({2.0 / 3, 1.0 / 6, 1.0 / 6}, {0.0, 0.5, 0.5})
                              : build_entanglement_pair(p_ent_d, p_kappa));
      }
      if (all || p_kind == "coherence") pair_row(o, "coherence", build_coherence_pair(p_coh_d, p_coh_eps, p_mu));
      if (all || p_kind == "qubit") {
        pair_row(o, "qubit", bloch_sweep(DensityOperator::diagonal(std::vector<double>{0.999, 0.001}), 400, 2.0).pair);
      }
      return o.str();
    };
  });

  // bound
  auto* bnd = app.add_subcommand("bound", "catalyst lower and upper curves");
  std::string b_pair = "qutrit", b_eps = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6";
  long long b_big_d = 10000;
  double b_eps_param = 0.1, b_alpha = 0.5;
  bnd->add_option("--pair", b_pair)->check(CLI::IsMember({"qutrit", "entanglement", "coherence", "qubit"}))->capture_default_str();
  bnd->add_option("--D", b_big_d)->capture_default_str();
  bnd->add_option("--eps-param", b_eps_param)->capture_default_str();
  bnd->add_option("--alpha", b_alpha)->capture_default_str();
  bnd->add_option("--eps-list", b_eps, "decreasing")->capture_default_str();
  bnd->callback([&] {
    job = [&] {
      HardPairReport pr;
      if (b_pair == "qutrit") pr = build_athermal_qutrit_pair(b_big_d, b_eps_param);
      if (b_pair == "entanglement") pr = entanglement_pair_from_schmidt({2.0 / 3, 1.0 / 6, 1.0 / 6}, {0.0, 0.5, 0.5});
      if (b_pair == "coherence") pr = build_coherence_pair(4, 0.5, 1.0 - 1.0 / std::log2(3.0));
      if (b_pair == "qubit") pr = bloch_sweep(DensityOperator::diagonal(std::vector<double>{0.999, 0.001}), 400, 2.0).pair;
      BoundCurve c = scaling_curve(*pr.rho, *pr.rho_prime, pr.theory, doubles(b_eps), b_alpha);
      std::ostringstream o;
      write_bound_csv(o, c);
      return o.str();
    };
  });

  // exponent
  auto* exo = app.add_subcommand("exponent", "error exponent for pairwise transformation");
  std::string e_r1 = "0.6,0.4", e_s1 = "0.5,0.5", e_r2 = "0.55,0.45", e_s2 = "0.5,0.5";
  exo->add_option("--rho1", e_r1)->capture_default_str();
  exo->add_option("--sigma1", e_s1)->capture_default_str();
  exo->add_option("--rho2", e_r2)->capture_default_str();
  exo->add_option("--sigma2", e_s2)->capture_default_str();
  exo->callback([&] {
    job = [&] {
      auto diag = [](const std::string& s) { return DensityOperator::diagonal(doubles(s)); };
      DensityOperator r1 = diag(e_r1), s1 = diag(e_s1), r2 = diag(e_r2), s2 = diag(e_s2);
      double first = error_exponent_first_order(r1, s1, r2, s2);
      OptimizedExponent opt = error_exponent_optimized(r1, s1, r2, s2);
      std::ostringstream o;
      o << "delta_D,first_order,optimized,delta1,delta2,kappa\n";
      o << format_double(umegaki(r1, s1).bits - umegaki(r2, s2).bits) << ',' << format_double(first) << ','
        << format_double(opt.gamma) << ',' << format_double(opt.delta1) << ',' << format_double(opt.delta2) << ','
        << format_double(opt.kappa) << '\n';
      return o.str();
    };
  });

  // catalyst
  auto* cat = app.add_subcommand("catalyst", "block catalyst construction");
  std::string c_rho = "0.9,0.1", c_rho_p = "0.6,0.4", c_eta = "0.5,0.5", c_eta_p;
  int c_n = 3;
  double c_noise = 0.0;
  cat->add_option("--rho", c_rho)->capture_default_str();
  cat->add_option("--rho-prime", c_rho_p)->capture_default_str();
  cat->add_option("--eta", c_eta)->capture_default_str();
  cat->add_option("--eta-prime", c_eta_p, "defaults to eta");
  cat->add_option("-n", c_n)->capture_default_str();
  cat->add_option("--xi-noise", c_noise, "mix each xi_k with the uniform distribution at this weight")->capture_default_str();
  cat->callback([&] {
    job = [&] {
      ClassicalDist rho(doubles(c_rho)), rho_p(doubles(c_rho_p)), eta(doubles(c_eta));
      ClassicalDist eta_p(doubles(c_eta_p.empty() ? c_eta : c_eta_p));
      DuanReport rep;
      if (c_noise > 0.0) {
        if (c_noise > 1.0) throw InvalidArgument("--xi-noise must lie in [0, 1]");
        std::vector<ClassicalDist> xi;
        std::vector<double> base{1.0};
        for (int m = 1; m <= c_n; ++m) {
          std::vector<double> next;
          for (double x : base) {
            for (double y : rho_p.probs()) next.push_back(x * y);
          }
          base = next;
          std::vector<double> mixed;
          for (double v : base) mixed.push_back((1.0 - c_noise) * v + c_noise / static_cast<double>(base.size()));
          xi.push_back(ClassicalDist(mixed));
        }
        rep = duan_catalyst(rho, rho_p, eta, eta_p, c_n, XiMode::kSupplied, xi);
      } else {
        rep = duan_catalyst(rho, rho_p, eta, eta_p, c_n, XiMode::kExactSurrogate);
      }
      std::ostringstream o;
      o << "n,nu_dim,tau_dim,D_bits,bound_bits,eps0,P_tau,marginal_error,free_energy_ok,error_ok\n";
      o << c_n << ',' << rep.blocks.nu.dim() << ',' << rep.blocks.tau.dim() << ',' << format_double(rep.d_nu_bits) << ','
        << format_double(rep.bound_bits) << ',' << format_double(rep.eps0) << ',' << format_double(rep.p_tau) << ','
        << format_double(rep.marginal_error) << ',' << bool01(rep.free_energy_ok()) << ',' << bool01(rep.error_ok())
        << '\n';
      return o.str();
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "invariant suite");
  std::string v_suite = "all";
  std::vector<InvariantResult> v_results;
  ver->add_option("--suite", v_suite)->capture_default_str();
  ver->callback([&] {
    job = [&] {
      v_results = run_suite(v_suite, seed);
      std::ostringstream o;
      o << "suite,invariant,passed,detail\n";
      for (const auto& r : v_results) o << r.suite << ',' << r.invariant << ',' << bool01(r.passed) << ',' << r.detail << '\n';
      return o.str();
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  if (sub == cat && app.get_option("--format")->results().empty()) format = "json";
  std::string body;
  try {
    body = job();
  } catch (const InvalidArgument& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotRational& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    err << "usage: bad JSON input: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* dest = &out;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      err << "usage: cannot write " << output << '\n';
      return kExitUsage;
    }
    dest = &file;
  }
  emit(*dest, format, collect(sub, seed), body);

  int failed = 0;
  for (const auto& r : v_results) {
    if (!r.passed) {
      err << "invariant failed: " << r.suite << ": " << r.invariant << " (" << r.detail << ")\n";
      ++failed;
    }
  }
  return failed ? kExitNumerical : 0;
}

}  // namespace qres::cli
