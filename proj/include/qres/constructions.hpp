#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qres/divergences.hpp"
#include "qres/monotones.hpp"
#include "qres/qmat.hpp"

namespace qres {

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Parses "a/b" or an integer; anything else raises NotRational.
Rational parse_rational(const std::string& text);
std::vector<Rational> parse_rational_list(const std::string& csv);

/// Best rational approximation with denominator at most max_den (continued fractions).
Rational rationalize(double x, long long max_den);

inline constexpr long long kMaxEmbeddingDim = 1000000;

struct RationalGibbs {
  std::vector<long long> counts;  // D_i
  long long total = 0;            // D
};

/// Common-denominator form of a rational Gibbs vector summing to one.
RationalGibbs rational_gibbs(const std::vector<Rational>& gamma);

/// p -> p_hat with D_i copies of p_i / D_i in block i.
ClassicalDist embedding_channel(const ClassicalDist& p, const std::vector<Rational>& gamma);

/// The same map as a channel from dimension d to dimension D.
KrausChannel embedding_kraus(const std::vector<Rational>& gamma);

struct PairConditions {
  bool relent_ordered = false;     // D(rho) >= D(rho')
  bool fidelity_reversed = false;  // F(rho) > F(rho')
};

struct HardPairReport {
  std::optional<DensityOperator> rho;
  std::optional<DensityOperator> rho_prime;
  std::optional<ClassicalDist> rho_classical;
  std::optional<ClassicalDist> rho_prime_classical;
  ResourceTheory theory = ResourceTheory::coherence();
  double d_rho = 0.0;
  double d_rho_prime = 0.0;
  double f_rho = 0.0;
  double f_rho_prime = 0.0;
  double d_gap = 0.0;    // D(rho) - D(rho')
  double fid_gap = 0.0;  // sqrt F(rho) - sqrt F(rho')
  PairConditions conditions;
  std::vector<std::pair<std::string, double>> diagnostics;

  bool valid() const { return conditions.relent_ordered && conditions.fidelity_reversed; }
  double diagnostic(const std::string& key) const;
};

/// Three-level athermality pair for total degeneracy D >= 100.
HardPairReport build_athermal_qutrit_pair(long long big_d, double eps);

/// Schmidt-vector pair for local dimension d >= 3; states are materialized for d <= 16.
HardPairReport build_entanglement_pair(long long d, double kappa);
HardPairReport entanglement_pair_from_schmidt(const std::vector<double>& lambda, const std::vector<double>& lambda_prime);

/// Block state mu + (1 - mu) Phi_{d-1} against |d1 - 1> (x) Phi_{d2}.
HardPairReport build_coherence_pair(int d, double eps, double mu);

struct BlochPoint {
  double x = 0.0;
  double z = 0.0;
  double d_bits = 0.0;
  double fidelity = 0.0;
  int band = 0;  // -1 below the level, +1 at or above
};

struct BlochSweep {
  std::vector<BlochPoint> grid;
  std::vector<BlochPoint> level_set;
  BlochPoint max_f;     // over the whole level set
  BlochPoint pure_max;  // best pure state on the level set
  BlochPoint min_f;
  double theta_max = 0.0;  // polar angle of pure_max
  double f_gap = 0.0;       // pure_max vs min_f
  double sqrt_f_gap = 0.0;
  HardPairReport pair;      // (pure_max, min_f)
};

/// Bloch state in the x-z plane.
DensityOperator bloch_state(double x, double z);

/// Scans the x-z disk against a diagonal qubit Gibbs state and extracts the D = level curve.
BlochSweep bloch_sweep(const DensityOperator& gibbs, int grid_n, double level);

void write_sweep_csv(std::ostream& out, const BlochSweep& sweep);

struct LorenzCurve {
  std::vector<double> x;
  std::vector<double> y;
  double at(double t) const;
};

LorenzCurve lorenz_curve(const ClassicalDist& p, const ClassicalDist& gamma);

struct ThermoResult {
  bool majorizes = false;
  LorenzCurve curve_p;
  LorenzCurve curve_p_prime;
  double min_gap = 0.0;  // min over breakpoints of curve_p - curve_p_prime
};

ThermoResult thermomajorizes(const ClassicalDist& p, const ClassicalDist& p_prime, const ClassicalDist& gamma);

enum class RegionLabel { kFO, kCOOnly, kRED, kCCOOnly, kOutside };

std::string to_string(RegionLabel label);

struct RegionPoint {
  int i = 0;
  int j = 0;
  std::vector<double> p_prime;
  RegionLabel label = RegionLabel::kOutside;
  bool fo = false;
  bool co = false;
  bool cco = false;
  bool red = false;
  int red_alpha_count = 0;  // alpha < 1 grid points with a strict violation
  double d_bits = 0.0;
  double f_value = 0.0;
};

struct RegionGrid {
  std::vector<RegionPoint> points;
  std::vector<double> alpha_grid;
  int grid_n = 0;
  int count(RegionLabel label) const;
  int nesting_violations() const;
};

/// 64 log-spaced points in [1/2, 40] plus 1 and inf.
std::vector<double> default_alpha_grid(int n = 64);

RegionGrid classify_simplex_regions(const ClassicalDist& p, const ClassicalDist& gamma, int grid_n,
                                    const std::vector<double>& alpha_grid);

void write_regions_csv(std::ostream& out, const RegionGrid& grid);

}  // namespace qres
