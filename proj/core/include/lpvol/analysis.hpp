#pragma once

// Critical exponents of the limiting ratio functions, theorem thresholds,
// lemma-bound verification grids, and crossover scans comparing the empirical
// minimal dimension against the sufficient dimension of the theorems.

#include <optional>
#include <vector>

#include "lpvol/volumes.hpp"

namespace lpvol::analysis {

using kernels::Kind;
using quad::QuadConfig;
using volumes::VolumeEstimate;

// Limiting ratio g and auxiliary Gamma ratios (see limit_ratio for g itself).
double g_section(double p);      // = volumes::limit_ratio(section, p), p > 2
double g_projection(double q);   // = volumes::limit_ratio(projection, q), q in (1, 2]
double f_section(double p);      // Gamma(1+3/p)/Gamma(1+1/p), p > 0
double f_projection(double q);   // Gamma(2-1/q)/Gamma(1/q), q in [1, 2]

// Analytic derivative factors from the proofs (g' and f' vanish with these):
double section_gprime_factor(double p);     // Psi(1+3/p) - Psi(1+1/p) - (2/3) ln 2
double section_fprime_factor(double p);     // Psi(1+1/p) - 3 Psi(1+3/p)
double projection_gprime_factor(double q);  // Psi(2-1/q) - Psi(1/q) - 2 ln 2

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  // |f| at the returned point
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct CriticalExponents {
  RootResult p0;              // g_section = 1 on (5, inf), bracket [26, 27]
  RootResult p1_section;      // zero of section_gprime_factor, bracket [4, 5]
  RootResult q1_projection;   // zero of projection_gprime_factor, bracket [1, 2]
  RootResult f_min_location;  // zero of section_fprime_factor, bracket [9, 10]
};

CriticalExponents critical_exponents();

// Sufficient dimension from the theorems (caller ceils):
//   section:    650/(p0 - p) for 5 <= p < p0,  65/(p - 2) for 2 < p < 5
//   projection: (32/15)/(q - 4/3) + (24/5)/(2 - q) for q in (4/3, 2)
double theorem_threshold(Kind kind, double index, double p0);

enum class LemmaId {
  lemma1a,          // f_section(p) >= 0.9429 on [3, 100]
  lemma1b,          // the three lower bounds for g_section
  lemma2,           // |sinc(s) - int cos(sr) e^{-r^p} dr| <= 0.3926
  lemma3a,          // f_projection(4/3) <= 0.7397
  lemma3b,          // g_projection(q) <= 1 - M (1/q - 1/2)(3/4 - 1/q), M = 0.86326
  corollary_delta,  // |delta_q(s)| <= 0.588 on [4/3, 2] x [48/25, 16/5]
};
const char* lemma_name(LemmaId id);

struct GridPoint {
  double x = 0.0;
  double y = 0.0;  // NaN for one-dimensional grids
};

struct LemmaReport {
  LemmaId lemma_id{};
  std::vector<GridPoint> grid;
  double worst_margin = 0.0;  // min over the grid of bound - value (signed)
  GridPoint worst_point;
  bool pass = false;  // worst_margin >= -1e-9
};

// Grid density is points per unit interval (>= 50 per the contract).
LemmaReport verify_lemma_bounds(LemmaId id, double grid_density = 50.0,
                                const QuadConfig& cfg = {});
std::vector<LemmaReport> verify_all_lemmas(double grid_density = 50.0,
                                           const QuadConfig& cfg = {});

struct CrossoverRow {
  int n = 0;
  VolumeEstimate diagonal;
  VolumeEstimate a2;
  double margin = 0.0;        // diag - a2 for sections, a2 - diag for projections
  double err_combined = 0.0;
  bool beyond_error = false;  // margin > 3 * err_combined
};

struct CrossoverReport {
  Kind kind{};
  double index = 0.0;
  double n_theorem = 0.0;
  std::optional<int> n_empirical;  // smallest tested n with beyond_error
  std::vector<CrossoverRow> per_n;
  bool theorem_verified = false;  // beyond_error for every tested n >= ceil(n_theorem)
};

CrossoverReport crossover_scan(Kind kind, double index, int n_max, const QuadConfig& cfg);
CrossoverReport crossover_scan(Kind kind, double index, int n_max);

}  // namespace lpvol::analysis
