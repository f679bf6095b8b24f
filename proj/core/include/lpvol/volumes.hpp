#pragma once

// Normalized hyperplane-section volumes A_{n,p}(a) and hyperplane-projection
// volumes P_{n,q}(a) of the l_p^n unit ball:
//
//   A_{n,p}(a) = Gamma(1+1/p) (2/pi) int_0^inf prod_j gamma_p(a_j s) ds
//   P_{n,q}(a) = Gamma(1/q)   (2/pi) int_0^inf (1 - prod_j delta_q(a_j s)) / s^2 ds
//
// plus the a^{(2)} closed forms, the limiting diagonal/a^{(2)} ratios from the
// two theorems, and a scan over the diagonal family a^{(k)}.

#include <utility>
#include <vector>

#include "lpvol/direction.hpp"
#include "lpvol/kernels.hpp"

namespace lpvol::volumes {

using kernels::Kind;
using quad::QuadConfig;

struct VolumeEstimate {
  enum class Method { quadrature, closed_form, monte_carlo };

  double value = 0.0;
  double err_estimate = 0.0;
  Method method = Method::quadrature;
  int n = 0;
  double index = 0.0;  // p for sections, q for projections
};

const char* method_name(VolumeEstimate::Method m);

QuadConfig section_defaults();     // abs 1e-9 / rel 1e-8
QuadConfig projection_defaults();  // abs 1e-8 / rel 1e-8

VolumeEstimate section_volume(int n, double p, const Direction& a,
                              const QuadConfig& cfg = section_defaults());
VolumeEstimate projection_volume(int n, double q, const Direction& a,
                                 const QuadConfig& cfg = projection_defaults());

// 2^{1/2 - 1/index}; sections accept an infinite p as the cube sentinel.
double closed_form_a2(Kind kind, double index);

// lim_n A_{n,p}(a^{(n)})/A_{n,p}(a^{(2)}) for sections (p in (2, inf]),
// lim_n P_{n,q}(a^{(n)})/P_{n,q}(a^{(2)}) for projections (q in (1, 2]).
double limit_ratio(Kind kind, double index);

struct DiagonalScan {
  Kind kind;
  int n = 0;
  double index = 0.0;
  int best_k = 0;               // argmax for sections, argmin for projections
  bool tie_within_error = false;
  std::vector<std::pair<int, VolumeEstimate>> table;
};

// Evaluates the volume along a^{(k)}; k = 1..n for n <= 64, else a log-spaced
// subset always containing {1, 2, n}.  Ties are broken toward smaller k and
// flagged when within combined error bars.
DiagonalScan diagonal_scan(Kind kind, int n, double index, const QuadConfig& cfg);
DiagonalScan diagonal_scan(Kind kind, int n, double index);

}  // namespace lpvol::volumes
