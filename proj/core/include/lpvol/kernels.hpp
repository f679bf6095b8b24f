#pragma once

// Oscillatory kernels behind the section and projection formulas:
//
//   gamma_p(s) = 1/Gamma(1+1/p) * int_0^inf cos(sr) exp(-r^p) dr
//   delta_q(s) = p/Gamma(1/q)   * int_0^inf cos(sr) r^{p-2} exp(-r^p) dr,
//
// with p = q/(q-1), together with the Taylor-series path for delta_q on
// s <= 16/5, rigorous tail envelopes, the delta'/gamma derivative relation,
// the even-p ODE check, and the first positive zero of gamma_4.

#include "lpvol/quadrature.hpp"

namespace lpvol::kernels {

using quad::QuadConfig;
using quad::QuadResult;

enum class Kind { section, projection };

struct KernelParams {
  double p = 0.0;  // section exponent, >= 1
  double q = 0.0;  // projection index, in (1, 2]

  static KernelParams for_section(double p);     // fills q with the conjugate index
  static KernelParams for_projection(double q);  // fills p = q/(q-1)
  void validate_pair() const;                    // |1/p + 1/q - 1| <= 1e-12
};

// Raw cosine transform int_0^inf cos(sr) exp(-r^p) dr (the unnormalized
// section kernel; what Lemma 2 bounds against sinc).
QuadResult cosine_transform_exp(double p, double s, const QuadConfig& cfg = {});

QuadResult gamma_kernel_result(double p, double s, const QuadConfig& cfg = {});
double gamma_kernel(double p, double s, const QuadConfig& cfg = {});

QuadResult delta_kernel_result(double q, double s, const QuadConfig& cfg = {});
double delta_kernel(double q, double s, const QuadConfig& cfg = {});

// Partial sum sum_{n=0}^{m} F_n(p, s) of the delta_q Taylor series, valid for
// s <= 16/5 and m <= 30.  For p in (2,4] and m >= 1 it is a lower bound of
// delta_q(s) on that window (the terms F_n are positive for n >= 2).
double delta_series_partial(double q, double s, int m);

// Coefficient pair of the n-th grouped series term:
//   f_{2n}   = Gamma(1+(4n-1)/p) / Gamma(1-1/p)
//   f_{2n+1} = Gamma(1+(4n+1)/p) / Gamma(1-1/p).
struct SeriesTerm {
  int n = 0;
  double f_2n = 0.0;
  double f_2n_plus_1 = 0.0;
};
SeriesTerm delta_series_coefficients(double q, int n);

// One paired series term F_n(p,s) = f_{2n} s^{4n}/(4n)! - f_{2n+1} s^{4n+2}/(4n+2)!.
double delta_series_term(double q, double s, int n);

// Tail bounds from the theorems' proofs:
//   section:     |gamma_p(s)| <= 1 / (s Gamma(1+1/p))
//   projection:  |delta_q(s)| <= (2p/Gamma(1/q)) ((1-2/p)/e)^{1-2/p} / s
double tail_envelope(Kind kind, const KernelParams& params, double s);

// Sharper power-law envelopes from repeated integration by parts, used to pick
// truncation points for n-fold kernel products:
//   |gamma_p(s)|  <=  min(1, coeff / s^power).
// power = 4 for p > 3, 3 for p > 2, 2 for p >= 1.
struct PowerEnvelope {
  int power;
  double coeff;
};
PowerEnvelope section_product_envelope(double p);
// Paper 1/s bound in the same shape (power = 1).
PowerEnvelope projection_product_envelope(double q);

// First positive zero of gamma_4 (~3.4535): 0.05-step scan then bisection.
double gamma4_first_zero(const QuadConfig& cfg = {});

// |centered-difference delta_q'(s) + (Gamma(1+1/p)/Gamma(1-1/p)) s gamma_p(s)|.
// The reported finite-difference bound is C h^2 + tol/h + 10 tol with C = 1.
double derivative_relation_residual(double q, double s, double h, const QuadConfig& cfg = {});
double derivative_relation_bound(double h, const QuadConfig& cfg = {});

// Residual of gamma_{2k}^{(2k-1)}(s) = (-1)^k (1/(2k)) s gamma_{2k}(s) by
// finite differences, k in {1, 2}.
double gamma_even_ode_residual(int k, double s, double h, const QuadConfig& cfg = {});

}  // namespace lpvol::kernels
