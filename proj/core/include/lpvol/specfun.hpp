#pragma once

// Self-contained real special functions on the positive axis: Gamma, lnGamma,
// digamma, trigamma and the Riemann zeta at integer arguments.  Everything the
// rest of the library needs, nothing more (no complex arguments, no incomplete
// gamma).  All functions are pure and thread-safe.

namespace lpvol::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct SpecFunConfig {
  double target_rel_error = 1e-12;  // must lie in (0, 1e-6]
  int series_max_terms = 10000;     // must be >= 100

  void validate() const;  // throws std::invalid_argument on violation
};

// Gamma(x) for x > 0.  Throws std::domain_error for x <= 0 and
// std::overflow_error for x > 170 (where the result leaves double range).
double gamma(double x);

// ln Gamma(x) for x > 0 (overflow-safe companion of gamma()).
double log_gamma(double x);

// Psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

// Psi'(x) for x > 0.
double trigamma(double x);

// zeta(k) for integer k >= 2.
double zeta_int(int k, const SpecFunConfig& cfg = {});

}  // namespace lpvol::specfun
