#include "lpvol/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lpvol/specfun.hpp"

namespace lpvol::kernels {

namespace {

using specfun::gamma;
using specfun::log_gamma;

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

double conjugate_index(double q) { return q / (q - 1.0); }

// Closed-form tail: int_U^inf r^a exp(-r^p) dr <= exp(-U^p) / (p U^{p-1-a})
// for U >= 1 and a <= p - 1.  The kernels use a = 0 (section) and a = p - 2
// (projection); drop_exponent is p - 1 - a.
double weight_tail(double p, double drop_exponent, double U) {
  return std::exp(-std::pow(U, p)) / (p * std::pow(U, drop_exponent));
}

double weight_cutoff(double p, double drop_exponent, double tol) {
  double U = std::pow(std::max(1.0, std::log(2.0 / (tol * p))), 1.0 / p);
  for (int i = 0; i < 3; ++i) {
    const double denom = tol * p * std::pow(U, drop_exponent);
    U = std::pow(std::max(1.0, std::log(std::max(2.0, 1.0 / denom))), 1.0 / p);
  }
  U = std::max(U, 1.0);
  while (weight_tail(p, drop_exponent, U) > tol && U < 100.0) U *= 1.05;
  return U;
}

int oscillation_panels(double span, double s) {
  const double per_period = span * s / M_PI;  // two panels per cos period
  return std::clamp(static_cast<int>(std::ceil(std::max(4.0, per_period))), 4, 512);
}

// int_0^inf cos(sr) r^{p-2} exp(-r^p) dr (a = p-2 carries the projection
// kernel; a = 0 the section kernel).
QuadResult cosine_transform_weighted(double p, double a, double s, const QuadConfig& cfg) {
  const quad::Fn f = [p, a, s](double r) {
    if (r <= 0.0) return a == 0.0 ? 1.0 : 0.0;
    return std::cos(s * r) * std::pow(r, a) * std::exp(-std::pow(r, p));
  };

  const double tol = 0.5 * cfg.abs_tol;
  if (p <= 50.0) {
    const double drop = p - 1.0 - a;
    const double U = weight_cutoff(p, drop, tol);
    const double tail = weight_tail(p, drop, U);
    QuadResult r = quad::integrate_interval(f, 0.0, U, cfg, oscillation_panels(U, s));
    r.err_estimate += tail;
    r.converged = r.err_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(r.value));
    return r;
  }

  // Large p: exp(-r^p) is a cliff at r = 1.  Integrate [0, 1] directly and
  // substitute u = r^p on [1, inf), where the integrand is smooth in u.
  QuadResult head = quad::integrate_interval(f, 0.0, 1.0, cfg, oscillation_panels(1.0, s) + 8);
  const double V = std::max(2.0, std::log(2.0 / tol) + 4.0);
  const quad::Fn g = [p, a, s](double u) {
    const double r = std::pow(u, 1.0 / p);
    return std::cos(s * r) * std::pow(u, (a + 1.0) / p - 1.0) * std::exp(-u) / p;
  };
  QuadResult cliff = quad::integrate_interval(g, 1.0, V, cfg, 8);
  QuadResult out;
  out.value = head.value + cliff.value;
  out.err_estimate = head.err_estimate + cliff.err_estimate + std::exp(-V) / p;
  out.evals = head.evals + cliff.evals;
  out.converged = out.err_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(out.value));
  return out;
}

double log_factorial(int n) { return log_gamma(static_cast<double>(n) + 1.0); }

}  // namespace

KernelParams KernelParams::for_section(double p) {
  require(p >= 1.0, "KernelParams: p must be >= 1");
  KernelParams kp;
  kp.p = p;
  kp.q = p > 1.0 ? conjugate_index(p) : std::numeric_limits<double>::infinity();
  return kp;
}

KernelParams KernelParams::for_projection(double q) {
  require(q > 1.0 && q <= 2.0, "KernelParams: q must lie in (1, 2]");
  KernelParams kp;
  kp.q = q;
  kp.p = conjugate_index(q);
  return kp;
}

void KernelParams::validate_pair() const {
  if (std::fabs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw std::domain_error("KernelParams: p and q are not conjugate");
  }
}

QuadResult cosine_transform_exp(double p, double s, const QuadConfig& cfg) {
  require(p >= 1.0, "cosine_transform_exp: p must be >= 1");
  require(s >= 0.0, "cosine_transform_exp: s must be >= 0");
  return cosine_transform_weighted(p, 0.0, s, cfg);
}

QuadResult gamma_kernel_result(double p, double s, const QuadConfig& cfg) {
  require(p >= 1.0, "gamma_kernel: p must be >= 1");
  require(s >= 0.0, "gamma_kernel: s must be >= 0");
  if (s == 0.0) return {1.0, 0.0, 0, true};  // normalization
  QuadResult r = cosine_transform_weighted(p, 0.0, s, cfg);
  const double norm = 1.0 / gamma(1.0 + 1.0 / p);
  r.value *= norm;
  r.err_estimate *= norm;
  return r;
}

double gamma_kernel(double p, double s, const QuadConfig& cfg) {
  return gamma_kernel_result(p, s, cfg).value;
}

QuadResult delta_kernel_result(double q, double s, const QuadConfig& cfg) {
  require(q > 1.0 && q <= 2.0, "delta_kernel: q must lie in (1, 2]");
  require(s >= 0.0, "delta_kernel: s must be >= 0");
  if (s == 0.0) return {1.0, 0.0, 0, true};
  const double p = conjugate_index(q);
  QuadResult r = cosine_transform_weighted(p, p - 2.0, s, cfg);
  const double norm = p / gamma(1.0 / q);
  r.value *= norm;
  r.err_estimate *= norm;
  return r;
}

double delta_kernel(double q, double s, const QuadConfig& cfg) {
  return delta_kernel_result(q, s, cfg).value;
}

SeriesTerm delta_series_coefficients(double q, int n) {
  require(q > 1.0 && q <= 2.0, "delta_series_coefficients: q must lie in (1, 2]");
  require(n >= 0 && n <= 30, "delta_series_coefficients: n must lie in [0, 30]");
  const double p = conjugate_index(q);
  const double lg0 = log_gamma(1.0 - 1.0 / p);
  SeriesTerm t;
  t.n = n;
  t.f_2n = std::exp(log_gamma(1.0 + (4.0 * n - 1.0) / p) - lg0);
  t.f_2n_plus_1 = std::exp(log_gamma(1.0 + (4.0 * n + 1.0) / p) - lg0);
  return t;
}

double delta_series_term(double q, double s, int n) {
  require(q > 1.0 && q <= 2.0, "delta_series_term: q must lie in (1, 2]");
  require(s >= 0.0 && s <= 16.0 / 5.0 + 1e-12, "delta_series_term: s must lie in [0, 16/5]");
  require(n >= 0 && n <= 30, "delta_series_term: n must lie in [0, 30]");
  if (s == 0.0) return n == 0 ? 1.0 : 0.0;
  const double p = conjugate_index(q);
  const double lg0 = log_gamma(1.0 - 1.0 / p);
  const double ls = std::log(s);
  const double even = std::exp(log_gamma(1.0 + (4.0 * n - 1.0) / p) - lg0 -
                               log_factorial(4 * n) + 4.0 * n * ls);
  const double odd = std::exp(log_gamma(1.0 + (4.0 * n + 1.0) / p) - lg0 -
                              log_factorial(4 * n + 2) + (4.0 * n + 2.0) * ls);
  return even - odd;
}

double delta_series_partial(double q, double s, int m) {
  require(m >= 0 && m <= 30, "delta_series_partial: m must lie in [0, 30]");
  double sum = 0.0;
  for (int n = 0; n <= m; ++n) sum += delta_series_term(q, s, n);
  return sum;
}

double tail_envelope(Kind kind, const KernelParams& params, double s) {
  require(s > 0.0, "tail_envelope: s must be positive");
  if (kind == Kind::section) {
    require(params.p >= 1.0, "tail_envelope: p must be >= 1");
    return 1.0 / (s * gamma(1.0 + 1.0 / params.p));
  }
  const double q = params.q;
  require(q > 1.0 && q <= 2.0, "tail_envelope: q must lie in (1, 2]");
  const double p = conjugate_index(q);
  const double e = 1.0 - 2.0 / p;
  const double mid = e <= 0.0 ? 1.0 : std::pow(e / M_E, e);
  return (2.0 * p / gamma(1.0 / q)) * mid / s;
}

PowerEnvelope section_product_envelope(double p) {
  require(p >= 1.0, "section_product_envelope: p must be >= 1");
  const double g1 = gamma(1.0 + 1.0 / p);
  if (p > 3.0) {
    return {4, p * (p - 1.0) * (26.0 * p - 40.0) * gamma(2.0 - 3.0 / p) / g1};
  }
  if (p > 2.0) {
    return {3, 6.0 * p * (p - 1.0) * gamma(2.0 - 2.0 / p) / g1};
  }
  return {2, 2.0 * p * gamma(2.0 - 1.0 / p) / g1};
}

PowerEnvelope projection_product_envelope(double q) {
  KernelParams kp = KernelParams::for_projection(q);
  return {1, tail_envelope(Kind::projection, kp, 1.0)};
}

double gamma4_first_zero(const QuadConfig& cfg) {
  QuadConfig tight = cfg;
  tight.abs_tol = std::min(cfg.abs_tol, 1e-12);
  tight.rel_tol = std::min(cfg.rel_tol, 1e-10);
  auto f = [&tight](double s) { return gamma_kernel(4.0, s, tight); };

  double lo = 0.05, flo = f(lo);
  double hi = 0.0, fhi = 0.0;
  bool bracketed = false;
  for (double s = 0.10; s <= 6.0; s += 0.05) {
    fhi = f(s);
    if (flo > 0.0 && fhi <= 0.0) {
      hi = s;
      bracketed = true;
      break;
    }
    lo = s;
    flo = fhi;
  }
  if (!bracketed) throw std::runtime_error("gamma4_first_zero: no sign change found");

  for (int i = 0; i < 60 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double derivative_relation_residual(double q, double s, double h, const QuadConfig& cfg) {
  require(q > 1.0 && q <= 2.0, "derivative_relation_residual: q must lie in (1, 2]");
  require(s > 0.0, "derivative_relation_residual: s must be positive");
  require(h >= 1e-6 && h <= 1e-3, "derivative_relation_residual: h must lie in [1e-6, 1e-3]");
  QuadConfig tight = cfg;
  tight.abs_tol = std::min(cfg.abs_tol, 1e-12);
  tight.rel_tol = std::min(cfg.rel_tol, 1e-10);
  const double p = conjugate_index(q);
  const double fd = (delta_kernel(q, s + h, tight) - delta_kernel(q, s - h, tight)) / (2.0 * h);
  const double ratio = gamma(1.0 + 1.0 / p) / gamma(1.0 - 1.0 / p);
  return std::fabs(fd + ratio * s * gamma_kernel(p, s, tight));
}

double derivative_relation_bound(double h, const QuadConfig& cfg) {
  const double tol = std::min(cfg.abs_tol, 1e-12);
  return h * h + tol / h + 10.0 * tol;  // C = 1 covers |delta'''| on the tested windows
}

double gamma_even_ode_residual(int k, double s, double h, const QuadConfig& cfg) {
  require(k == 1 || k == 2, "gamma_even_ode_residual: k must be 1 or 2");
  require(s >= 0.5 && s <= 3.0, "gamma_even_ode_residual: s must lie in [0.5, 3]");
  require(h > 0.0 && h <= 0.1, "gamma_even_ode_residual: h must lie in (0, 0.1]");
  QuadConfig tight = cfg;
  tight.abs_tol = std::min(cfg.abs_tol, 1e-12);
  tight.rel_tol = std::min(cfg.rel_tol, 1e-10);
  const double p = 2.0 * k;
  auto g = [&](double x) { return gamma_kernel(p, x, tight); };
  const double rhs = (k == 1 ? -1.0 : 1.0) * (1.0 / (2.0 * k)) * s * g(s);
  if (k == 1) {
    const double fd = (g(s + h) - g(s - h)) / (2.0 * h);
    return std::fabs(fd - rhs);
  }
  // Five-point centered third derivative.
  const double fd =
      (g(s + 2.0 * h) - 2.0 * g(s + h) + 2.0 * g(s - h) - g(s - 2.0 * h)) / (2.0 * h * h * h);
  return std::fabs(fd - rhs);
}

}  // namespace lpvol::kernels
