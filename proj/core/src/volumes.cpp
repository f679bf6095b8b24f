#include "lpvol/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lpvol/specfun.hpp"
#include "parallel_for.hpp"

namespace lpvol::volumes {

namespace {

using kernels::PowerEnvelope;
using quad::Envelope;
using quad::QuadResult;
using specfun::gamma;
using specfun::log_gamma;

// Per-eval kernel accuracy inside the product integrands, and the constant
// assumed when folding that error into the reported estimate.
constexpr double kInnerAbsTol = 1e-14;
constexpr double kInnerAssumed = 2e-14;

QuadConfig inner_config() {
  QuadConfig c;
  c.abs_tol = kInnerAbsTol;
  c.rel_tol = 1e-13;
  return c;
}

// t^k with the power form only on the positive branch, sign tracked otherwise
// (gamma_p takes negative values for p > 2).
double pow_signed(double t, int k) {
  if (k == 1) return t;
  if (t == 0.0) return 0.0;
  if (t > 0.0) return std::exp(k * std::log(t));
  const double mag = std::exp(k * std::log(-t));
  return (k % 2 == 0) ? mag : -mag;
}

void check_direction(int n, const Direction& a, const char* fn) {
  if (n < 2) throw std::domain_error(std::string(fn) + ": n must be >= 2");
  if (a.dim() != n) throw std::domain_error(std::string(fn) + ": direction dimension mismatch");
}

// Product envelope prod_j min(1, d_j / s^m): closed-form tail integrals past
// the largest factor crossover, in log space (d_j^k overflows for diag(n)).
struct ProductEnvelope {
  int m = 1;                       // per-factor power
  int K = 0;                       // number of nonzero coordinates
  double ln_prod_d = 0.0;          // sum of mult_j * ln d_j
  double crossover = 0.0;          // max_j d_j^{1/m}
  std::vector<Direction::Factor> factors;
  double coeff = 0.0;              // per-factor envelope constant

  static ProductEnvelope make(const Direction& a, const PowerEnvelope& pe) {
    ProductEnvelope env;
    env.m = pe.power;
    env.K = a.nonzero_count();
    env.coeff = pe.coeff;
    env.factors = a.factors();
    for (const auto& f : env.factors) {
      const double ln_d = std::log(pe.coeff) - env.m * std::log(f.weight);
      env.ln_prod_d += f.multiplicity * ln_d;
      env.crossover = std::max(env.crossover, std::exp(ln_d / env.m));
    }
    return env;
  }

  double bound(double s) const {
    if (s <= 0.0) return 1.0;
    double prod = 1.0;
    for (const auto& f : factors) {
      const double e = std::min(1.0, coeff / std::pow(f.weight * s, m));
      prod *= pow_signed(e, f.multiplicity);
      if (prod == 0.0) break;
    }
    return prod;
  }

  // int_U^inf prod ds, valid for U >= crossover; below that a linear penalty
  // pushes truncation-point searches past the crossover.
  double tail(double U, int extra_power = 0) const {
    const double drop = m * K + extra_power - 1;
    if (U < crossover) return tail(crossover, extra_power) + (crossover - U);
    return std::exp(ln_prod_d - drop * std::log(U) - std::log(drop));
  }

  // Smallest U with tail <= target, at least `floor_u`, capped.
  double pick_cutoff(double target, double floor_u, double cap, int extra_power = 0) const {
    const double drop = m * K + extra_power - 1;
    const double ln_u = (ln_prod_d - std::log(drop) - std::log(target)) / drop;
    double U = std::max({floor_u, 1.02 * crossover, std::exp(ln_u)});
    return std::min(U, cap);
  }
};

}  // namespace

const char* method_name(VolumeEstimate::Method m) {
  switch (m) {
    case VolumeEstimate::Method::quadrature: return "quadrature";
    case VolumeEstimate::Method::closed_form: return "closed_form";
    case VolumeEstimate::Method::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

QuadConfig section_defaults() {
  QuadConfig c;
  c.abs_tol = 1e-9;
  c.rel_tol = 1e-8;
  return c;
}

QuadConfig projection_defaults() {
  QuadConfig c;
  c.abs_tol = 1e-8;
  c.rel_tol = 1e-8;
  return c;
}

VolumeEstimate section_volume(int n, double p, const Direction& a, const QuadConfig& cfg) {
  cfg.validate();
  check_direction(n, a, "section_volume");
  if (!(p >= 1.0 && p <= 200.0)) {
    throw std::domain_error("section_volume: p must lie in [1, 200]");
  }
  if (a.nonzero_count() == 1) {
    // Coordinate hyperplane: the section is B_p^{n-1} itself.  The integrand
    // would decay only like 1/s, so the closed form replaces quadrature.
    return {1.0, 0.0, VolumeEstimate::Method::closed_form, n, p};
  }

  const auto env = ProductEnvelope::make(a, kernels::section_product_envelope(p));
  const QuadConfig inner = inner_config();
  const auto& factors = a.factors();

  const quad::Fn f = [&factors, p, &inner](double s) {
    double prod = 1.0;
    for (const auto& fac : factors) {
      const double g = kernels::gamma_kernel(p, fac.weight * s, inner);
      prod *= pow_signed(g, fac.multiplicity);
      if (prod == 0.0) break;
    }
    return prod;
  };

  const Envelope qenv{[env](double s) { return env.bound(s); },
                      [env](double U) { return env.tail(U); }};
  const double hint = std::min(2.0, M_PI / (2.0 * a.max_weight()));
  // The integrand's mass sits in the Gaussian-like bump near 0; past the
  // envelope crossover only the small oscillating tail remains and the
  // initial mesh may grow geometrically.
  const double fine_until = std::max(16.0, 1.5 * env.crossover);
  QuadResult outer = quad::integrate_oscillatory_product(f, qenv, cfg, hint, fine_until);
  const double U = quad::truncation_point(qenv, cfg);

  const double scale = gamma(1.0 + 1.0 / p) * 2.0 / M_PI;
  VolumeEstimate out;
  out.value = scale * outer.value;
  out.err_estimate = scale * (outer.err_estimate + env.K * kInnerAssumed * U);
  out.method = VolumeEstimate::Method::quadrature;
  out.n = n;
  out.index = p;
  return out;
}

VolumeEstimate projection_volume(int n, double q, const Direction& a, const QuadConfig& cfg) {
  cfg.validate();
  check_direction(n, a, "projection_volume");
  if (!(q > 1.0 && q <= 2.0)) {
    throw std::domain_error("projection_volume: q must lie in (1, 2]");
  }
  if (a.nonzero_count() == 1) {
    return {1.0, 0.0, VolumeEstimate::Method::closed_form, n, q};
  }

  const double p = q / (q - 1.0);
  const auto env = ProductEnvelope::make(a, kernels::projection_product_envelope(q));
  const QuadConfig inner = inner_config();
  const auto& factors = a.factors();

  // Removable singularity at s = 0: (1 - prod delta) / s^2 -> f1/2.  The
  // quadratic Taylor value covers [0, s0].
  const double lg_den = log_gamma(1.0 - 1.0 / p);
  const double f1 = std::exp(log_gamma(1.0 + 1.0 / p) - lg_den);
  const double f2 = std::exp(log_gamma(1.0 + 3.0 / p) - lg_den);
  const double s4 = a.sum_pow4();
  const double taylor_b = (f2 / 24.0 - f1 * f1 / 8.0) * s4 + f1 * f1 / 8.0;
  const double s0 = 1e-3;
  const double patch = 0.5 * f1 * s0 - taylor_b * s0 * s0 * s0 / 3.0;

  // Truncation: int_U (1 - prod)/s^2 = 1/U - int_U prod/s^2, the last term
  // bounded by the product envelope with two extra powers of s.
  const double U =
      env.pick_cutoff(0.5 * cfg.abs_tol, 15.0, cfg.truncation_cap, /*extra_power=*/2);
  const double remainder = env.tail(U, 2);

  const double max_w = a.max_weight();
  const quad::Fn h = [&factors, q, max_w, &inner](double s) {
    if (s * max_w <= 0.8) {
      // All kernel arguments are small and the deltas positive: evaluate
      // 1 - exp(sum log delta) without cancellation.
      double acc = 0.0;
      bool ok = true;
      for (const auto& fac : factors) {
        const double d = kernels::delta_kernel(q, fac.weight * s, inner);
        if (d <= 0.0) {
          ok = false;
          break;
        }
        acc += fac.multiplicity * std::log(d);
      }
      if (ok) return -std::expm1(acc) / (s * s);
    }
    double prod = 1.0;
    for (const auto& fac : factors) {
      const double d = kernels::delta_kernel(q, fac.weight * s, inner);
      prod *= pow_signed(d, fac.multiplicity);
      if (prod == 0.0) break;
    }
    return (1.0 - prod) / (s * s);
  };

  const double hint = std::min(2.0, M_PI / (2.0 * max_w));
  const double fine_until = std::max(16.0, 1.5 * env.crossover);
  QuadResult mid = quad::integrate_mesh(h, quad::oscillatory_mesh(s0, U, hint, fine_until), cfg);

  const double scale = gamma(1.0 / q) * 2.0 / M_PI;
  VolumeEstimate out;
  out.value = scale * (patch + mid.value + 1.0 / U);
  out.err_estimate =
      scale * (mid.err_estimate + remainder + env.K * kInnerAssumed / s0 + 1e-15);
  out.method = VolumeEstimate::Method::quadrature;
  out.n = n;
  out.index = q;
  return out;
}

double closed_form_a2(Kind kind, double index) {
  if (kind == Kind::section) {
    if (std::isinf(index)) return std::sqrt(2.0);
    if (!(index >= 1.0)) throw std::domain_error("closed_form_a2: p must be >= 1");
  } else {
    if (!(index > 1.0 && index <= 2.0)) {
      throw std::domain_error("closed_form_a2: q must lie in (1, 2]");
    }
  }
  return std::pow(2.0, 0.5 - 1.0 / index);
}

double limit_ratio(Kind kind, double index) {
  if (kind == Kind::section) {
    if (std::isinf(index)) return std::sqrt(3.0 / M_PI);
    if (!(index > 2.0)) throw std::domain_error("limit_ratio: section requires p > 2");
    const double p = index;
    return std::exp(0.5 * (std::log(3.0 / M_PI) + (2.0 / p) * std::log(2.0) +
                           3.0 * log_gamma(1.0 + 1.0 / p) - log_gamma(1.0 + 3.0 / p)));
  }
  if (!(index > 1.0 && index <= 2.0)) {
    throw std::domain_error("limit_ratio: projection requires q in (1, 2]");
  }
  const double q = index;
  return std::exp(0.5 * (-std::log(M_PI) + (2.0 / q) * std::log(2.0) +
                         log_gamma(1.0 / q) + log_gamma(2.0 - 1.0 / q)));
}

DiagonalScan diagonal_scan(Kind kind, int n, double index, const QuadConfig& cfg) {
  if (n < 2) throw std::domain_error("diagonal_scan: n must be >= 2");

  std::vector<int> ks;
  if (n <= 64) {
    for (int k = 1; k <= n; ++k) ks.push_back(k);
  } else {
    ks = {1, 2};
    for (double k = 3.0; k < n; k *= 1.3) ks.push_back(static_cast<int>(k));
    ks.push_back(n);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  }

  std::vector<VolumeEstimate> results(ks.size());
  detail::parallel_for(static_cast<int>(ks.size()), [&](int i) {
    const Direction a = Direction::diag(n, ks[i]);
    results[i] = kind == Kind::section ? section_volume(n, index, a, cfg)
                                       : projection_volume(n, index, a, cfg);
  });

  DiagonalScan scan;
  scan.kind = kind;
  scan.n = n;
  scan.index = index;
  int best = 0;
  for (size_t i = 1; i < ks.size(); ++i) {
    const bool better = kind == Kind::section ? results[i].value > results[best].value
                                              : results[i].value < results[best].value;
    if (better) best = static_cast<int>(i);
  }
  scan.best_k = ks[best];
  for (size_t i = 0; i < ks.size(); ++i) {
    if (static_cast<int>(i) != best &&
        std::fabs(results[i].value - results[best].value) <=
            results[i].err_estimate + results[best].err_estimate) {
      scan.tie_within_error = true;
    }
    scan.table.emplace_back(ks[i], results[i]);
  }
  return scan;
}

DiagonalScan diagonal_scan(Kind kind, int n, double index) {
  return diagonal_scan(kind, n, index,
                       kind == Kind::section ? section_defaults() : projection_defaults());
}

}  // namespace lpvol::volumes
