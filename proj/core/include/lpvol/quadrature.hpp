#pragma once

// Adaptive Gauss-Kronrod 15-point quadrature on finite intervals, plus
// semi-infinite integration with rigorous truncation driven by closed-form
// envelope tails, and a period-summation path (Euler acceleration) for
// conditionally convergent oscillatory tails.

#include <functional>
#include <vector>

namespace lpvol::quad {

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  long max_evals = 5'000'000;
  double truncation_cap = 1e3;  // semi-infinite truncation point is never pushed past this

  void validate() const;  // throws std::invalid_argument on violation
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;  // adaptive panel error plus truncation tail
  long evals = 0;
  bool converged = false;
};

using Fn = std::function<double(double)>;

// Non-increasing pointwise bound on |f| together with its closed-form tail
// integral U -> int_U^inf bound.
struct Envelope {
  Fn bound;
  Fn tail;
};

// Adaptive GK15 over [a, b].  `initial_panels` sets the uniform starting mesh
// (1 = plain adaptive bisection from the whole interval).
QuadResult integrate_interval(const Fn& f, double a, double b, const QuadConfig& cfg = {},
                              int initial_panels = 1);

// Adaptive GK15 with a caller-supplied initial mesh (ascending breakpoints).
QuadResult integrate_mesh(const Fn& f, const std::vector<double>& mesh,
                          const QuadConfig& cfg = {});

// Initial mesh for semi-infinite oscillatory integrands: uniform panels of
// `fine_width` up to `fine_until`, then geometrically growing panels to b.
std::vector<double> oscillatory_mesh(double a, double b, double fine_width, double fine_until);

// Smallest truncation point U with envelope tail below abs_tol/2, capped at
// cfg.truncation_cap.  `capped` (optional) reports whether the cap was hit.
double truncation_point(const Envelope& env, const QuadConfig& cfg, bool* capped = nullptr);

// int_0^inf f, |f| <= env.bound pointwise, env.tail integrable.  The error
// estimate combines panel error and the envelope tail at the truncation point.
QuadResult integrate_semi_infinite(const Fn& f, const Envelope& env, const QuadConfig& cfg = {});

// Same contract for sign-changing integrands (products of oscillatory
// kernels).  Starts from a finer mesh so oscillations are sampled before
// refinement; `panel_hint` is the initial panel width (0 = auto) and
// `fine_until` the point past which the initial mesh may grow geometrically
// (0 = uniform all the way).  Throws std::domain_error if the envelope tail
// does not decay.
QuadResult integrate_oscillatory_product(const Fn& g, const Envelope& env,
                                         const QuadConfig& cfg = {}, double panel_hint = 0.0,
                                         double fine_until = 0.0);

// int_0^inf f for integrands whose tail decays too slowly for envelope
// truncation but alternates over consecutive half-periods (the sinc family).
// Integrates [0, start], then sums the alternating per-period contributions
// with repeated-averaging (Euler) acceleration.
QuadResult integrate_alternating_periodic(const Fn& f, double start, double half_period,
                                          const QuadConfig& cfg = {});

}  // namespace lpvol::quad
