#include "lpvol/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace lpvol::quad {

namespace {

// QUADPACK dqk15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double err;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

Panel gk15(const Fn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);

  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    fv1[j] = f(c - h * kXgk[j]);
    fv2[j] = f(c + h * kXgk[j]);
  }

  double resg = kWg[3] * fc;
  for (int j = 0; j < 3; ++j) resg += kWg[j] * (fv1[2 * j + 1] + fv2[2 * j + 1]);

  double resk = kWgk[7] * fc;
  double resabs = kWgk[7] * std::fabs(fc);
  for (int j = 0; j < 7; ++j) {
    resk += kWgk[j] * (fv1[j] + fv2[j]);
    resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }

  resabs *= std::fabs(h);
  resasc *= std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50) {
    err = std::max(eps50 * resabs, err);
  }
  return {a, b, resk * h, err};
}

QuadResult adaptive_gk_mesh(const Fn& f, const std::vector<double>& mesh,
                            const QuadConfig& cfg) {
  QuadResult out;
  if (mesh.size() < 2) return {0.0, 0.0, 0, true};

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  double total = 0.0, toterr = 0.0;
  for (size_t i = 0; i + 1 < mesh.size(); ++i) {
    if (!(mesh[i + 1] > mesh[i])) continue;
    Panel p = gk15(f, mesh[i], mesh[i + 1]);
    total += p.value;
    toterr += p.err;
    out.evals += 15;
    heap.push(p);
  }

  int splits = 0;
  double frozen_err = 0.0;  // panels too narrow to split further
  while (toterr + frozen_err > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total)) &&
         splits < cfg.max_subdivisions && out.evals + 30 <= cfg.max_evals && !heap.empty()) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a) || !(mid < worst.b)) {
      // Cannot be bisected in double precision; its error stays.
      toterr -= worst.err;
      frozen_err += worst.err;
      continue;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    toterr += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    out.evals += 30;
    ++splits;
  }

  out.value = total;
  out.err_estimate = toterr + frozen_err;
  out.converged =
      out.err_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(out.value));
  return out;
}

QuadResult adaptive_gk(const Fn& f, double a, double b, const QuadConfig& cfg,
                       int initial_panels) {
  if (!(b > a)) return {0.0, 0.0, 0, true};
  initial_panels = std::clamp(initial_panels, 1, 512);
  std::vector<double> mesh(initial_panels + 1);
  for (int i = 0; i <= initial_panels; ++i) mesh[i] = a + (b - a) * i / initial_panels;
  mesh.back() = b;
  return adaptive_gk_mesh(f, mesh, cfg);
}

QuadResult truncated_integral(const Fn& f, const Envelope& env, const QuadConfig& cfg,
                              double panel_width, double fine_until) {
  bool capped = false;
  const double U = truncation_point(env, cfg, &capped);
  const double tail = env.tail(U);
  if (!std::isfinite(tail)) {
    throw std::domain_error("quadrature: envelope tail does not decay");
  }
  QuadResult r;
  if (panel_width <= 0.0) {
    r = adaptive_gk(f, 0.0, U, cfg, 1);
  } else {
    r = adaptive_gk_mesh(
        f, oscillatory_mesh(0.0, U, panel_width, fine_until > 0.0 ? fine_until : U), cfg);
  }
  r.err_estimate += tail;
  r.converged = r.err_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(r.value));
  return r;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("QuadConfig: tolerances must be positive");
  }
  if (max_subdivisions < 10) {
    throw std::invalid_argument("QuadConfig: max_subdivisions must be >= 10");
  }
  if (max_evals <= 0) throw std::invalid_argument("QuadConfig: max_evals must be positive");
}

QuadResult integrate_interval(const Fn& f, double a, double b, const QuadConfig& cfg,
                              int initial_panels) {
  cfg.validate();
  return adaptive_gk(f, a, b, cfg, initial_panels);
}

QuadResult integrate_mesh(const Fn& f, const std::vector<double>& mesh, const QuadConfig& cfg) {
  cfg.validate();
  return adaptive_gk_mesh(f, mesh, cfg);
}

std::vector<double> oscillatory_mesh(double a, double b, double fine_width, double fine_until) {
  std::vector<double> mesh{a};
  double x = a;
  const double fine_end = std::min(b, std::max(fine_until, a));
  while (x < fine_end) {
    x = std::min(fine_end, x + fine_width);
    mesh.push_back(x);
  }
  // Growing panels in the tail; the adaptive pass refines where needed.
  while (x < b) {
    x = std::min(b, std::max(x * 1.25, x + fine_width));
    mesh.push_back(x);
  }
  return mesh;
}

double truncation_point(const Envelope& env, const QuadConfig& cfg, bool* capped) {
  const double target = 0.5 * cfg.abs_tol;
  if (capped) *capped = false;
  double lo = 1.0;
  if (env.tail(lo) <= target) return lo;
  double hi = 2.0;
  while (hi < cfg.truncation_cap && !(env.tail(hi) <= target)) hi *= 2.0;
  if (hi >= cfg.truncation_cap) {
    hi = cfg.truncation_cap;
    if (!(env.tail(hi) <= target)) {
      if (capped) *capped = true;
      return hi;
    }
  }
  lo = hi / 2.0;
  for (int i = 0; i < 30 && hi - lo > 0.01 * lo; ++i) {
    const double mid = 0.5 * (lo + hi);
    (env.tail(mid) <= target ? hi : lo) = mid;
  }
  return hi;
}

QuadResult integrate_semi_infinite(const Fn& f, const Envelope& env, const QuadConfig& cfg) {
  cfg.validate();
  return truncated_integral(f, env, cfg, 4.0, 0.0);
}

QuadResult integrate_oscillatory_product(const Fn& g, const Envelope& env,
                                         const QuadConfig& cfg, double panel_hint,
                                         double fine_until) {
  cfg.validate();
  const double w = panel_hint > 0.0 ? panel_hint : 2.0;
  return truncated_integral(g, env, cfg, w, fine_until);
}

QuadResult integrate_alternating_periodic(const Fn& f, double start, double half_period,
                                          const QuadConfig& cfg) {
  cfg.validate();
  if (!(half_period > 0.0)) {
    throw std::domain_error("integrate_alternating_periodic: half_period must be positive");
  }

  QuadConfig piece = cfg;
  piece.abs_tol = cfg.abs_tol / 16.0;
  piece.max_subdivisions = 64;

  QuadResult out;
  double head = 0.0;
  if (start > 0.0) {
    QuadResult h = adaptive_gk(f, 0.0, start, piece, 4);
    head = h.value;
    out.evals += h.evals;
    out.err_estimate += h.err_estimate;
  }

  // Partial sums of the alternating per-period terms, accelerated by repeated
  // averaging.  The accelerated estimate is the head of the averaged row.
  std::vector<double> row;
  double sum = 0.0;
  double estimate = 0.0, prev_estimate = 0.0;
  const int max_terms = 256;
  int stable = 0;
  for (int k = 0; k < max_terms; ++k) {
    const double a = start + k * half_period;
    const double b = a + half_period;
    QuadResult t = adaptive_gk(f, a, b, piece, 2);
    out.evals += t.evals;
    out.err_estimate += t.err_estimate;
    sum += t.value;
    row.push_back(sum);
    for (int i = static_cast<int>(row.size()) - 2; i >= 0; --i) {
      row[i] = 0.5 * (row[i] + row[i + 1]);
    }
    prev_estimate = estimate;
    estimate = row.front();
    if (k > 4 && std::fabs(estimate - prev_estimate) < 0.25 * cfg.abs_tol) {
      if (++stable >= 2) break;
    } else {
      stable = 0;
    }
    if (out.evals + 60 > cfg.max_evals) break;
  }

  out.value = head + estimate;
  out.err_estimate += 4.0 * std::fabs(estimate - prev_estimate);
  out.converged =
      out.err_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(out.value));
  return out;
}

}  // namespace lpvol::quad
