// Acceptance suite: end-to-end reproduction of the library's headline numbers
// at desk scale.  Each criterion prints a single PASS/FAIL line; the process
// exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

}  // namespace

#include "lpvol/analysis.hpp"
#include "lpvol/montecarlo.hpp"
#include "lpvol/volumes.hpp"

using namespace lpvol;
using kernels::Kind;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& label, const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] criterion %2d: %-34s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, label.c_str(),
              dt, detail.empty() ? "" : "  -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool in_range(double x, double lo, double hi) { return x >= lo && x <= hi; }

}  // namespace

int main() {
  // 1. Closed-form anchors for a^(2).
  criterion(1, "closed-form a^(2) anchors", [](std::string& detail) {
    double worst = 0.0;
    for (int n : {5, 50}) {
      for (double p : {2.5, 3.0, 5.0, 10.0, 26.0}) {
        const auto v = volumes::section_volume(n, p, Direction::diag(n, 2));
        worst = std::max(worst, std::fabs(v.value - volumes::closed_form_a2(Kind::section, p)));
      }
      for (double q : {4.0 / 3.0, 1.5, 1.9}) {
        const auto v = volumes::projection_volume(n, q, Direction::diag(n, 2));
        worst = std::max(worst, std::fabs(v.value - volumes::closed_form_a2(Kind::projection, q)));
      }
    }
    detail = "worst |dev| = " + num(worst);
    return worst < 1e-6;
  });

  // 2. Critical exponents.
  criterion(2, "critical exponents", [](std::string& detail) {
    const auto ce = analysis::critical_exponents();
    const double g26 = analysis::g_section(26.0);
    const double g27 = analysis::g_section(27.0);
    detail = "p0 = " + std::to_string(ce.p0.x) + ", p1 = " + std::to_string(ce.p1_section.x) +
             ", q1 = " + std::to_string(ce.q1_projection.x);
    return in_range(ce.p0.x, 26.255, 26.275) && in_range(g26, 1.0001, 1.0003) &&
           in_range(g27, 0.9993, 0.9996) && in_range(ce.p1_section.x, 4.18, 4.21) &&
           in_range(ce.q1_projection.x, 1.605, 1.62);
  });

  // 3. Lemma suite.
  criterion(3, "lemma-bound suite", [](std::string& detail) {
    bool ok = true;
    double worst = 1.0;
    for (const auto& rep : analysis::verify_all_lemmas(50.0)) {
      ok = ok && rep.pass && rep.worst_margin >= -1e-9;
      worst = std::min(worst, rep.worst_margin);
    }
    detail = "min worst_margin = " + num(worst);
    return ok;
  });

  // 4. Kernel values.
  criterion(4, "kernel pin values", [](std::string& detail) {
    const double d1 = kernels::delta_kernel(4.0 / 3.0, 48.0 / 25.0);
    const double d2 = kernels::delta_kernel(4.0 / 3.0, 16.0 / 5.0);
    const double s1 = kernels::gamma4_first_zero();
    detail = "delta(48/25) = " + std::to_string(d1) + ", delta(16/5) = " + std::to_string(d2) +
             ", s1 = " + std::to_string(s1);
    return d1 > 0.0026 && d1 < 0.1 && d2 > -0.588 && d2 < 0.0 && std::fabs(s1 - 3.4535) <= 5e-4;
  });

  // 5. Derivative relation and the gamma_4''' ODE.
  criterion(5, "derivative relation residuals", [](std::string& detail) {
    double worst_rel = 0.0;
    for (double q : {4.0 / 3.0, 1.5, 1.9}) {
      for (double s : {0.5, 1.0, 2.0}) {
        worst_rel = std::max(worst_rel, kernels::derivative_relation_residual(q, s, 1e-4));
      }
    }
    double worst_ode = 0.0;
    for (double s : {1.0, 2.0, 3.0}) {
      worst_ode = std::max(worst_ode, kernels::gamma_even_ode_residual(2, s, 1e-2));
    }
    detail = "eq2.7 worst = " + num(worst_rel) + ", ode worst = " + num(worst_ode);
    return worst_rel < 1e-5 && worst_ode < 1e-3;
  });

  // 6. Theorem 1 at p = 3.
  criterion(6, "theorem 1 reproduction (p = 3)", [](std::string& detail) {
    const auto a2 = volumes::section_volume(2, 3.0, Direction::diag(2, 2));
    bool ok = true;
    for (int n : {66, 100, 200}) {
      const auto diag = volumes::section_volume(n, 3.0, Direction::diag(n, n));
      const double margin = diag.value - a2.value;
      ok = ok && margin > 3.0 * (diag.err_estimate + a2.err_estimate);
    }
    const auto d400 = volumes::section_volume(400, 3.0, Direction::diag(400, 400));
    const double ratio = d400.value / a2.value;
    const double limit = volumes::limit_ratio(Kind::section, 3.0);
    detail = "ratio(400) = " + std::to_string(ratio) + " vs limit " + std::to_string(limit);
    return ok && std::fabs(ratio / limit - 1.0) < 0.02;
  });

  // 7. Theorem 2 at q = 8/5.
  criterion(7, "theorem 2 reproduction (q = 8/5)", [](std::string& detail) {
    const double q = 1.6;
    const auto a2 = volumes::projection_volume(2, q, Direction::diag(2, 2));
    bool ok = true;
    for (int n : {21, 50, 100}) {
      const auto diag = volumes::projection_volume(n, q, Direction::diag(n, n));
      const double margin = a2.value - diag.value;
      ok = ok && margin > 3.0 * (diag.err_estimate + a2.err_estimate);
    }
    const auto d400 = volumes::projection_volume(400, q, Direction::diag(400, 400));
    const double ratio = d400.value / a2.value;
    const double limit = volumes::limit_ratio(Kind::projection, q);
    detail = "ratio(400) = " + std::to_string(ratio) + " vs limit " + std::to_string(limit);
    return ok && std::fabs(ratio / limit - 1.0) < 0.02;
  });

  // 8. Quadrature and Monte Carlo agree on the six-case matrix.
  criterion(8, "oracle equivalence (10^6 samples)", [](std::string& detail) {
    mc::McConfig mcfg;
    mcfg.samples = 1'000'000;
    mcfg.seed = 20240229;
    double worst_sigma = 0.0;
    const auto check = [&](const mc::McEstimate& m, const volumes::VolumeEstimate& v) {
      const double sig = std::fabs(m.mean - v.value) / (m.std_error + v.err_estimate);
      worst_sigma = std::max(worst_sigma, sig);
    };
    for (int k : {1, 2, 100}) {
      const Direction a = Direction::diag(100, k);
      check(mc::mc_section(100, 3.0, a, mcfg), volumes::section_volume(100, 3.0, a));
    }
    for (int k : {1, 2, 50}) {
      const Direction a = Direction::diag(50, k);
      check(mc::mc_projection(50, 1.5, a, mcfg), volumes::projection_volume(50, 1.5, a));
    }
    detail = "worst deviation = " + num(worst_sigma) + " combined errors";
    return worst_sigma <= 3.0;
  });

  // 9. Derivative anchors of the limit ratios.
  criterion(9, "limit-ratio derivative anchors", [](std::string& detail) {
    const double h = 1e-5;
    const double gp2 = (analysis::g_section(2.0 + h) - analysis::g_section(2.0 - h)) / (2.0 * h);
    const double target2 = 0.25 * (1.0 - std::log(2.0));
    const double q43 = 4.0 / 3.0;
    const double gq = (analysis::g_projection(q43 + h) - analysis::g_projection(q43 - h)) /
                      (2.0 * h);
    const double target43 = (9.0 / 32.0) * (4.0 - M_PI - 2.0 * std::log(2.0));
    const double p0 = analysis::critical_exponents().p0.x;
    const double gp0 =
        (analysis::g_section(p0 + 1e-4) - analysis::g_section(p0 - 1e-4)) / 2e-4;
    detail = "g'(2) = " + std::to_string(gp2) + ", g'(4/3) = " + std::to_string(gq) +
             ", g'(p0) = " + std::to_string(gp0);
    return std::fabs(gp2 - target2) <= 1e-4 && std::fabs(gq - target43) <= 1e-4 &&
           std::fabs(gp0 + 1.0 / 1316.0) <= 0.1 / 1316.0;
  });

  // 10. Monotonicity of A in p and P in q.
  criterion(10, "volume monotonicity in the exponent", [](std::string& detail) {
    const Direction a3 = Direction::diag(5, 3);
    bool ok = true;
    double prev = 0.0;
    for (double p : {1.5, 2.0, 3.0, 5.0, 10.0}) {
      const auto v = volumes::section_volume(5, p, a3);
      ok = ok && v.value >= prev - (v.err_estimate + 1e-8);
      prev = v.value;
    }
    prev = 0.0;
    for (double q : {1.25, 1.5, 1.75, 2.0}) {
      const auto v = volumes::projection_volume(5, q, a3);
      ok = ok && v.value >= prev - (v.err_estimate + 1e-8);
      prev = v.value;
    }
    detail = ok ? "nondecreasing on both grids" : "monotonicity violated";
    return ok;
  });

  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
