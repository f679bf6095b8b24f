#include "lpvol/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "lpvol/specfun.hpp"
#include "parallel_for.hpp"

namespace lpvol::analysis {

namespace {

using specfun::digamma;
using specfun::gamma;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kLemma3bM = 0.86326;

RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  const char* what) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, lo, hi};
  if (fhi == 0.0) return {hi, 0.0, lo, hi};
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::runtime_error(std::string("bisect: bracket does not change sign for ") + what);
  }
  const double blo = lo, bhi = hi;
  for (int i = 0; i < 200 && hi - lo > 1e-11; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, std::fabs(f(x)), blo, bhi};
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

struct MarginGrid {
  std::vector<GridPoint> pts;
  std::vector<double> margins;
};

LemmaReport assemble(LemmaId id, MarginGrid&& g) {
  LemmaReport rep;
  rep.lemma_id = id;
  rep.grid = std::move(g.pts);
  size_t worst = 0;
  for (size_t i = 1; i < g.margins.size(); ++i) {
    if (g.margins[i] < g.margins[worst]) worst = i;
  }
  rep.worst_margin = g.margins.empty() ? 0.0 : g.margins[worst];
  rep.worst_point = rep.grid.empty() ? GridPoint{} : rep.grid[worst];
  rep.pass = rep.worst_margin >= -1e-9;
  return rep;
}

std::vector<double> linspace(double a, double b, double density) {
  const int count = std::max(2, static_cast<int>(std::ceil((b - a) * density)) + 1);
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i) xs[i] = a + (b - a) * i / (count - 1);
  return xs;
}

}  // namespace

// Same expressions as volumes::limit_ratio but on the wider domains the
// lemmas use: g_section lives on [2, inf) (g(2) = 1), g_projection on [1, 2].
double g_section(double p) {
  if (!(p > 0.0)) throw std::domain_error("g_section: p must be positive");
  return std::exp(0.5 * (std::log(3.0 / M_PI) + (2.0 / p) * std::log(2.0) +
                         3.0 * specfun::log_gamma(1.0 + 1.0 / p) -
                         specfun::log_gamma(1.0 + 3.0 / p)));
}

double g_projection(double q) {
  if (!(q >= 1.0 && q <= 2.0)) throw std::domain_error("g_projection: q must lie in [1, 2]");
  return std::exp(0.5 * (-std::log(M_PI) + (2.0 / q) * std::log(2.0) +
                         specfun::log_gamma(1.0 / q) + specfun::log_gamma(2.0 - 1.0 / q)));
}

double f_section(double p) {
  if (!(p > 0.0)) throw std::domain_error("f_section: p must be positive");
  return gamma(1.0 + 3.0 / p) / gamma(1.0 + 1.0 / p);
}

double f_projection(double q) {
  if (!(q >= 1.0 && q <= 2.0)) throw std::domain_error("f_projection: q must lie in [1, 2]");
  return gamma(2.0 - 1.0 / q) / gamma(1.0 / q);
}

double section_gprime_factor(double p) {
  return digamma(1.0 + 3.0 / p) - digamma(1.0 + 1.0 / p) - (2.0 / 3.0) * std::log(2.0);
}

double section_fprime_factor(double p) {
  return digamma(1.0 + 1.0 / p) - 3.0 * digamma(1.0 + 3.0 / p);
}

double projection_gprime_factor(double q) {
  return digamma(2.0 - 1.0 / q) - digamma(1.0 / q) - 2.0 * std::log(2.0);
}

CriticalExponents critical_exponents() {
  CriticalExponents ce;
  // Brackets fixed by the paper's sign evaluations: g(26) > 1 > g(27),
  // k(4) > 0 > k(5), h(1) < 0 < h(2), F(9) < 0 < F(10).
  ce.p0 = bisect([](double p) { return g_section(p) - 1.0; }, 26.0, 27.0, "p0");
  ce.p1_section = bisect(section_gprime_factor, 4.0, 5.0, "p1_section");
  ce.q1_projection = bisect(projection_gprime_factor, 1.0, 2.0, "q1_projection");
  ce.f_min_location = bisect(section_fprime_factor, 9.0, 10.0, "f_min_location");
  return ce;
}

double theorem_threshold(Kind kind, double index, double p0) {
  if (kind == Kind::section) {
    if (!(index > 2.0 && index < p0)) {
      throw std::domain_error("theorem_threshold: section requires p in (2, p0)");
    }
    return index >= 5.0 ? 650.0 / (p0 - index) : 65.0 / (index - 2.0);
  }
  if (!(index > 4.0 / 3.0 && index < 2.0)) {
    throw std::domain_error("theorem_threshold: projection requires q in (4/3, 2)");
  }
  return (32.0 / 15.0) / (index - 4.0 / 3.0) + (24.0 / 5.0) / (2.0 - index);
}

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::lemma1a: return "lemma1a";
    case LemmaId::lemma1b: return "lemma1b";
    case LemmaId::lemma2: return "lemma2";
    case LemmaId::lemma3a: return "lemma3a";
    case LemmaId::lemma3b: return "lemma3b";
    case LemmaId::corollary_delta: return "corollary_delta";
  }
  return "unknown";
}

LemmaReport verify_lemma_bounds(LemmaId id, double grid_density, const QuadConfig& cfg) {
  if (!(grid_density >= 50.0)) {
    throw std::domain_error("verify_lemma_bounds: grid density must be >= 50 per unit");
  }
  MarginGrid g;

  switch (id) {
    case LemmaId::lemma1a: {
      for (double p : linspace(3.0, 100.0, grid_density)) {
        g.pts.push_back({p, kNan});
        g.margins.push_back(f_section(p) - 0.9429);
      }
      break;
    }
    case LemmaId::lemma1b: {
      const double p0 = critical_exponents().p0.x;
      for (double p : linspace(5.0, p0, grid_density)) {
        g.pts.push_back({p, kNan});
        g.margins.push_back(g_section(p) - (1.0 + (p0 - p) / 1317.0));
      }
      for (double p : linspace(4.0, 5.0, grid_density)) {
        g.pts.push_back({p, kNan});
        g.margins.push_back(g_section(p) - 25.0 / 24.0);
      }
      for (double p : linspace(2.0, 4.0, grid_density)) {
        g.pts.push_back({p, kNan});
        g.margins.push_back(g_section(p) - (1.0 + (p - 2.0) / 44.0));
      }
      break;
    }
    case LemmaId::lemma2: {
      const double ps[] = {2.0, 3.0, 5.0, 10.0, 100.0};
      const auto ss = linspace(1.0 / grid_density, 20.0, grid_density);
      QuadConfig tight = cfg;
      tight.abs_tol = std::min(cfg.abs_tol, 1e-11);
      g.pts.resize(5 * ss.size());
      g.margins.resize(5 * ss.size());
      detail::parallel_for(static_cast<int>(5 * ss.size()), [&](int i) {
        const double p = ps[i / ss.size()];
        const double s = ss[i % ss.size()];
        const double raw = kernels::cosine_transform_exp(p, s, tight).value;
        g.pts[i] = {p, s};
        g.margins[i] = 0.3926 - std::fabs(sinc(s) - raw);
      });
      break;
    }
    case LemmaId::lemma3a: {
      g.pts.push_back({4.0 / 3.0, kNan});
      g.margins.push_back(0.7397 - f_projection(4.0 / 3.0));
      break;
    }
    case LemmaId::lemma3b: {
      const double step = 1.0 / grid_density;
      for (double q : linspace(4.0 / 3.0 + step, 2.0 - step, grid_density)) {
        const double eps = (1.0 / q - 0.5) * (0.75 - 1.0 / q);
        g.pts.push_back({q, kNan});
        g.margins.push_back((1.0 - kLemma3bM * eps) - g_projection(q));
      }
      break;
    }
    case LemmaId::corollary_delta: {
      const auto qs = linspace(4.0 / 3.0, 2.0, grid_density);
      const auto ss = linspace(48.0 / 25.0, 16.0 / 5.0, grid_density);
      QuadConfig tight = cfg;
      tight.abs_tol = std::min(cfg.abs_tol, 1e-11);
      g.pts.resize(qs.size() * ss.size());
      g.margins.resize(qs.size() * ss.size());
      detail::parallel_for(static_cast<int>(qs.size() * ss.size()), [&](int i) {
        const double q = qs[i / ss.size()];
        const double s = ss[i % ss.size()];
        const double d = kernels::delta_kernel(q, s, tight);
        g.pts[i] = {q, s};
        g.margins[i] = 0.588 - std::fabs(d);
      });
      break;
    }
  }
  return assemble(id, std::move(g));
}

std::vector<LemmaReport> verify_all_lemmas(double grid_density, const QuadConfig& cfg) {
  std::vector<LemmaReport> reports;
  for (LemmaId id : {LemmaId::lemma1a, LemmaId::lemma1b, LemmaId::lemma2, LemmaId::lemma3a,
                     LemmaId::lemma3b, LemmaId::corollary_delta}) {
    reports.push_back(verify_lemma_bounds(id, grid_density, cfg));
  }
  return reports;
}

CrossoverReport crossover_scan(Kind kind, double index, int n_max, const QuadConfig& cfg) {
  if (n_max < 2 || n_max > 5000) {
    throw std::domain_error("crossover_scan: n_max must lie in [2, 5000]");
  }
  CrossoverReport rep;
  rep.kind = kind;
  rep.index = index;
  const double p0 = critical_exponents().p0.x;
  rep.n_theorem = theorem_threshold(kind, index, p0);

  // Dense integer grid around the threshold, geometric spacing elsewhere.
  std::vector<int> ns;
  const double thr = rep.n_theorem;
  const int lo = std::max(2, static_cast<int>(std::floor(0.5 * thr)));
  const int dense_lo = std::max(2, static_cast<int>(std::floor(0.8 * thr)));
  const int dense_hi = static_cast<int>(std::ceil(1.2 * thr)) + 1;
  const int dense_step = std::max(1, static_cast<int>(thr / 40.0));
  for (double n = lo; n < dense_lo; n *= 1.3) ns.push_back(static_cast<int>(n));
  for (int n = dense_lo; n <= std::min(dense_hi, n_max); n += dense_step) ns.push_back(n);
  for (double n = dense_hi * 1.3; n < n_max; n *= 1.3) ns.push_back(static_cast<int>(n));
  ns.push_back(std::min(n_max, static_cast<int>(std::ceil(thr))));
  ns.push_back(std::min(n_max, static_cast<int>(std::ceil(thr)) + 1));
  ns.push_back(n_max);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  ns.erase(std::remove_if(ns.begin(), ns.end(), [&](int n) { return n < 2 || n > n_max; }),
           ns.end());

  // The a^{(2)} value does not depend on n; evaluate it once.
  const VolumeEstimate a2 =
      kind == Kind::section
          ? volumes::section_volume(2, index, Direction::diag(2, 2), cfg)
          : volumes::projection_volume(2, index, Direction::diag(2, 2), cfg);

  rep.per_n.resize(ns.size());
  detail::parallel_for(static_cast<int>(ns.size()), [&](int i) {
    const int n = ns[i];
    CrossoverRow row;
    row.n = n;
    row.diagonal = kind == Kind::section
                       ? volumes::section_volume(n, index, Direction::diag(n, n), cfg)
                       : volumes::projection_volume(n, index, Direction::diag(n, n), cfg);
    row.a2 = a2;
    row.a2.n = n;
    row.margin = kind == Kind::section ? row.diagonal.value - row.a2.value
                                       : row.a2.value - row.diagonal.value;
    row.err_combined = row.diagonal.err_estimate + row.a2.err_estimate;
    row.beyond_error = row.margin > 3.0 * row.err_combined;
    rep.per_n[i] = row;
  });

  rep.theorem_verified = true;
  for (const auto& row : rep.per_n) {
    if (row.beyond_error && !rep.n_empirical) rep.n_empirical = row.n;
    if (row.n >= std::ceil(rep.n_theorem) && !row.beyond_error) rep.theorem_verified = false;
  }
  return rep;
}

CrossoverReport crossover_scan(Kind kind, double index, int n_max) {
  return crossover_scan(kind, index, n_max,
                        kind == Kind::section ? volumes::section_defaults()
                                              : volumes::projection_defaults());
}

}  // namespace lpvol::analysis
