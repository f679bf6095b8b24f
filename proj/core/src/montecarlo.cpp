#include "lpvol/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lpvol/specfun.hpp"
#include "parallel_for.hpp"

namespace lpvol::mc {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

struct StreamMoments {
  double sum = 0.0;
  double sumsq = 0.0;
  long long count = 0;
};

// Deterministic reduction: substream partials combined in stream order no
// matter how the streams were scheduled.
template <typename PerSample>
McEstimate run_streams(const McConfig& mc, PerSample&& sample_value) {
  mc.validate();
  const int streams = mc.streams;
  std::vector<StreamMoments> parts(streams);
  detail::parallel_for(streams, [&](int t) {
    const long long base = mc.samples / streams;
    const long long ns = base + (t < mc.samples % streams ? 1 : 0);
    CounterRng rng(mc.seed, static_cast<std::uint64_t>(t));
    StreamMoments m;
    for (long long i = 0; i < ns; ++i) {
      const double v = sample_value(rng);
      m.sum += v;
      m.sumsq += v * v;
    }
    m.count = ns;
    parts[t] = m;
  });

  double sum = 0.0, sumsq = 0.0;
  long long count = 0;
  for (const auto& m : parts) {
    sum += m.sum;
    sumsq += m.sumsq;
    count += m.count;
  }
  McEstimate est;
  est.samples = count;
  est.mean = sum / count;
  const double var = std::max(0.0, (sumsq - count * est.mean * est.mean) / (count - 1));
  est.std_error = std::sqrt(var / count);
  return est;
}

std::vector<double> expanded_weights(const Direction& a) {
  std::vector<double> w;
  for (const auto& f : a.factors()) {
    for (int i = 0; i < f.multiplicity; ++i) w.push_back(f.weight);
  }
  return w;
}

}  // namespace

void McConfig::validate() const {
  if (samples < 1000) throw std::invalid_argument("McConfig: samples must be >= 1000");
  if (streams < 1) throw std::invalid_argument("McConfig: streams must be >= 1");
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGolden) ^ mix64(stream * 0xD1B54A32D192ED03ull + kGolden))) {}

std::uint64_t CounterRng::next_u64() { return mix64(key_ + (++counter_) * kGolden); }

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_normal() {
  const double u1 = 1.0 - next_double();  // in (0, 1]
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double gamma_variate(double shape, CounterRng& rng) {
  if (!(shape > 0.0)) throw std::domain_error("gamma_variate: shape must be positive");
  if (shape < 1.0) {
    const double g = gamma_variate(shape + 1.0, rng);
    double u = rng.next_double();
    while (u == 0.0) u = rng.next_double();
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = rng.next_normal();
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = rng.next_double();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_radial(double p, CounterRng& rng) {
  if (!(p >= 1.0)) throw std::domain_error("sample_radial: p must be >= 1");
  return std::pow(gamma_variate(1.0 + 1.0 / p, rng), 1.0 / p);
}

double sample_signed(double q, CounterRng& rng) {
  if (!(q > 1.0 && q <= 2.0)) throw std::domain_error("sample_signed: q must lie in (1, 2]");
  const double p = q / (q - 1.0);
  const double mag = std::pow(gamma_variate(1.0 / q, rng), 1.0 / p);
  return (rng.next_u64() & 1ull) ? mag : -mag;
}

std::array<double, 3> sample_sphere3(CounterRng& rng) {
  const double z = 2.0 * rng.next_double() - 1.0;
  const double phi = 2.0 * M_PI * rng.next_double();
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

McEstimate mc_section(int n, double p, const Direction& a, const McConfig& mc) {
  if (n < 1) throw std::domain_error("mc_section: n must be >= 1");
  if (!(p >= 1.0)) throw std::domain_error("mc_section: p must be >= 1");
  if (a.dim() != n) throw std::domain_error("mc_section: direction dimension mismatch");
  const std::vector<double> w = expanded_weights(a);
  const double g1 = specfun::gamma(1.0 + 1.0 / p);
  return run_streams(mc, [&w, p, g1](CounterRng& rng) {
    double vx = 0.0, vy = 0.0, vz = 0.0;
    for (double wj : w) {
      const double r = sample_radial(p, rng);
      const auto xi = sample_sphere3(rng);
      vx += wj * r * xi[0];
      vy += wj * r * xi[1];
      vz += wj * r * xi[2];
    }
    return g1 / std::sqrt(vx * vx + vy * vy + vz * vz);
  });
}

McEstimate mc_projection(int n, double q, const Direction& a, const McConfig& mc) {
  if (n < 1) throw std::domain_error("mc_projection: n must be >= 1");
  if (!(q > 1.0 && q <= 2.0)) throw std::domain_error("mc_projection: q must lie in (1, 2]");
  if (a.dim() != n) throw std::domain_error("mc_projection: direction dimension mismatch");
  const std::vector<double> w = expanded_weights(a);
  const double gq = specfun::gamma(1.0 / q);
  return run_streams(mc, [&w, q, gq](CounterRng& rng) {
    double s = 0.0;
    for (double wj : w) s += wj * sample_signed(q, rng);
    return gq * std::fabs(s);
  });
}

}  // namespace lpvol::mc
