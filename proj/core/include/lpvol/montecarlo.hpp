#pragma once

// Probabilistic oracles for the section and projection volumes:
//
//   A_{n,p}(a) = Gamma(1+1/p) E 1/||sum_j a_j R_j xi_j||_2,
//     R_j ~ c_p^{-1} t^p exp(-t^p) on [0,inf),  xi_j uniform on S^2,
//   P_{n,q}(a) = Gamma(1/q) E |sum_j a_j X_j|,
//     X_j symmetric with density d_q^{-1} |t|^{p-2} exp(-|t|^p).
//
// Substituting u = t^p reduces both samplers to Gamma variates:
// R = G^{1/p} with shape 1 + 1/p, |X| = G^{1/p} with shape 1/q.
// The reduction is unit-tested against quadrature CDFs before use.

#include <array>
#include <cstdint>

#include "lpvol/direction.hpp"

namespace lpvol::mc {

struct McConfig {
  long long samples = 1'000'000;  // >= 1000
  std::uint64_t seed = 0;
  int streams = 8;  // parallel substreams; the estimate depends only on (seed, streams, samples)

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  long long samples = 0;
};

// Counter-based generator (SplitMix64 finalizer over key + counter), cheap to
// split: every (seed, stream) pair owns an independent reproducible sequence.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_double();  // uniform in [0, 1)
  double next_normal();  // standard normal (Box-Muller)

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Marsaglia-Tsang squeeze method; shape < 1 handled by the boost
// G_a = G_{a+1} U^{1/a}.
double gamma_variate(double shape, CounterRng& rng);

double sample_radial(double p, CounterRng& rng);   // density c_p^{-1} t^p exp(-t^p)
double sample_signed(double q, CounterRng& rng);   // density d_q^{-1} |t|^{p-2} exp(-|t|^p)
std::array<double, 3> sample_sphere3(CounterRng& rng);  // uniform on S^2

McEstimate mc_section(int n, double p, const Direction& a, const McConfig& mc);
McEstimate mc_projection(int n, double q, const Direction& a, const McConfig& mc);

}  // namespace lpvol::mc
