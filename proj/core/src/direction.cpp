#include "lpvol/direction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpvol {

Direction Direction::diag(int n, int k) {
  if (n < 1) throw std::domain_error("Direction::diag: n must be >= 1");
  if (k < 1 || k > n) throw std::domain_error("Direction::diag: requires 1 <= k <= n");
  Direction d;
  d.n_ = n;
  d.diag_k_ = k;
  d.factors_ = {{1.0 / std::sqrt(static_cast<double>(k)), k}};
  d.label_ = "diag:" + std::to_string(k);
  return d;
}

Direction Direction::from_coords(std::vector<double> coords) {
  if (coords.empty()) throw std::domain_error("Direction: empty coordinate vector");
  double norm2 = 0.0;
  for (double c : coords) norm2 += c * c;
  const double norm = std::sqrt(norm2);
  if (std::fabs(norm - 1.0) > 1e-6) {
    throw std::domain_error("Direction: coordinates are not a unit vector (|norm - 1| > 1e-6)");
  }

  std::vector<double> weights;
  for (double c : coords) {
    const double w = std::fabs(c) / norm;
    if (w > 0.0) weights.push_back(w);
  }
  if (weights.empty()) throw std::domain_error("Direction: zero vector");
  std::sort(weights.begin(), weights.end(), std::greater<>());

  Direction d;
  d.n_ = static_cast<int>(coords.size());
  for (double w : weights) {
    if (!d.factors_.empty() && std::fabs(d.factors_.back().weight - w) <= 1e-12 * w) {
      ++d.factors_.back().multiplicity;
    } else {
      d.factors_.push_back({w, 1});
    }
  }
  d.label_ = "vec:" + std::to_string(d.n_) + "d";
  return d;
}

int Direction::nonzero_count() const {
  int k = 0;
  for (const auto& f : factors_) k += f.multiplicity;
  return k;
}

double Direction::max_weight() const { return factors_.front().weight; }

double Direction::min_weight() const { return factors_.back().weight; }

double Direction::sum_pow4() const {
  double s = 0.0;
  for (const auto& f : factors_) s += f.multiplicity * std::pow(f.weight, 4);
  return s;
}

}  // namespace lpvol
