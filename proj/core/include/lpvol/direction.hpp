#pragma once

// Unit direction in R^n, either an explicit vector or the symbolic diagonal
// family a^{(k)} = (1/sqrt k)(1,...,1,0,...,0).  Coordinates with |a_j| = 0
// drop out of every kernel product, so the canonical form kept here is the
// multiset of distinct nonzero |a_j| with multiplicities.

#include <string>
#include <vector>

namespace lpvol {

class Direction {
 public:
  struct Factor {
    double weight;      // distinct nonzero |a_j|
    int multiplicity;   // how many coordinates share it
  };

  // a^{(k)} in R^n; requires 1 <= k <= n.
  static Direction diag(int n, int k);

  // Explicit coordinates; accepted if the Euclidean norm is within 1e-6 of 1
  // (then normalized to 1e-12), rejected otherwise.
  static Direction from_coords(std::vector<double> coords);

  int dim() const { return n_; }
  bool is_diag() const { return diag_k_ > 0; }
  int diag_k() const { return diag_k_; }
  const std::vector<Factor>& factors() const { return factors_; }

  int nonzero_count() const;
  double max_weight() const;
  double min_weight() const;
  double sum_pow4() const;  // sum of a_j^4

  const std::string& label() const { return label_; }

 private:
  int n_ = 0;
  int diag_k_ = 0;
  std::vector<Factor> factors_;  // sorted by descending weight
  std::string label_;
};

}  // namespace lpvol
