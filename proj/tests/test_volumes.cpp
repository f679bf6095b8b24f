#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lpvol/montecarlo.hpp"
#include "lpvol/volumes.hpp"

using namespace lpvol;
using namespace lpvol::volumes;
using kernels::Kind;

TEST_CASE("direction construction and validation") {
  const Direction d = Direction::diag(10, 4);
  CHECK(d.dim() == 10);
  CHECK(d.diag_k() == 4);
  CHECK(d.nonzero_count() == 4);
  CHECK(d.max_weight() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(Direction::diag(3, 4), std::domain_error);

  const Direction v = Direction::from_coords({0.6, 0.8, 0.0});
  CHECK(v.nonzero_count() == 2);
  CHECK(v.factors().size() == 2);
  CHECK_THROWS_AS(Direction::from_coords({1.0, 1.0, 0.0}), std::domain_error);
  // A vector within 1e-6 of unit is accepted and renormalized.
  CHECK_NOTHROW(Direction::from_coords({1.0 + 5e-7, 0.0}));
}

TEST_CASE("coordinate sections and projections are exactly 1") {
  const auto s = section_volume(6, 3.7, Direction::diag(6, 1));
  CHECK(s.value == 1.0);
  CHECK(s.method == VolumeEstimate::Method::closed_form);
  const auto pr = projection_volume(6, 1.4, Direction::diag(6, 1));
  CHECK(pr.value == 1.0);
  CHECK(pr.method == VolumeEstimate::Method::closed_form);
}

TEST_CASE("a^(2) closed-form anchors for sections") {
  for (double p : {2.5, 3.0, 5.0, 10.0, 26.0}) {
    const auto v = section_volume(5, p, Direction::diag(5, 2));
    CHECK(std::fabs(v.value - closed_form_a2(Kind::section, p)) < 1e-6);
  }
  const auto v4 = section_volume(7, 4.0, Direction::diag(7, 2));
  CHECK(v4.value == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-8));
}

TEST_CASE("a^(2) closed-form anchors for projections") {
  for (double q : {4.0 / 3.0, 1.5, 1.9}) {
    const auto v = projection_volume(5, q, Direction::diag(5, 2));
    CHECK(std::fabs(v.value - closed_form_a2(Kind::projection, q)) < 1e-6);
  }
  const auto v = projection_volume(4, 1.5, Direction::diag(4, 2));
  CHECK(v.value == doctest::Approx(std::pow(2.0, -1.0 / 6.0)).epsilon(1e-7));
}

TEST_CASE("closed_form_a2 values and domains") {
  CHECK(closed_form_a2(Kind::section, 2.0) == doctest::Approx(1.0));
  CHECK(closed_form_a2(Kind::section, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(closed_form_a2(Kind::projection, 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(closed_form_a2(Kind::section, 0.5), std::domain_error);
  CHECK_THROWS_AS(closed_form_a2(Kind::projection, 2.5), std::domain_error);
}

TEST_CASE("limit ratios") {
  CHECK(std::fabs(limit_ratio(Kind::section, 26.0) - 1.00020) < 5e-5);
  CHECK(limit_ratio(Kind::section, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(std::sqrt(3.0 / M_PI)).epsilon(1e-12));
  CHECK(limit_ratio(Kind::projection, 4.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(limit_ratio(Kind::projection, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(limit_ratio(Kind::section, 2.0), std::domain_error);
  CHECK_THROWS_AS(limit_ratio(Kind::projection, 1.0), std::domain_error);
}

TEST_CASE("permutation invariance and diag/vec consistency") {
  const auto v1 = section_volume(3, 3.0, Direction::from_coords({0.6, 0.8, 0.0}));
  const auto v2 = section_volume(3, 3.0, Direction::from_coords({0.8, 0.0, 0.6}));
  CHECK(v1.value == doctest::Approx(v2.value).epsilon(1e-10));

  const double r = 1.0 / std::sqrt(2.0);
  const auto vd = section_volume(4, 2.5, Direction::diag(4, 2));
  const auto vv = section_volume(4, 2.5, Direction::from_coords({r, r, 0.0, 0.0}));
  CHECK(vd.value == doctest::Approx(vv.value).epsilon(1e-9));

  const auto p1 = projection_volume(3, 1.5, Direction::from_coords({0.6, 0.0, 0.8}));
  const auto p2 = projection_volume(3, 1.5, Direction::from_coords({0.0, 0.8, 0.6}));
  CHECK(p1.value == doctest::Approx(p2.value).epsilon(1e-9));
}

TEST_CASE("Meyer-Pajor / Barthe-Naor monotonicity in the exponent") {
  const Direction a3 = Direction::diag(5, 3);
  double prev = 0.0;
  for (double p : {1.5, 2.0, 3.0, 5.0, 10.0}) {
    const double v = section_volume(5, p, a3).value;
    CHECK(v >= prev - 1e-8);
    prev = v;
  }
  prev = 0.0;
  for (double q : {1.25, 1.5, 1.75, 2.0}) {
    const double v = projection_volume(5, q, a3).value;
    CHECK(v >= prev - 1e-8);
    prev = v;
  }
}

TEST_CASE("quadrature agrees with Monte Carlo on random directions") {
  mc::McConfig mcfg;
  mcfg.samples = 300000;
  mcfg.seed = 91;

  const Direction a = Direction::from_coords({0.48, -0.6, 0.64});
  const auto quad_v = section_volume(3, 2.5, a);
  const auto mc_v = mc::mc_section(3, 2.5, a, mcfg);
  CHECK(std::fabs(quad_v.value - mc_v.mean) <=
        3.0 * (quad_v.err_estimate + mc_v.std_error));

  const Direction b = Direction::from_coords({0.6, 0.8});
  const auto quad_s = section_volume(2, 4.0, b);
  const auto mc_s = mc::mc_section(2, 4.0, b, mcfg);
  CHECK(std::fabs(quad_s.value - mc_s.mean) <= 3.0 * (quad_s.err_estimate + mc_s.std_error));

  const auto quad_p = projection_volume(3, 1.5, a);
  const auto mc_p = mc::mc_projection(3, 1.5, a, mcfg);
  CHECK(std::fabs(quad_p.value - mc_p.mean) <= 3.0 * (quad_p.err_estimate + mc_p.std_error));
}

TEST_CASE("diagonal scan: coordinate direction wins for p < 2 sections") {
  const auto scan = diagonal_scan(Kind::section, 10, 1.5);
  CHECK(scan.best_k == 1);
  CHECK(scan.table.size() == 10);
}

TEST_CASE("diagonal scan: full diagonal beats a^(2) at n = 100, p = 3") {
  const auto scan = diagonal_scan(Kind::section, 100, 3.0);
  double v2 = 0.0, v100 = 0.0;
  for (const auto& [k, est] : scan.table) {
    if (k == 2) v2 = est.value;
    if (k == 100) v100 = est.value;
  }
  CHECK(v100 > v2);
  CHECK(v2 > 0.0);
}

TEST_CASE("diagonal scan: projection diagonal below a^(2) at n = 30, q = 1.5") {
  const auto scan = diagonal_scan(Kind::projection, 30, 1.5);
  double v2 = 0.0, v30 = 0.0;
  for (const auto& [k, est] : scan.table) {
    if (k == 2) v2 = est.value;
    if (k == 30) v30 = est.value;
  }
  CHECK(v30 < v2);
}

TEST_CASE("diagonal ratio approaches the limit from below in n") {
  const double cf = closed_form_a2(Kind::section, 3.0);
  const double g3 = limit_ratio(Kind::section, 3.0);
  double prev_gap = 1.0;
  for (int n : {50, 100, 200, 400}) {
    const auto v = section_volume(n, 3.0, Direction::diag(n, n));
    const double gap = std::fabs(v.value / cf - g3);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("property: random directions are permutation- and split-invariant") {
  std::uint64_t state = 0xD1B54A32D192ED03ull;
  const auto rnd = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 4; ++trial) {
    // Random unit vector in R^4 with a zero coordinate thrown in.
    std::vector<double> v(4);
    double norm2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      v[i] = rnd() - 0.5;
      norm2 += v[i] * v[i];
    }
    v[3] = 0.0;
    for (int i = 0; i < 3; ++i) v[i] /= std::sqrt(norm2);
    std::vector<double> w = {v[2], v[3], v[0], v[1]};  // a fixed permutation

    const double p = 2.0 + 3.0 * rnd();
    const auto a = section_volume(4, p, Direction::from_coords(v));
    const auto b = section_volume(4, p, Direction::from_coords(w));
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));

    const double q = 1.3 + 0.7 * rnd();
    const auto pa = projection_volume(4, q, Direction::from_coords(v));
    const auto pb = projection_volume(4, q, Direction::from_coords(w));
    CHECK(pa.value == doctest::Approx(pb.value).epsilon(1e-8));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(section_volume(1, 3.0, Direction::diag(1, 1)), std::domain_error);
  CHECK_THROWS_AS(section_volume(5, 300.0, Direction::diag(5, 2)), std::domain_error);
  CHECK_THROWS_AS(projection_volume(5, 2.5, Direction::diag(5, 2)), std::domain_error);
  CHECK_THROWS_AS(section_volume(5, 3.0, Direction::diag(4, 2)), std::domain_error);
}
