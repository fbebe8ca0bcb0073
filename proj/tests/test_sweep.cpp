#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heis/measures.hpp"
#include "heis/random.hpp"
#include "heis/sweep.hpp"

using namespace heis;

TEST_CASE("bound curves at reference points") {
  CHECK(bound_theorem(2.5) == doctest::Approx(1.25));
  CHECK(2.5 * 4.5 / 9.0 == doctest::Approx(1.25));
  CHECK(bound_theorem(4.0) == doctest::Approx(8.0 / 5.0));
  CHECK(bound_theorem(3.0) == doctest::Approx(15.0 / 11.0));
  CHECK(bound_theorem(2.2) == doctest::Approx(1.1));
  CHECK_THROWS_AS(bound_theorem(2.0), std::domain_error);
  CHECK_THROWS_AS(bound_theorem(4.01), std::domain_error);
  CHECK_THROWS_AS(bound_theorem(NAN), std::domain_error);

  CHECK(bound_bdfm(0.5) == 0.5);
  CHECK(bound_bdfm(2.0) == 1.0);
  CHECK(bound_bdfm(4.0) == 3.0);
  CHECK(bound_bdfm(3.0) == 1.0);
  CHECK_THROWS_AS(bound_bdfm(-0.1), std::domain_error);

  CHECK(bound_fh(2.0) == 1.0);
  CHECK(bound_fh(3.0) == doctest::Approx(1.0 + 2.0 / 288.0));
  CHECK(bound_fh(4.0) == doctest::Approx(1.0 + 6.0 / 512.0));
  CHECK_THROWS_AS(bound_fh(1.5), std::domain_error);
}

TEST_CASE("kappa, eta and alpha") {
  const double b2 = 3.0 * 1.5 / (4.0 - 1.0 / 2.5);
  CHECK(b2 == doctest::Approx(1.25));
  CHECK(kappa(2.5) == doctest::Approx(1.25));
  CHECK(kappa(4.0) == doctest::Approx(36.0 / 15.0));
  CHECK(kappa(2.2) == doctest::Approx(1.1));

  // eta vanishes at kappa(s) itself
  CHECK_THROWS_AS(eta_choice(3.0, kappa(3.0)), std::domain_error);
  CHECK_THROWS_AS(eta_choice(3.0, 3.0), std::domain_error);
  const double k = kappa(3.0) + 0.01;
  const double eta = eta_choice(3.0, k);
  CHECK(eta == doctest::Approx(1e-6));
  const double a = alpha(3.0, k, eta);
  CHECK(a == doctest::Approx((3.0 - k + 1000 * eta) / 3.0));
  CHECK(a > 0.0);
  CHECK(a < 1.0);
  CHECK_THROWS_AS(alpha(3.0, 3.5, 1e-6), std::domain_error);
}

TEST_CASE("theorem bound is s minus kappa and continuous") {
  for (int i = 1; i <= 1000; ++i) {
    const double s = 2.0 + 2.0 * i / 1000.0;
    CHECK(std::abs(bound_theorem(s) - (s - kappa(s))) < 1e-12);
  }
  const double e = 1e-9;
  CHECK(std::abs(bound_theorem(2.5 + e) - bound_theorem(2.5)) < 1e-8);
}

TEST_CASE("improvement interval") {
  const auto [lo, hi] = improvement_interval();
  CHECK(lo == 2.0);
  CHECK(hi == doctest::Approx(3.205755).epsilon(1e-6));
  CHECK(7 * hi * hi - 24 * hi + 5 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bound_theorem(hi) == doctest::Approx(2 * hi - 5).epsilon(1e-12));
  for (int i = 1; i <= 1000; ++i) {
    const double s = 2.0 + 2.0 * i / 1000.0;
    const double prior = std::max(bound_bdfm(s), bound_fh(s));
    if (s < hi) {
      CHECK(bound_theorem(s) > prior);
    } else {
      CHECK(bound_theorem(s) <= prior);
    }
  }
  CHECK(bound_theorem(3.0) > std::max(bound_bdfm(3.0), bound_fh(3.0)));
  CHECK(bound_theorem(3.5) == doctest::Approx(3.5 * 5.5 / 13.0));
  CHECK(bound_theorem(3.5) < bound_bdfm(3.5));
}

TEST_CASE("angle grid") {
  const auto g = angle_grid(8);
  REQUIRE(g.size() == 8);
  CHECK(g[0].radians() == 0.0);
  CHECK(g[4].radians() == doctest::Approx(std::numbers::pi / 2));
  CHECK(g[7].radians() < std::numbers::pi);
  CHECK_THROWS_AS(angle_grid(0), std::invalid_argument);
}

TEST_CASE("pushforward ball mass") {
  const Angle th(0.8);
  const WeightedCloud c = sample_cube(2000, 3);
  const HPoint y = c.points()[17];
  const double big = 100.0;
  CHECK(pushforward_ball_mass(c, th, y, big) == doctest::Approx(c.total_mass()));

  const WeightedCloud solo({HPoint(0.2, 0.3, 0.4)}, {0.7});
  for (double d : {1e-6, 0.1, 10.0}) CHECK(pushforward_ball_mass(solo, th, solo.points()[0], d) == 0.7);

  // projections at chart distance 1: lambda1 differs by 1
  const Angle t0(0.0);
  const WeightedCloud two({embed(t0, {0.0, 0.0}), embed(t0, {1.0, 0.0})}, {0.25, 0.75});
  CHECK(pushforward_ball_mass(two, t0, two.points()[0], 0.5) == 0.25);
  CHECK(pushforward_ball_mass(two, t0, two.points()[0], 1.0) == 1.0);

  // oracle through the group projection and the Koranyi distance
  const HPoint py = vertical_projection(th, y);
  for (double d : {0.05, 0.1, 0.2}) {
    double want = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (koranyi_dist(vertical_projection(th, c.points()[i]), py) <= d) want += c.weights()[i];
    }
    CHECK(pushforward_ball_mass(c, th, y, d) == doctest::Approx(want));
  }

  double prev = 0.0;
  for (double d = 0.01; d < 2.0; d *= 1.3) {
    const double m = pushforward_ball_mass(c, th, y, d);
    CHECK(m >= prev);
    prev = m;
  }
  std::vector<HPoint> rev(c.points().rbegin(), c.points().rend());
  const WeightedCloud r = WeightedCloud::uniform(rev);
  CHECK(pushforward_ball_mass(r, th, y, 0.1) == doctest::Approx(pushforward_ball_mass(c, th, y, 0.1)));
  CHECK_THROWS_AS(pushforward_ball_mass(c, th, y, 0.0), std::invalid_argument);
}

TEST_CASE("z delta fractions against brute force") {
  const WeightedCloud c = sample_cube(400, 5);
  const double delta = 0.125, s = 2.5;
  const ZDeltaReport rep = z_delta_fraction(c, delta, s, 0.5, 64, 20, 7);
  const auto grid = angle_grid(64);
  for (std::size_t i = 0; i < rep.sample_indices.size(); ++i) {
    const HPoint& y = c.points()[rep.sample_indices[i]];
    std::size_t heavy = 0;
    for (const Angle& th : grid) heavy += pushforward_ball_mass(c, th, y, delta) >= std::pow(delta, s);
    CHECK(rep.bad_theta_fraction[i] == doctest::Approx(heavy / 64.0));
  }
  for (double f : rep.bad_theta_fraction) {
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
  CHECK(rep.bad_point_mass <= c.total_mass() + 1e-12);
  CHECK_THROWS_AS(z_delta_fraction(c, delta, s, 0.5, 32, 20, 7), std::invalid_argument);
  CHECK_THROWS_AS(z_delta_fraction(c, 0.0, s, 0.5, 64, 20, 7), std::invalid_argument);
}

TEST_CASE("z delta limiting thresholds") {
  const WeightedCloud c = sample_cube(2000, 9);
  const ZDeltaReport big_s = z_delta_fraction(c, 1.0 / 64, 40.0, 0.01, 64, 50, 1);
  CHECK(big_s.bad_point_mass == doctest::Approx(c.total_mass()));
  const ZDeltaReport zero_s = z_delta_fraction(c, 1.0 / 64, 0.0, 0.01, 64, 50, 1);
  CHECK(zero_s.bad_point_mass == 0.0);
  CHECK(zero_s.mean_fraction == 0.0);
  CHECK_FALSE(zero_s.atom_floor);
  CHECK(big_s.atom_floor);
}

TEST_CASE("z delta grid refinement is stable") {
  const WeightedCloud c = sample_cube(3000, 11);
  const ZDeltaReport a = z_delta_fraction(c, 1.0 / 16, 2.8, 0.01, 64, 40, 2);
  const ZDeltaReport b = z_delta_fraction(c, 1.0 / 16, 2.8, 0.01, 128, 40, 2);
  REQUIRE(a.sample_indices == b.sample_indices);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.bad_theta_fraction.size(); ++i)
    worst = std::max(worst, std::abs(a.bad_theta_fraction[i] - b.bad_theta_fraction[i]));
  MESSAGE("max per-point change " << worst);
  CHECK(std::abs(a.mean_fraction - b.mean_fraction) <= 1.0 / 64);
}

TEST_CASE("z delta fraction decays as delta shrinks") {
  const WeightedCloud c = sample_cube(10000, 1);
  for (double s : {2.8}) {
    const double eta = 1e-4 * (kappa(s) + 0.01 - s / 2);
    double prev = 2.0;
    for (int k = 3; k <= 7; ++k) {
      const double delta = std::ldexp(1.0, -k);
      const ZDeltaReport r = z_delta_fraction(c, delta, s, eta, 64, 100, 3);
      CHECK(r.atom_floor == (1e-4 >= std::pow(delta, s)));
      if (r.atom_floor) {
        CHECK(r.mean_fraction == 1.0);
        continue;
      }
      CHECK(r.mean_fraction <= prev);
      prev = r.mean_fraction;
    }
  }
}

TEST_CASE("sweep of reference clouds") {
  const auto scales = geometric_scales(0.25, 1.0 / 32);
  const std::size_t n = 16;
  const Angle t0 = angle_grid(n)[4];
  const SweepResult plane = sweep_dimension(sample_vertical_plane(t0, 20000, 1), n, scales);
  REQUIRE(plane.per_theta_dimension.size() == n);
  CHECK(std::abs(plane.per_theta_dimension[4].slope - 3.0) < 0.3);
  CHECK(plane.nominal_s == 3.0);
  CHECK(plane.bound_theorem == doctest::Approx(15.0 / 11.0));
  CHECK(plane.bound_bdfm == 1.0);
  for (const auto& e : plane.per_theta_dimension) CHECK(e.r_squared >= 0.0);

  const SweepResult point = sweep_dimension(WeightedCloud({HPoint(0.1, 0.2, 0.3)}, {1.0}), n, scales);
  for (const auto& e : point.per_theta_dimension) CHECK(e.slope == 0.0);
  CHECK(std::isnan(point.bound_theorem));
  CHECK(std::isnan(point.bound_fh));

  const SweepResult ifs = sweep_dimension(ifs_generate(standard_ifs(8, 6), 1), n, scales);
  for (std::size_t k = 1; k < n; ++k) {
    CHECK(ifs.per_theta_dimension[k].slope >= bound_theorem(3.0) - 0.2);
  }
  CHECK_THROWS_AS(sweep_dimension(sample_cube(10, 1), 8, scales), std::invalid_argument);
}
