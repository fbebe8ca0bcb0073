#include <doctest.h>

#include <cmath>
#include <vector>

#include "heis/lemma_lab.hpp"
#include "heis/random.hpp"
#include "heis/sweep.hpp"
#include "incidence_oracle.hpp"

using namespace heis;

using oracle::brute_count;

TEST_CASE("config helpers") {
  const IncidenceConfig c = make_incidence_config(3.0, 1.0 / 16, 0.25);
  CHECK(c.kappa == doctest::Approx(kappa(3.0)));
  CHECK(c.eta > 0.0);
  CHECK(c.alpha > 0.0);
  CHECK(c.alpha < 1.0);
  CHECK(c.annulus_inner == 0.25);
  CHECK(c.annulus_outer == 0.5);
  CHECK(c.theta_separation == doctest::Approx(std::pow(1.0 / 16, 4 * c.eta)));
  CHECK(c.line_threshold == doctest::Approx(std::pow(1.0 / 16, c.alpha)));
  CHECK(c.bound_exponent() == doctest::Approx((1 - c.alpha) * 2.0 - 1000 * c.eta));
  CHECK(c.regime_consistent());
  CHECK_FALSE(make_incidence_config(3.0, 1.0 / 16, 0.01).regime_consistent());

  const IncidenceConfig d = with_delta(c, 1.0 / 64);
  CHECK(d.delta == 1.0 / 64);
  CHECK(d.eta == c.eta);
  CHECK(d.line_threshold == doctest::Approx(std::pow(1.0 / 64, c.alpha)));
  CHECK(d.upper_bound() < c.upper_bound());
  CHECK_THROWS_AS(make_incidence_config(3.0, 0.0, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(with_delta(c, -1.0), std::invalid_argument);
}

TEST_CASE("exact mode matches a brute-force count") {
  const WeightedCloud cloud = sample_cube(300, 8);
  for (double delta : {1.0 / 16, 1.0 / 8}) {
    const IncidenceConfig c = make_incidence_config(3.0, delta, 0.25);
    const double want = brute_count(cloud, c, 64);
    const IncidenceReport r = incidence_experiment(cloud, c, {.exact_budget = std::uint64_t{1} << 40});
    CHECK(r.sampled_centers == 0);
    CHECK(r.standard_error == 0.0);
    CHECK(want > 0.0);
    CHECK(r.count == doctest::Approx(want).epsilon(1e-12));

    // Monte Carlo over triples agrees within three standard errors
    const IncidenceReport mc = incidence_experiment(cloud, c, {.exact_budget = 0, .triples_per_center = 4000});
    CHECK(mc.sampled_centers > 0);
    CHECK(mc.standard_error > 0.0);
    CHECK(std::abs(mc.count - want) <= 3 * mc.standard_error);
  }
}

TEST_CASE("count is monotone in delta and annulus width") {
  const WeightedCloud cloud = sample_cube(600, 9);
  const IncidenceConfig c = make_incidence_config(3.0, 1.0 / 16, 0.25);
  IncidenceConfig wider = c;
  wider.delta = 1.0 / 8;  // thresholds kept
  const double base = incidence_experiment(cloud, c).count;
  CHECK(incidence_experiment(cloud, wider).count >= base);
  IncidenceConfig narrow = c;
  narrow.annulus_outer = 0.375;
  CHECK(incidence_experiment(cloud, narrow).count <= base);
}

TEST_CASE("horizontal line has no admissible quadruples") {
  const WeightedCloud line = sample_horizontal_line(Angle(0.4), 400, 3);
  const IncidenceConfig c = make_incidence_config(3.0, 1.0 / 16, 0.25);
  const IncidenceReport r = incidence_experiment(line, c);
  CHECK(r.related_pairs > 0);
  CHECK(r.count == 0.0);
}

TEST_CASE("permissive config counts every quadruple") {
  const std::size_t n = 60;
  const WeightedCloud cloud = sample_cube(n, 5);
  IncidenceConfig c;
  c.delta = 10.0;
  c.t = 0.0;
  c.theta_separation = 0.0;
  c.line_threshold = 0.0;
  c.annulus_inner = 0.0;
  c.annulus_outer = 100.0;
  const IncidenceReport r = incidence_experiment(cloud, c, {.exact_budget = std::uint64_t{1} << 40});
  // only triples with w1 = w3 fail: their planar parts span no line
  CHECK(r.count == doctest::Approx(1.0 - 1.0 / static_cast<double>(n)).epsilon(1e-12));
  CHECK(r.related_pairs == n * n);
}

TEST_CASE("small clouds are inconclusive") {
  const WeightedCloud cloud = sample_cube(20, 6);
  const IncidenceReport r = incidence_experiment(cloud, make_incidence_config(3.0, 1.0 / 32, 0.25));
  CHECK(r.inconclusive);
  CHECK_THROWS_AS(incidence_experiment(cloud, make_incidence_config(3.0, 0.1, 0.25), {.theta_grid = 0}),
                  std::invalid_argument);
}

TEST_CASE("sweep fits on log inverse delta") {
  const WeightedCloud cloud = sample_cube(1500, 10);
  const IncidenceConfig c = make_incidence_config(3.0, 1.0 / 8, 0.25);
  const IncidenceSweep s = incidence_sweep(cloud, c, {1.0 / 8, 1.0 / 16, 1.0 / 32});
  REQUIRE(s.reports.size() == 3);
  CHECK(s.bound_slope == doctest::Approx(-std::min(1.5, c.bound_exponent())));
  CHECK(s.fitted);
  CHECK(s.slope < 0.0);
  const IncidenceSweep again = incidence_sweep(cloud, c, {1.0 / 8, 1.0 / 16, 1.0 / 32});
  CHECK(again.slope == s.slope);
  CHECK_THROWS_AS(incidence_sweep(cloud, c, {}), std::invalid_argument);
}
