#include <doctest.h>

#include <cmath>
#include <numbers>
#include <algorithm>
#include <set>
#include <tuple>
#include <sstream>

#include "heis/measures.hpp"
#include "heis/random.hpp"

using namespace heis;

namespace {

double mass(const WeightedCloud& c) {
  double s = 0.0;
  for (double w : c.weights()) s += w;
  return s;
}

}  // namespace

TEST_CASE("cube sampler") {
  CHECK_THROWS_AS(sample_cube(0, 1), std::invalid_argument);
  const WeightedCloud one = sample_cube(1, 3);
  CHECK(one.size() == 1);
  CHECK(one.weights()[0] == 1.0);
  const WeightedCloud a = sample_cube(5000, 7), b = sample_cube(5000, 7), c = sample_cube(5000, 8);
  CHECK(a.points() == b.points());
  CHECK_FALSE(a.points() == c.points());
  CHECK(std::abs(mass(a) - 1.0) < 1e-12);
  for (const HPoint& p : a.points()) {
    CHECK(p.x() >= 0.0);
    CHECK(p.t() < 1.0);
  }
  CHECK(a.nominal_dimension() == 4.0);
}

TEST_CASE("line and plane samplers") {
  const Angle th(0.7);
  const WeightedCloud line = sample_horizontal_line(th, 1000, 2);
  for (const HPoint& p : line.points()) {
    CHECK(p.t() == 0.0);
    CHECK(std::abs(wedge(p.z(), th.direction())) < 1e-15);
  }
  const WeightedCloud plane = sample_vertical_plane(th, 1000, 2);
  for (const HPoint& p : plane.points()) CHECK_NOTHROW(vertical_chart(th, p));
  const WeightedCloud plane0 = sample_vertical_plane(Angle(0.0), 100, 2);
  for (const HPoint& p : plane0.points()) CHECK(std::abs(p.x()) < 1e-15);
  CHECK(std::abs(mass(plane) - 1.0) < 1e-12);
}

TEST_CASE("weighted cloud invariants") {
  CHECK_THROWS_AS(WeightedCloud({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedCloud({HPoint()}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedCloud({HPoint()}, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedCloud({HPoint()}, {0.0}), std::invalid_argument);
  const WeightedCloud c({HPoint(1, 2, 3), HPoint(-1, 0, 5)}, {0.25, 0.5});
  CHECK(c.total_mass() == 0.75);
  CHECK(c.box().lo[0] == -1.0);
  CHECK(c.box().hi[2] == 5.0);
}

TEST_CASE("standard IFS") {
  const IfsSpec s8 = standard_ifs(8, 3), s16 = standard_ifs(16, 3);
  CHECK(s8.maps.size() == 8);
  CHECK(s16.maps.size() == 16);
  CHECK(ifs_separated(s8));
  CHECK(ifs_separated(s16));
  CHECK(similarity_dimension(s8) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(similarity_dimension(s16) == doctest::Approx(4.0).epsilon(1e-12));

  const WeightedCloud one = ifs_generate(standard_ifs(1, 6), 1);
  CHECK(one.size() == 1);

  IfsSpec crowded = standard_ifs(8, 2);
  crowded.maps[1].translation = HPoint(0.1, 0, 0);
  CHECK_FALSE(ifs_separated(crowded));
  CHECK_FALSE(ifs_generate(crowded, 1).has_nominal_dimension());
}

TEST_CASE("IFS points are the images of the identity under all words") {
  const IfsSpec spec = standard_ifs(8, 3);
  const WeightedCloud c = ifs_generate(spec, 1);
  REQUIRE(c.size() == 512);
  // recursive oracle: level L = union of f_i(level L-1)
  std::vector<HPoint> level{HPoint()};
  for (int d = 0; d < 3; ++d) {
    std::vector<HPoint> next;
    for (const auto& m : spec.maps) {
      for (const HPoint& x : level) next.push_back(group_mul(m.translation, dilate(m.ratio, x)));
    }
    level = next;
  }
  auto key = [](const HPoint& p) { return std::tuple(std::round(p.x() * 1e9), std::round(p.y() * 1e9), std::round(p.t() * 1e9)); };
  std::set<std::tuple<double, double, double>> a, b;
  for (const HPoint& p : c.points()) a.insert(key(p));
  for (const HPoint& p : level) b.insert(key(p));
  CHECK(a.size() == 512);
  CHECK(a == b);
}

TEST_CASE("IFS subsampling is deterministic and without replacement") {
  IfsSpec spec = standard_ifs(16, 6, 5000);
  const WeightedCloud a = ifs_generate(spec, 3), b = ifs_generate(spec, 3);
  CHECK(a.size() == 5000);
  CHECK(a.points() == b.points());
  std::set<std::tuple<double, double, double>> seen;
  for (const HPoint& p : a.points()) seen.insert({p.x(), p.y(), p.t()});
  CHECK(seen.size() == 5000);
  CHECK(std::abs(mass(a) - 1.0) < 1e-12);
}

TEST_CASE("resolution scale matches brute force") {
  const WeightedCloud c = sample_cube(1500, 4);
  double best = INFINITY;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) best = std::min(best, koranyi_dist(c.points()[i], c.points()[j]));
  }
  CHECK(resolution_scale(c) == best);
  CHECK(resolution_scale(WeightedCloud::uniform({HPoint(1, 1, 1)})) == 0.0);
  CHECK(resolution_scale(WeightedCloud::uniform({HPoint(), HPoint(0, 0, 0.25)})) == doctest::Approx(0.5));
}

TEST_CASE("Frostman exponent") {
  const WeightedCloud atom = WeightedCloud::uniform({HPoint(0.5, 0.5, 0.5)});
  const DimensionEstimate e0 = frostman_exponent(atom, {0.01, 0.03, 0.1, 0.3});
  CHECK(e0.slope == 0.0);
  CHECK(e0.degenerate);

  const WeightedCloud line = sample_horizontal_line(Angle(0.3), 10000, 5);
  const DimensionEstimate e1 = frostman_exponent(line, {0.003, 0.01, 0.03, 0.1, 0.3});
  CHECK(e1.slope == doctest::Approx(1.0).epsilon(0.2));

  // ball masses through the index agree with brute force
  const WeightedCloud cube = sample_cube(4000, 6);
  const std::vector<double> radii{0.1, 0.2, 0.4};
  FrostmanOptions opt;
  opt.centers_per_radius = 64;
  opt.min_span_decades = 0.3;
  const DimensionEstimate e2 = frostman_exponent(cube, radii, opt);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    double best = 0.0;
    auto g = stream(opt.seed, k);
    std::vector<double> cum(cube.size());
    double s = 0.0;
    for (std::size_t i = 0; i < cube.size(); ++i) cum[i] = (s += cube.weights()[i]);
    for (std::size_t c = 0; c < opt.centers_per_radius; ++c) {
      const double u = uniform01(g) * cum.back();
      const std::size_t idx = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
      best = std::max(best, ball_mass(cube, cube.points()[idx], radii[k]));
    }
    CHECK(e2.samples[k].value == doctest::Approx(best).epsilon(1e-12));
  }
  CHECK_THROWS_AS(frostman_exponent(cube, {0.1, 0.11, 0.12}), std::invalid_argument);
  CHECK_THROWS_AS(frostman_exponent(cube, {0.1, 0.3}), std::invalid_argument);
}

TEST_CASE("cloud serialization round trip") {
  const WeightedCloud c = ifs_generate(standard_ifs(8, 2), 1);
  std::stringstream ss;
  write_cloud(ss, c, {"kind=ifs8"});
  const std::string text = ss.str();
  CHECK(text.rfind("#heis-cloud v1 n=64\n", 0) == 0);
  const WeightedCloud back = read_cloud(ss);
  CHECK(back.points() == c.points());
  CHECK(back.weights() == c.weights());
  CHECK(back.nominal_dimension() == c.nominal_dimension());

  std::istringstream bad("#heis-cloud v1 n=2\n0 0 0 1\n");
  CHECK_THROWS_AS(read_cloud(bad), std::invalid_argument);
  std::istringstream untagged("0 0 0 1\n");
  CHECK_THROWS_AS(read_cloud(untagged), std::invalid_argument);
}
