#include "heis/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "heis/lattice.hpp"
#include "heis/parallel.hpp"
#include "heis/random.hpp"

namespace heis {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double second_branch(double s) { return 3.0 * (s - 1.0) / (4.0 - 1.0 / s); }

void require_range(double s, double lo, double hi, bool open_lo, const char* who) {
  const bool ok = (open_lo ? s > lo : s >= lo) && s <= hi;
  if (!ok || !std::isfinite(s)) throw std::domain_error(std::string(who) + ": s outside its domain");
}

}  // namespace

double bound_theorem(double s) {
  require_range(s, 2.0, 4.0, true, "bound_theorem");
  if (s <= 2.5) return s / 2.0;
  return s * (s + 2.0) / (4.0 * s - 1.0);
}

double bound_bdfm(double s) {
  require_range(s, 0.0, 4.0, false, "bound_bdfm");
  if (s < 1.0) return s;
  if (s < 3.0) return 1.0;
  return 2.0 * s - 5.0;
}

double bound_fh(double s) {
  require_range(s, 2.0, 4.0, false, "bound_fh");
  return 1.0 + (s - 1.0) * (s - 2.0) / (32.0 * s * s);
}

double kappa(double s) {
  require_range(s, 2.0, 4.0, true, "kappa");
  return std::max(s / 2.0, second_branch(s));
}

double eta_choice(double s, double k) {
  require_range(s, 2.0, 4.0, true, "eta_choice");
  if (!(k < s)) throw std::domain_error("eta_choice: need kappa < s");
  const double eta = 1e-4 * std::min(k - s / 2.0, k - second_branch(s));
  if (!(eta > 0.0)) throw std::domain_error("eta_choice: kappa does not exceed both branches");
  return eta;
}

double alpha(double s, double k, double eta) {
  require_range(s, 2.0, 4.0, true, "alpha");
  const double a = (s - k + 1000.0 * eta) / s;
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error("alpha: value outside (0,1)");
  return a;
}

std::pair<double, double> improvement_interval() { return {2.0, (12.0 + std::sqrt(109.0)) / 7.0}; }

std::vector<Angle> angle_grid(std::size_t n) {
  if (n == 0) throw std::invalid_argument("angle_grid: empty grid");
  std::vector<Angle> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.emplace_back(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  return out;
}

std::vector<VerticalChartPoint> project_cloud(const WeightedCloud& cloud, const Angle& theta) {
  std::vector<VerticalChartPoint> out(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) out[i] = projected_chart(theta, cloud.points()[i]);
  return out;
}

double pushforward_ball_mass(const WeightedCloud& cloud, const Angle& theta, const HPoint& y, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("pushforward_ball_mass: delta must be positive");
  const VerticalChartPoint c = projected_chart(theta, y);
  double mass = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (chart_distance(c, projected_chart(theta, cloud.points()[i])) <= delta) mass += cloud.weights()[i];
  }
  return mass;
}

ZDeltaReport z_delta_fraction(const WeightedCloud& cloud, double delta, double s, double eta, std::size_t theta_grid,
                              std::size_t sample_points, std::uint64_t seed) {
  if (!(delta > 0.0) || !(s >= 0.0) || !(eta > 0.0)) throw std::invalid_argument("z_delta_fraction: bad parameters");
  if (theta_grid < 64) throw std::invalid_argument("z_delta_fraction: theta grid must have at least 64 angles");
  if (sample_points == 0) throw std::invalid_argument("z_delta_fraction: need sample points");

  ZDeltaReport rep;
  rep.delta = delta;
  rep.s = s;
  rep.eta = eta;
  rep.theta_grid = theta_grid;

  std::vector<double> cumulative(cloud.size());
  std::partial_sum(cloud.weights().begin(), cloud.weights().end(), cumulative.begin());
  auto g = stream(seed, 0x2d);
  rep.sample_indices.resize(sample_points);
  for (auto& idx : rep.sample_indices) {
    const double u = uniform01(g) * cumulative.back();
    idx = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin()),
        cloud.size() - 1);
  }

  const double threshold = std::pow(delta, s);
  rep.atom_floor = *std::max_element(cloud.weights().begin(), cloud.weights().end()) >= threshold;
  const std::vector<Angle> grid = angle_grid(theta_grid);
  // hits[k][i]: whether sampled point i has a heavy ball at angle k
  std::vector<std::vector<unsigned char>> hits(theta_grid, std::vector<unsigned char>(sample_points, 0));
  parallel_chunks(theta_grid, 1, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t k = b; k < e; ++k) {
      const std::vector<VerticalChartPoint> chart = project_cloud(cloud, grid[k]);
      const ChartIndex index(chart, delta);
      for (std::size_t i = 0; i < sample_points; ++i) {
        double mass = 0.0;
        index.visit_ball(chart[rep.sample_indices[i]], delta, [&](std::size_t j, double) { mass += cloud.weights()[j]; });
        hits[k][i] = mass >= threshold ? 1 : 0;
      }
    }
  });

  const double cutoff = std::pow(delta, eta);
  rep.bad_theta_fraction.resize(sample_points);
  std::size_t bad = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < sample_points; ++i) {
    std::size_t count = 0;
    for (std::size_t k = 0; k < theta_grid; ++k) count += hits[k][i];
    const double f = static_cast<double>(count) / static_cast<double>(theta_grid);
    rep.bad_theta_fraction[i] = f;
    sum += f;
    if (f >= cutoff) ++bad;
  }
  rep.mean_fraction = sum / static_cast<double>(sample_points);
  rep.bad_point_mass = cloud.total_mass() * static_cast<double>(bad) / static_cast<double>(sample_points);
  return rep;
}

SweepResult sweep_dimension(const WeightedCloud& cloud, std::size_t theta_grid, const std::vector<double>& scales,
                            CountCorrection correction) {
  if (theta_grid < 16) throw std::invalid_argument("sweep_dimension: theta grid must have at least 16 angles");
  SweepResult res;
  res.thetas = angle_grid(theta_grid);
  res.per_theta_dimension.resize(theta_grid);
  parallel_chunks(theta_grid, 1, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t k = b; k < e; ++k) {
      const std::vector<VerticalChartPoint> chart = project_cloud(cloud, res.thetas[k]);
      res.per_theta_dimension[k] = chart_box_dimension(chart, scales, correction);
    }
  });
  const double s = cloud.nominal_dimension();
  res.nominal_s = s;
  auto guarded = [&](double (*f)(double)) {
    try {
      return f(s);
    } catch (const std::domain_error&) {
      return kNaN;
    }
  };
  res.bound_theorem = guarded(bound_theorem);
  res.bound_bdfm = guarded(bound_bdfm);
  res.bound_fh = guarded(bound_fh);
  return res;
}

}  // namespace heis
