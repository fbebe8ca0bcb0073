#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "heis/dimension.hpp"
#include "heis/measures.hpp"

namespace heis {

// Lower bounds for the dimension of vertical projections of a set of
// dimension s.
double bound_theorem(double s);  // s in (2,4]
double bound_bdfm(double s);     // s in [0,4]
double bound_fh(double s);       // s in [2,4]

double kappa(double s);
// 1e-4 * min{kappa - s/2, kappa - 3(s-1)/(4-1/s)}; throws std::domain_error
// when that is not positive
double eta_choice(double s, double kappa);
// (s - kappa + 1000 eta) / s; throws std::domain_error outside (0,1)
double alpha(double s, double kappa, double eta);

// (2, (12 + sqrt(109)) / 7): where bound_theorem beats both earlier bounds
std::pair<double, double> improvement_interval();

// theta_k = k pi / n
std::vector<Angle> angle_grid(std::size_t n);

std::vector<VerticalChartPoint> project_cloud(const WeightedCloud& cloud, const Angle& theta);

double pushforward_ball_mass(const WeightedCloud& cloud, const Angle& theta, const HPoint& y, double delta);

struct ZDeltaReport {
  double delta = 0.0;
  double s = 0.0;
  double eta = 0.0;
  std::size_t theta_grid = 0;
  std::vector<std::size_t> sample_indices;
  std::vector<double> bad_theta_fraction;  // per sampled point
  double bad_point_mass = 0.0;             // estimated mass of points with fraction >= delta^eta
  double mean_fraction = 0.0;
  // the heaviest single point already reaches delta^s, so every sampled
  // point meets the threshold through its own atom at every angle
  bool atom_floor = false;
};

ZDeltaReport z_delta_fraction(const WeightedCloud& cloud, double delta, double s, double eta, std::size_t theta_grid,
                              std::size_t sample_points, std::uint64_t seed);

struct SweepResult {
  std::vector<Angle> thetas;
  std::vector<DimensionEstimate> per_theta_dimension;
  double nominal_s = 0.0;
  double bound_theorem = 0.0;  // NaN outside the domain of each bound
  double bound_bdfm = 0.0;
  double bound_fh = 0.0;
};

SweepResult sweep_dimension(const WeightedCloud& cloud, std::size_t theta_grid, const std::vector<double>& scales,
                            CountCorrection correction = CountCorrection::chao1);

}  // namespace heis
