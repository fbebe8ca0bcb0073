#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "heis/group.hpp"
#include "heis/regression.hpp"

namespace heis {

struct BoundingBox {
  double lo[3] = {0.0, 0.0, 0.0};
  double hi[3] = {0.0, 0.0, 0.0};
};

// Finite weighted point set standing in for a compactly supported measure.
class WeightedCloud {
 public:
  WeightedCloud(std::vector<HPoint> points, std::vector<double> weights,
                double nominal_dimension = std::numeric_limits<double>::quiet_NaN());
  // equal weights summing to one
  static WeightedCloud uniform(std::vector<HPoint> points,
                               double nominal_dimension = std::numeric_limits<double>::quiet_NaN());

  std::size_t size() const { return points_.size(); }
  const std::vector<HPoint>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const { return total_mass_; }
  const BoundingBox& box() const { return box_; }
  // dimension claimed by the generator; NaN when unknown
  double nominal_dimension() const { return nominal_dimension_; }
  bool has_nominal_dimension() const { return nominal_dimension_ == nominal_dimension_; }

 private:
  std::vector<HPoint> points_;
  std::vector<double> weights_;
  double total_mass_ = 0.0;
  BoundingBox box_;
  double nominal_dimension_;
};

WeightedCloud sample_cube(std::size_t n, std::uint64_t seed);
WeightedCloud sample_horizontal_line(const Angle& theta, std::size_t n, std::uint64_t seed);
WeightedCloud sample_vertical_plane(const Angle& theta, std::size_t n, std::uint64_t seed);

struct IfsMap {
  HPoint translation;
  double ratio = 0.5;
};

// Maps x -> translation * dilate(ratio, x).
struct IfsSpec {
  std::vector<IfsMap> maps;
  int depth = 1;
  std::size_t max_points = std::size_t{1} << 20;
};

// m = 8 (dimension 3) or 16 (dimension 4) contractions by 1/2 translated by
// lattice digits; m = 1 gives the single fixed point.
IfsSpec standard_ifs(int m, int depth, std::size_t max_points = std::size_t{1} << 20);

// centres pairwise farther apart than 2 * ratio * (1 + eps)
bool ifs_separated(const IfsSpec& spec, double eps = 1e-3);
// root D of sum ratio_i^D = 1
double similarity_dimension(const IfsSpec& spec);

// Images of the identity under all depth-fold compositions, equal weights.
// Words are subsampled uniformly without replacement when m^depth exceeds
// max_points.  The nominal dimension is NaN when the separation check fails.
WeightedCloud ifs_generate(const IfsSpec& spec, std::uint64_t seed);

// Smallest positive nearest-neighbour Korányi distance (0 for a single point).
double resolution_scale(const WeightedCloud& cloud);

// Total weight within Korányi distance r of c, brute force.
double ball_mass(const WeightedCloud& cloud, const HPoint& c, double r);

struct FrostmanOptions {
  std::size_t centers_per_radius = 256;
  std::uint64_t seed = 1;
  double min_span_decades = 0.5;
};

DimensionEstimate frostman_exponent(const WeightedCloud& cloud, const std::vector<double>& radii,
                                    const FrostmanOptions& options = {});

void write_cloud(std::ostream& out, const WeightedCloud& cloud, const std::vector<std::string>& header = {});
WeightedCloud read_cloud(std::istream& in);

}  // namespace heis
