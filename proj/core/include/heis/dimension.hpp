#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "heis/lattice.hpp"
#include "heis/measures.hpp"
#include "heis/regression.hpp"

namespace heis {

struct BoxCountStats {
  std::size_t occupied = 0;
  std::size_t singletons = 0;  // cells holding exactly one point
  std::size_t doubletons = 0;  // cells holding exactly two points

  // occupancy corrected for unseen cells: N + f1^2 / (2 f2), N + f1 (f1 - 1) / 2 when f2 = 0;
  // N itself when every occupied cell is a singleton
  double chao1() const;
};

enum class CountCorrection { none, chao1 };

struct BoxDimensionOptions {
  CellShape shape = CellShape::axis;
  std::vector<HPoint> anchors;  // empty: origin only; counts are averaged over anchors
  CountCorrection correction = CountCorrection::chao1;
  double resolution = -1.0;     // negative: computed from the cloud
};

std::size_t box_count(const WeightedCloud& cloud, double delta, CellShape shape = CellShape::axis);
BoxCountStats box_count_stats(std::span<const HPoint> points, double delta, const HPoint& anchor,
                              CellShape shape = CellShape::axis);

// k anchors uniform in the cell of the identity at scale `scale`
std::vector<HPoint> random_anchors(std::size_t k, double scale, std::uint64_t seed);

// 2^-1 down to max(2^-4, 4 * resolution), ratio 2
std::vector<double> default_scales(double resolution);

DimensionEstimate box_dimension(const WeightedCloud& cloud, const std::vector<double>& scales,
                                const BoxDimensionOptions& options = {});

BoxCountStats chart_box_count(std::span<const VerticalChartPoint> points, double delta);
DimensionEstimate chart_box_dimension(std::span<const VerticalChartPoint> points, const std::vector<double>& scales,
                                      CountCorrection correction = CountCorrection::chao1);

struct CorrelationOptions {
  std::size_t max_centers = 2048;  // larger clouds use a seeded subsample of centres against all points
  std::uint64_t seed = 1;
};

// Slope of log pair fraction against log r.
DimensionEstimate correlation_dimension(const WeightedCloud& cloud, const std::vector<double>& scales,
                                        const CorrelationOptions& options = {});

}  // namespace heis
