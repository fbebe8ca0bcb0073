#include "heis/lattice.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace heis {

namespace {

constexpr double kIndexLimit = 1e15;

std::int64_t checked_floor(double v) {
  if (!(std::abs(v) < kIndexLimit)) throw std::invalid_argument("cell index out of range; scale too small");
  return static_cast<std::int64_t>(std::floor(v));
}

template <class KeyFn>
void build_cells(std::size_t n, KeyFn key_of, std::vector<std::uint32_t>& order,
                 std::unordered_map<CellKey, std::pair<std::uint32_t, std::uint32_t>, CellKeyHash>& cells) {
  if (n >= std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("index: too many points");
  std::vector<std::pair<CellKey, std::uint32_t>> keyed(n);
  for (std::size_t i = 0; i < n; ++i) keyed[i] = {key_of(i), static_cast<std::uint32_t>(i)};
  std::sort(keyed.begin(), keyed.end());
  order.resize(n);
  cells.reserve(n / 2 + 1);
  std::size_t begin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = keyed[i].second;
    if (i + 1 == n || keyed[i + 1].first != keyed[i].first) {
      cells.emplace(keyed[i].first, std::pair{static_cast<std::uint32_t>(begin), static_cast<std::uint32_t>(i + 1)});
      begin = i + 1;
    }
  }
}

}  // namespace

CellCoords locate_cell(const HPoint& p, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("cell scale must be positive");
  const double X = p.x() / scale;
  const double Y = p.y() / scale;
  const double T = p.t() / (scale * scale);
  CellCoords out{};
  const std::int64_t a = checked_floor(X);
  const std::int64_t b = checked_floor(Y);
  const double ux = X - static_cast<double>(a);
  const double uy = Y - static_cast<double>(b);
  const double tl = T + 2.0 * (static_cast<double>(a) * uy - static_cast<double>(b) * ux);
  const std::int64_t c = checked_floor(tl);
  out.key = {a, b, c};
  out.u[0] = ux;
  out.u[1] = uy;
  out.u[2] = tl - static_cast<double>(c);
  return out;
}

CellKey cell_of(const HPoint& p, double scale, CellShape shape) {
  if (shape == CellShape::lattice) return locate_cell(p, scale).key;
  if (!(scale > 0.0)) throw std::invalid_argument("cell scale must be positive");
  return {checked_floor(p.x() / scale), checked_floor(p.y() / scale), checked_floor(p.t() / (scale * scale))};
}

CellKey cell_of(const HPoint& p, double scale, const HPoint& anchor, CellShape shape) {
  if (shape == CellShape::lattice) return locate_cell(group_mul(group_inv(anchor), p), scale).key;
  return cell_of(HPoint(p.x() - anchor.x(), p.y() - anchor.y(), p.t() - anchor.t()), scale, shape);
}

HPoint cell_point(const CellKey& key, double scale, double ux, double uy, double ut) {
  const double a = static_cast<double>(key.a), b = static_cast<double>(key.b);
  const double t = static_cast<double>(key.c) + ut - 2.0 * (a * uy - ux * b);
  return HPoint(scale * (a + ux), scale * (b + uy), scale * scale * t);
}

BallIndex::BallIndex(std::span<const HPoint> points, double scale) : scale_(scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("BallIndex: scale must be positive");
  build_cells(points.size(), [&](std::size_t i) { return locate_cell(points[i], scale).key; }, ids_, cells_);
  xs_.resize(ids_.size());
  ys_.resize(ids_.size());
  ts_.resize(ids_.size());
  for (std::size_t m = 0; m < ids_.size(); ++m) {
    const HPoint& p = points[ids_[m]];
    xs_[m] = p.x();
    ys_[m] = p.y();
    ts_[m] = p.t();
  }
}

ChartIndex::ChartIndex(std::span<const VerticalChartPoint> points, double scale) : scale_(scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("ChartIndex: scale must be positive");
  const double s2 = scale * scale;
  build_cells(
      points.size(),
      [&](std::size_t i) {
        return CellKey{checked_floor(points[i].lambda1 / scale), checked_floor(points[i].lambda2 / s2), 0};
      },
      ids_, cells_);
  l1_.resize(ids_.size());
  l2_.resize(ids_.size());
  for (std::size_t m = 0; m < ids_.size(); ++m) {
    l1_[m] = points[ids_[m]].lambda1;
    l2_[m] = points[ids_[m]].lambda2;
  }
}

}  // namespace heis
