#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "heis/group.hpp"
#include "heis/random.hpp"

namespace heis {

struct CellKey {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  auto operator<=>(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(k.a));
    h = splitmix64(h ^ static_cast<std::uint64_t>(k.b));
    return static_cast<std::size_t>(splitmix64(h ^ static_cast<std::uint64_t>(k.c)));
  }
};

// lattice: left translates g * dilate(scale, [0,1)^3) for g in the integer
// Heisenberg lattice.  axis: plain scale x scale x scale^2 boxes.
enum class CellShape { lattice, axis };

// product in the integer lattice {(a,b,c)}: same law as the group
constexpr CellKey lattice_mul(const CellKey& g, const CellKey& h) {
  return {g.a + h.a, g.b + h.b, g.c + h.c - 2 * (g.a * h.b - h.a * g.b)};
}

struct CellCoords {
  CellKey key;
  double u[3];  // position inside the unit cell, each in [0,1)
};

CellCoords locate_cell(const HPoint& p, double scale);
CellKey cell_of(const HPoint& p, double scale, CellShape shape = CellShape::lattice);
// cell after moving the grid origin to `anchor` (left translation for lattice cells)
CellKey cell_of(const HPoint& p, double scale, const HPoint& anchor, CellShape shape);
// image of the unit-cell point u under the cell map of `key`
HPoint cell_point(const CellKey& key, double scale, double ux, double uy, double ut);

// Fixed-radius Korányi ball queries over a static point set; the query radius
// must not exceed the cell scale.
class BallIndex {
 public:
  BallIndex(std::span<const HPoint> points, double scale);

  double scale() const { return scale_; }
  std::size_t size() const { return ids_.size(); }

  // f(original index, distance) for every point within distance `radius` of c
  template <class F>
  void visit_ball(const HPoint& c, double radius, F&& f) const;

 private:
  double scale_;
  std::vector<double> xs_, ys_, ts_;
  std::vector<std::uint32_t> ids_;
  std::unordered_map<CellKey, std::pair<std::uint32_t, std::uint32_t>, CellKeyHash> cells_;
};

template <class F>
void BallIndex::visit_ball(const HPoint& c, double radius, F&& f) const {
  const double rho = radius / scale_;
  if (!(rho >= 0.0) || rho > 1.0 + 1e-9) throw std::invalid_argument("BallIndex: radius exceeds cell scale");
  const CellCoords loc = locate_cell(c, scale_);
  const double qx = loc.u[0], qy = loc.u[1], qt = loc.u[2];
  const double rho2 = rho * rho;
  constexpr double margin = 1e-6;
  const double r4 = radius * radius * radius * radius;
  for (int i = -1; i <= 1; ++i) {
    const double hx = std::max({static_cast<double>(i) - qx, 0.0, qx - (i + 1)});
    for (int j = -1; j <= 1; ++j) {
      const double hy = std::max({static_cast<double>(j) - qy, 0.0, qy - (j + 1)});
      if (hx * hx + hy * hy > rho2 + margin) continue;
      const double dx = i - qx, dy = j - qy;
      const double phi[4] = {0.0, -2.0 * dy, 2.0 * dx, 2.0 * (dx - dy)};
      const double pmin = std::min({phi[0], phi[1], phi[2], phi[3]});
      const double pmax = std::max({phi[0], phi[1], phi[2], phi[3]});
      const double A = qt - 2.0 * (qx * j - i * qy);
      const auto kmin = static_cast<std::int64_t>(std::floor(A + pmin - 1.0 - rho2 - margin));
      const auto kmax = static_cast<std::int64_t>(std::floor(A + pmax + rho2 + margin));
      for (std::int64_t k = kmin; k <= kmax; ++k) {
        const auto it = cells_.find(lattice_mul(loc.key, CellKey{i, j, k}));
        if (it == cells_.end()) continue;
        for (std::uint32_t m = it->second.first; m < it->second.second; ++m) {
          const double ex = c.x() - xs_[m], ey = c.y() - ys_[m];
          const double r2 = ex * ex + ey * ey;
          const double s = c.t() - ts_[m] - 2.0 * (c.x() * ys_[m] - xs_[m] * c.y());
          const double d4 = r2 * r2 + s * s;
          if (d4 <= r4) f(static_cast<std::size_t>(ids_[m]), root4(d4));
        }
      }
    }
  }
}

// Parabolic scale x scale^2 grid over chart coordinates; query radius must
// not exceed the scale.
class ChartIndex {
 public:
  ChartIndex(std::span<const VerticalChartPoint> points, double scale);

  template <class F>
  void visit_ball(const VerticalChartPoint& c, double radius, F&& f) const;

 private:
  double scale_;
  std::vector<double> l1_, l2_;
  std::vector<std::uint32_t> ids_;
  std::unordered_map<CellKey, std::pair<std::uint32_t, std::uint32_t>, CellKeyHash> cells_;
};

template <class F>
void ChartIndex::visit_ball(const VerticalChartPoint& c, double radius, F&& f) const {
  if (!(radius >= 0.0) || radius > scale_ * (1.0 + 1e-9)) {
    throw std::invalid_argument("ChartIndex: radius exceeds cell scale");
  }
  const auto a = static_cast<std::int64_t>(std::floor(c.lambda1 / scale_));
  const auto b = static_cast<std::int64_t>(std::floor(c.lambda2 / (scale_ * scale_)));
  const double r4 = radius * radius * radius * radius;
  for (std::int64_t i = -1; i <= 1; ++i) {
    for (std::int64_t j = -1; j <= 1; ++j) {
      const auto it = cells_.find(CellKey{a + i, b + j, 0});
      if (it == cells_.end()) continue;
      for (std::uint32_t m = it->second.first; m < it->second.second; ++m) {
        const double d1 = c.lambda1 - l1_[m], d2 = c.lambda2 - l2_[m];
        const double d4 = d1 * d1 * d1 * d1 + d2 * d2;
        if (d4 <= r4) f(static_cast<std::size_t>(ids_[m]), root4(d4));
      }
    }
  }
}

}  // namespace heis
