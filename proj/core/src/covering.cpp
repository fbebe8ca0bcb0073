#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "heis/lattice.hpp"
#include "heis/lemma_lab.hpp"
#include "heis/random.hpp"

namespace heis {

namespace {

using Vec3 = std::array<double, 3>;

// Euclidean distance from y to {M u : u in [0,1]^3}; M given by columns.
// Enumerates the 27 active sets of the box constraints; the minimiser of the
// convex problem is the best feasible stationary point among them.
double box_image_distance(const std::array<Vec3, 3>& M, const Vec3& y) {
  double best = std::numeric_limits<double>::infinity();
  for (int code = 0; code < 27; ++code) {
    int state[3];  // 0 free, 1 fixed at 0, 2 fixed at 1
    int c = code;
    for (int k = 0; k < 3; ++k) {
      state[k] = c % 3;
      c /= 3;
    }
    Vec3 rhs = y;
    int free_idx[3];
    int nf = 0;
    for (int k = 0; k < 3; ++k) {
      if (state[k] == 2) {
        for (int r = 0; r < 3; ++r) rhs[r] -= M[k][r];
      } else if (state[k] == 0) {
        free_idx[nf++] = k;
      }
    }
    double u[3] = {0, 0, 0};
    for (int k = 0; k < 3; ++k) u[k] = state[k] == 2 ? 1.0 : 0.0;
    if (nf > 0) {
      // normal equations G x = b for the free columns
      double G[3][4] = {};
      for (int i = 0; i < nf; ++i) {
        for (int j = 0; j < nf; ++j) {
          double s = 0.0;
          for (int r = 0; r < 3; ++r) s += M[free_idx[i]][r] * M[free_idx[j]][r];
          G[i][j] = s;
        }
        double s = 0.0;
        for (int r = 0; r < 3; ++r) s += M[free_idx[i]][r] * rhs[r];
        G[i][nf] = s;
      }
      bool singular = false;
      for (int col = 0; col < nf; ++col) {
        int piv = col;
        for (int r = col + 1; r < nf; ++r) {
          if (std::abs(G[r][col]) > std::abs(G[piv][col])) piv = r;
        }
        if (G[piv][col] == 0.0) {
          singular = true;
          break;
        }
        for (int j = 0; j <= nf; ++j) std::swap(G[col][j], G[piv][j]);
        for (int r = 0; r < nf; ++r) {
          if (r == col) continue;
          const double f = G[r][col] / G[col][col];
          for (int j = col; j <= nf; ++j) G[r][j] -= f * G[col][j];
        }
      }
      if (singular) continue;
      bool feasible = true;
      for (int i = 0; i < nf; ++i) {
        const double x = G[i][nf] / G[i][i];
        if (x < -1e-12 || x > 1.0 + 1e-12) feasible = false;
        u[free_idx[i]] = std::clamp(x, 0.0, 1.0);
      }
      if (!feasible) continue;
    }
    double d2 = 0.0;
    for (int r = 0; r < 3; ++r) {
      const double e = M[0][r] * u[0] + M[1][r] * u[1] + M[2][r] * u[2] - y[r];
      d2 += e * e;
    }
    best = std::min(best, d2);
  }
  return std::sqrt(best);
}

}  // namespace

double unit_cell_radius() {
  const HPoint center = cell_point(CellKey{}, 1.0, 0.5, 0.5, 0.5);
  double r = 0.0;
  for (int i = 0; i < 8; ++i) {
    r = std::max(r, koranyi_dist(center, cell_point(CellKey{}, 1.0, i & 1, (i >> 1) & 1, (i >> 2) & 1)));
  }
  return r;
}

CoverResult cover_euclidean_ball(const HPoint& v, double r, const CoverOptions& options) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("cover_euclidean_ball: r must lie in (0,1)");
  if (std::sqrt(v.x() * v.x() + v.y() * v.y() + v.t() * v.t()) > 1.0) {
    throw std::invalid_argument("cover_euclidean_ball: centre must satisfy |v| <= 1");
  }
  const double h = r / unit_cell_radius();
  const double h2 = h * h;

  CoverResult res;
  res.cell_scale = h;
  std::unordered_map<CellKey, std::size_t, CellKeyHash> by_key;
  const auto a_lo = static_cast<std::int64_t>(std::floor((v.x() - r) / h));
  const auto a_hi = static_cast<std::int64_t>(std::floor((v.x() + r) / h));
  const auto b_lo = static_cast<std::int64_t>(std::floor((v.y() - r) / h));
  const auto b_hi = static_cast<std::int64_t>(std::floor((v.y() + r) / h));
  for (std::int64_t a = a_lo; a <= a_hi; ++a) {
    for (std::int64_t b = b_lo; b <= b_hi; ++b) {
      const double x0 = h * static_cast<double>(a), y0 = h * static_cast<double>(b);
      const double dx = std::max({x0 - v.x(), 0.0, v.x() - (x0 + h)});
      const double dy = std::max({y0 - v.y(), 0.0, v.y() - (y0 + h)});
      const double dz2 = dx * dx + dy * dy;
      if (dz2 > r * r) continue;
      const double hv = std::sqrt(r * r - dz2);
      const double ad = static_cast<double>(a), bd = static_cast<double>(b);
      const double shear[4] = {0.0, 2.0 * ad, -2.0 * bd, 2.0 * (ad - bd)};
      const double smin = *std::min_element(shear, shear + 4), smax = *std::max_element(shear, shear + 4);
      const auto c_lo = static_cast<std::int64_t>(std::floor((v.t() - hv) / h2 + smin)) - 1;
      const auto c_hi = static_cast<std::int64_t>(std::floor((v.t() + hv) / h2 + smax));
      const std::array<Vec3, 3> M{Vec3{h, 0.0, 2.0 * h2 * bd}, Vec3{0.0, h, -2.0 * h2 * ad}, Vec3{0.0, 0.0, h2}};
      for (std::int64_t c = c_lo; c <= c_hi; ++c) {
        const Vec3 y{v.x() - x0, v.y() - y0, v.t() - h2 * static_cast<double>(c)};
        if (box_image_distance(M, y) > r * (1.0 + 1e-9)) continue;
        const CellKey key{a, b, c};
        by_key.emplace(key, res.centers.size());
        res.centers.push_back(cell_point(key, h, 0.5, 0.5, 0.5));
      }
    }
  }
  res.count = res.centers.size();

  auto g = stream(options.seed, 0xc0);
  std::size_t uncovered = 0;
  for (std::size_t n = 0; n < options.verify_samples;) {
    const double px = uniform(g, -r, r), py = uniform(g, -r, r), pt = uniform(g, -r, r);
    if (px * px + py * py + pt * pt > r * r) continue;
    ++n;
    const HPoint p(v.x() + px, v.y() + py, v.t() + pt);
    bool covered = false;
    const auto it = by_key.find(locate_cell(p, h).key);
    if (it != by_key.end()) covered = koranyi_dist(res.centers[it->second], p) <= r;
    if (!covered) {
      covered = std::any_of(res.centers.begin(), res.centers.end(),
                            [&](const HPoint& c) { return koranyi_dist(c, p) <= r; });
    }
    if (!covered) ++uncovered;
  }
  res.verified_samples = options.verify_samples;
  if (uncovered > 0) {
    throw CoverVerificationError("cover_euclidean_ball: " + std::to_string(uncovered) + " sampled points uncovered");
  }
  return res;
}

}  // namespace heis
