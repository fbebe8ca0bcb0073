#include "heis/group.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace heis {

HPoint::HPoint(double x, double y, double t) : x_(x), y_(y), t_(t) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(t)) {
    throw std::invalid_argument("HPoint: non-finite coordinate");
  }
}

HPoint::HPoint(Planar z, double t) : HPoint(z.x, z.y, t) {}

Angle::Angle(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("Angle: non-finite value");
  constexpr double pi = std::numbers::pi;
  double r = std::fmod(theta, pi);
  if (r < 0.0) r += pi;
  if (r >= pi) r = 0.0;
  theta_ = r;
}

double angle_distance(double a, double b) {
  constexpr double pi = std::numbers::pi;
  double d = std::fmod(std::abs(a - b), pi);
  return std::min(d, pi - d);
}

HPoint identity() { return HPoint(); }

HPoint group_mul(const HPoint& v, const HPoint& w) {
  return HPoint(v.x() + w.x(), v.y() + w.y(), v.t() + w.t() - 2.0 * wedge(v.z(), w.z()));
}

HPoint group_inv(const HPoint& v) { return HPoint(-v.x(), -v.y(), -v.t()); }

double koranyi_norm(const HPoint& v) {
  const double r2 = norm_sq(v.z());
  return root4(r2 * r2 + v.t() * v.t());
}

double koranyi_dist(const HPoint& v, const HPoint& w) {
  const Planar dz = v.z() - w.z();
  const double r2 = norm_sq(dz);
  const double s = v.t() - w.t() - 2.0 * wedge(v.z(), w.z());
  return root4(r2 * r2 + s * s);
}

HPoint dilate(double r, const HPoint& v) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("dilate: factor must be positive");
  return HPoint(r * v.x(), r * v.y(), r * r * v.t());
}

HPoint rotate(double phi, const HPoint& v) {
  const double c = std::cos(phi), s = std::sin(phi);
  return HPoint(c * v.x() - s * v.y(), s * v.x() + c * v.y(), v.t());
}

Planar proj_line(const Angle& theta, Planar z) {
  const Planar e = theta.direction();
  return dot(z, e) * e;
}

Planar proj_perp(const Angle& theta, Planar z) {
  const Planar n = theta.normal();
  return dot(z, n) * n;
}

HPoint vertical_projection(const Angle& theta, const HPoint& v) {
  const Planar e = theta.direction();
  const Planar n = theta.normal();
  const double a = dot(v.z(), e);
  const double b = dot(v.z(), n);
  // (a e) ^ (b n) = a b
  return HPoint(b * n, v.t() - 2.0 * a * b);
}

HPoint horizontal_projection(const Angle& theta, const HPoint& v) {
  return HPoint(proj_line(theta, v.z()), 0.0);
}

VerticalChartPoint vertical_chart(const Angle& theta, const HPoint& p) {
  const Planar z = p.z();
  if (std::abs(dot(z, theta.direction())) >= 1e-8 * (1.0 + norm(z))) {
    throw std::invalid_argument("vertical_chart: point not in the vertical subgroup");
  }
  return {dot(z, theta.normal()), p.t()};
}

HPoint embed(const Angle& theta, const VerticalChartPoint& c) {
  return HPoint(c.lambda1 * theta.normal(), c.lambda2);
}

VerticalChartPoint projected_chart(const Angle& theta, const HPoint& v) {
  const double a = dot(v.z(), theta.direction());
  const double b = dot(v.z(), theta.normal());
  return {b, v.t() - 2.0 * a * b};
}

double chart_distance(const VerticalChartPoint& a, const VerticalChartPoint& b) {
  const double d1 = a.lambda1 - b.lambda1;
  const double d2 = a.lambda2 - b.lambda2;
  return root4(d1 * d1 * d1 * d1 + d2 * d2);
}

bool annulus_contains(const HPoint& center, double r, double R, const HPoint& w) {
  if (r < 0.0 || r > R) throw std::invalid_argument("annulus_contains: need 0 <= r <= R");
  const double d = koranyi_dist(center, w);
  return r <= d && d <= R;
}

}  // namespace heis
