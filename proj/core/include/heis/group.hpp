#pragma once

#include <cmath>

namespace heis {

struct Planar {
  double x = 0.0;
  double y = 0.0;

  constexpr Planar() = default;
  constexpr Planar(double x_, double y_) : x(x_), y(y_) {}

  constexpr Planar operator+(Planar o) const { return {x + o.x, y + o.y}; }
  constexpr Planar operator-(Planar o) const { return {x - o.x, y - o.y}; }
  constexpr Planar operator-() const { return {-x, -y}; }
  constexpr Planar operator*(double s) const { return {s * x, s * y}; }
  constexpr bool operator==(const Planar&) const = default;
};

constexpr Planar operator*(double s, Planar p) { return p * s; }

constexpr double wedge(Planar u, Planar v) { return u.x * v.y - v.x * u.y; }
constexpr double dot(Planar u, Planar v) { return u.x * v.x + u.y * v.y; }
inline double norm(Planar u) { return std::hypot(u.x, u.y); }
constexpr double norm_sq(Planar u) { return u.x * u.x + u.y * u.y; }

// Point of the Heisenberg group R^2 x R. Constructors reject non-finite input.
class HPoint {
 public:
  constexpr HPoint() = default;
  HPoint(double x, double y, double t);
  HPoint(Planar z, double t);

  double x() const { return x_; }
  double y() const { return y_; }
  double t() const { return t_; }
  Planar z() const { return {x_, y_}; }

  bool operator==(const HPoint&) const = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double t_ = 0.0;
};

// Angle reduced to [0, pi).
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double theta);

  double radians() const { return theta_; }
  Planar direction() const { return {std::cos(theta_), std::sin(theta_)}; }
  // i e^{i theta}
  Planar normal() const { return {-std::sin(theta_), std::cos(theta_)}; }

 private:
  double theta_ = 0.0;
};

// distance between two angles on the circle R / pi Z
double angle_distance(double a, double b);

struct VerticalChartPoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

HPoint identity();
HPoint group_mul(const HPoint& v, const HPoint& w);
HPoint group_inv(const HPoint& v);

double koranyi_norm(const HPoint& v);
double koranyi_dist(const HPoint& v, const HPoint& w);

HPoint dilate(double r, const HPoint& v);
HPoint rotate(double phi, const HPoint& v);

Planar proj_line(const Angle& theta, Planar z);
Planar proj_perp(const Angle& theta, Planar z);

HPoint vertical_projection(const Angle& theta, const HPoint& v);
HPoint horizontal_projection(const Angle& theta, const HPoint& v);

// Throws std::invalid_argument if p is not in the vertical subgroup of theta.
VerticalChartPoint vertical_chart(const Angle& theta, const HPoint& p);
HPoint embed(const Angle& theta, const VerticalChartPoint& c);
// chart coordinates of vertical_projection(theta, v) without the membership check
VerticalChartPoint projected_chart(const Angle& theta, const HPoint& v);
double chart_distance(const VerticalChartPoint& a, const VerticalChartPoint& b);

bool annulus_contains(const HPoint& center, double r, double R, const HPoint& w);

// fourth root via two square roots
inline double root4(double x) { return std::sqrt(std::sqrt(x)); }

}  // namespace heis
