#include "heis/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "heis/lattice.hpp"
#include "heis/parallel.hpp"
#include "heis/random.hpp"

namespace heis {

WeightedCloud::WeightedCloud(std::vector<HPoint> points, std::vector<double> weights, double nominal_dimension)
    : points_(std::move(points)), weights_(std::move(weights)), nominal_dimension_(nominal_dimension) {
  if (points_.empty()) throw std::invalid_argument("WeightedCloud: empty");
  if (points_.size() != weights_.size()) throw std::invalid_argument("WeightedCloud: size mismatch");
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("WeightedCloud: invalid weight");
    total_mass_ += w;
  }
  if (!(total_mass_ > 0.0)) throw std::invalid_argument("WeightedCloud: zero total mass");
  for (int k = 0; k < 3; ++k) {
    box_.lo[k] = std::numeric_limits<double>::infinity();
    box_.hi[k] = -std::numeric_limits<double>::infinity();
  }
  for (const HPoint& p : points_) {
    const double c[3] = {p.x(), p.y(), p.t()};
    for (int k = 0; k < 3; ++k) {
      box_.lo[k] = std::min(box_.lo[k], c[k]);
      box_.hi[k] = std::max(box_.hi[k], c[k]);
    }
  }
}

WeightedCloud WeightedCloud::uniform(std::vector<HPoint> points, double nominal_dimension) {
  if (points.empty()) throw std::invalid_argument("WeightedCloud: empty");
  std::vector<double> w(points.size(), 1.0 / static_cast<double>(points.size()));
  return WeightedCloud(std::move(points), std::move(w), nominal_dimension);
}

namespace {

void require_count(std::size_t n) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
}

}  // namespace

WeightedCloud sample_cube(std::size_t n, std::uint64_t seed) {
  require_count(n);
  auto g = stream(seed, 0);
  std::vector<HPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = uniform01(g), y = uniform01(g), t = uniform01(g);
    pts.emplace_back(x, y, t);
  }
  return WeightedCloud::uniform(std::move(pts), 4.0);
}

WeightedCloud sample_horizontal_line(const Angle& theta, std::size_t n, std::uint64_t seed) {
  require_count(n);
  auto g = stream(seed, 1);
  const Planar e = theta.direction();
  std::vector<HPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(uniform01(g) * e, 0.0);
  return WeightedCloud::uniform(std::move(pts), 1.0);
}

WeightedCloud sample_vertical_plane(const Angle& theta, std::size_t n, std::uint64_t seed) {
  require_count(n);
  auto g = stream(seed, 2);
  std::vector<HPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double l1 = uniform01(g), l2 = uniform01(g);
    pts.push_back(embed(theta, {l1, l2}));
  }
  return WeightedCloud::uniform(std::move(pts), 3.0);
}

IfsSpec standard_ifs(int m, int depth, std::size_t max_points) {
  if (m != 1 && m != 8 && m != 16) throw std::invalid_argument("standard_ifs: m must be 1, 8 or 16");
  IfsSpec spec;
  spec.depth = depth;
  spec.max_points = max_points;
  // digits of the integer lattice modulo its dilation by 2, spread by 1.1 so
  // the images of the unit ball stay disjoint
  constexpr double spread = 1.1;
  if (m == 1) {
    spec.maps.push_back({HPoint(), 0.5});
    return spec;
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 4; ++k) {
        if (m == 8 && k % 2 == 1) continue;
        spec.maps.push_back({dilate(spread, HPoint(i, j, k)), 0.5});
      }
    }
  }
  return spec;
}

bool ifs_separated(const IfsSpec& spec, double eps) {
  for (std::size_t i = 0; i < spec.maps.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.maps.size(); ++j) {
      const double r = std::max(spec.maps[i].ratio, spec.maps[j].ratio);
      if (!(koranyi_dist(spec.maps[i].translation, spec.maps[j].translation) > 2.0 * r * (1.0 + eps))) return false;
    }
  }
  return true;
}

double similarity_dimension(const IfsSpec& spec) {
  if (spec.maps.size() <= 1) return 0.0;
  auto moran = [&](double d) {
    double s = 0.0;
    for (const auto& m : spec.maps) s += std::pow(m.ratio, d);
    return s - 1.0;
  };
  double lo = 0.0, hi = 1.0;
  while (moran(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (moran(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

WeightedCloud ifs_generate(const IfsSpec& spec, std::uint64_t seed) {
  const std::size_t m = spec.maps.size();
  if (m == 0) throw std::invalid_argument("ifs_generate: no maps");
  if (spec.depth < 1) throw std::invalid_argument("ifs_generate: depth must be positive");
  if (spec.max_points == 0) throw std::invalid_argument("ifs_generate: max_points must be positive");
  for (const auto& map : spec.maps) {
    if (!(map.ratio > 0.0 && map.ratio < 1.0)) throw std::invalid_argument("ifs_generate: ratio outside (0,1)");
  }
  const double nominal = ifs_separated(spec) ? similarity_dimension(spec) : std::numeric_limits<double>::quiet_NaN();

  // total word count, saturating
  std::uint64_t words = 1;
  bool overflow = false;
  for (int d = 0; d < spec.depth; ++d) {
    if (words > std::numeric_limits<std::uint64_t>::max() / m) {
      overflow = true;
      break;
    }
    words *= m;
  }
  if (overflow) throw std::invalid_argument("ifs_generate: m^depth exceeds 64-bit range");

  auto apply_word = [&](std::uint64_t word) {
    // word digits, least significant = innermost map
    HPoint x;
    for (int d = 0; d < spec.depth; ++d) {
      const IfsMap& f = spec.maps[word % m];
      word /= m;
      x = group_mul(f.translation, dilate(f.ratio, x));
    }
    return x;
  };

  std::vector<std::uint64_t> chosen;
  if (words <= spec.max_points) {
    chosen.resize(words);
    std::iota(chosen.begin(), chosen.end(), std::uint64_t{0});
  } else {
    auto g = stream(seed, 3);
    chosen = sample_indices(g, words, spec.max_points);
  }
  std::vector<HPoint> pts(chosen.size());
  parallel_chunks(chosen.size(), 4096, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) pts[i] = apply_word(chosen[i]);
  });
  return WeightedCloud::uniform(std::move(pts), nominal);
}

double resolution_scale(const WeightedCloud& cloud) {
  const auto& pts = cloud.points();
  if (pts.size() < 2) return 0.0;
  const BoundingBox& box = cloud.box();
  const double extent = std::max(std::hypot(box.hi[0] - box.lo[0], box.hi[1] - box.lo[1]),
                                 std::sqrt(box.hi[2] - box.lo[2]));
  if (extent == 0.0) return 0.0;
  double h = 0.25 * extent * std::pow(static_cast<double>(pts.size()), -0.25);
  for (;;) {
    const BallIndex index(pts, h);
    const std::size_t chunks = chunk_count(pts.size(), 4096);
    std::vector<double> best(chunks, std::numeric_limits<double>::infinity());
    parallel_chunks(pts.size(), 4096, [&](std::size_t b, std::size_t e, std::size_t c) {
      double local = std::numeric_limits<double>::infinity();
      for (std::size_t i = b; i < e; ++i) {
        index.visit_ball(pts[i], h, [&](std::size_t, double d) {
          if (d > 0.0) local = std::min(local, d);
        });
      }
      best[c] = local;
    });
    const double found = *std::min_element(best.begin(), best.end());
    if (std::isfinite(found)) return found;
    if (h > 4.0 * extent) return 0.0;  // every point coincides with another or the cloud is a single atom
    h *= 2.0;
  }
}

double ball_mass(const WeightedCloud& cloud, const HPoint& c, double r) {
  double mass = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (koranyi_dist(c, cloud.points()[i]) <= r) mass += cloud.weights()[i];
  }
  return mass;
}

namespace {

// index drawn with probability proportional to weight
std::size_t sample_weighted(const std::vector<double>& cumulative, std::mt19937_64& g) {
  const double u = uniform01(g) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

}  // namespace

DimensionEstimate frostman_exponent(const WeightedCloud& cloud, const std::vector<double>& radii,
                                    const FrostmanOptions& options) {
  if (options.centers_per_radius == 0) throw std::invalid_argument("frostman_exponent: need centers");
  const double resolution = resolution_scale(cloud);
  std::vector<double> usable;
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("frostman_exponent: radii must be positive");
    if (r >= resolution) usable.push_back(r);
  }
  std::sort(usable.begin(), usable.end());
  usable.erase(std::unique(usable.begin(), usable.end()), usable.end());
  if (usable.size() < 3) throw std::invalid_argument("frostman_exponent: fewer than 3 radii above resolution");
  if (std::log10(usable.back() / usable.front()) < options.min_span_decades - 1e-12) {
    throw std::invalid_argument("frostman_exponent: radii window too narrow");
  }

  std::vector<double> cumulative(cloud.size());
  std::partial_sum(cloud.weights().begin(), cloud.weights().end(), cumulative.begin());

  DimensionEstimate est;
  est.method = "frostman";
  std::vector<double> xs, ys;
  for (std::size_t ri = 0; ri < usable.size(); ++ri) {
    const double r = usable[ri];
    auto g = stream(options.seed, ri);
    std::vector<std::size_t> centers(options.centers_per_radius);
    for (auto& c : centers) c = sample_weighted(cumulative, g);
    const BallIndex index(cloud.points(), r);
    const std::size_t chunks = chunk_count(centers.size(), 16);
    std::vector<double> best(chunks, 0.0);
    parallel_chunks(centers.size(), 16, [&](std::size_t b, std::size_t e, std::size_t c) {
      double local = 0.0;
      for (std::size_t i = b; i < e; ++i) {
        double mass = 0.0;
        index.visit_ball(cloud.points()[centers[i]], r, [&](std::size_t j, double) { mass += cloud.weights()[j]; });
        local = std::max(local, mass);
      }
      best[c] = local;
    });
    const double mass = *std::max_element(best.begin(), best.end());
    est.samples.push_back({r, mass, mass});
    xs.push_back(std::log(r));
    ys.push_back(std::log(mass));
  }
  const LineFit fit = fit_line(xs, ys);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.r_squared = fit.r_squared;
  est.degenerate = fit.degenerate;
  est.window_lo = usable.front();
  est.window_hi = usable.back();
  return est;
}

void write_cloud(std::ostream& out, const WeightedCloud& cloud, const std::vector<std::string>& header) {
  out << "#heis-cloud v1 n=" << cloud.size() << '\n';
  if (cloud.has_nominal_dimension()) {
    std::ostringstream s;
    s.precision(17);
    s << cloud.nominal_dimension();
    out << "# nominal_dimension=" << s.str() << '\n';
  }
  for (const auto& line : header) out << "# " << line << '\n';
  char buf[128];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const HPoint& p = cloud.points()[i];
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", p.x(), p.y(), p.t(), cloud.weights()[i]);
    out << buf;
  }
}

WeightedCloud read_cloud(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("read_cloud: empty input");
  const std::string tag = "#heis-cloud v1 n=";
  if (line.rfind(tag, 0) != 0) throw std::invalid_argument("read_cloud: missing '#heis-cloud v1' header");
  std::size_t n = 0;
  try {
    n = std::stoull(line.substr(tag.size()));
  } catch (const std::exception&) {
    throw std::invalid_argument("read_cloud: bad point count in header");
  }
  double nominal = std::numeric_limits<double>::quiet_NaN();
  std::vector<HPoint> pts;
  std::vector<double> w;
  pts.reserve(n);
  w.reserve(n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string key = "# nominal_dimension=";
      if (line.rfind(key, 0) == 0) nominal = std::stod(line.substr(key.size()));
      continue;
    }
    std::istringstream row(line);
    double x, y, t, wt;
    if (!(row >> x >> y >> t >> wt)) throw std::invalid_argument("read_cloud: malformed row: " + line);
    pts.emplace_back(x, y, t);
    w.push_back(wt);
  }
  if (pts.size() != n) throw std::invalid_argument("read_cloud: row count does not match header");
  return WeightedCloud(std::move(pts), std::move(w), nominal);
}

}  // namespace heis
