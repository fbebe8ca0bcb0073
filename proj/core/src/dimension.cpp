#include "heis/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heis/parallel.hpp"
#include "heis/random.hpp"

namespace heis {

double BoxCountStats::chao1() const {
  const double f1 = static_cast<double>(singletons);
  const double f2 = static_cast<double>(doubletons);
  // all singletons: no overlap information, nothing to extrapolate from
  if (singletons == occupied) return static_cast<double>(occupied);
  const double unseen = f2 > 0.0 ? f1 * f1 / (2.0 * f2) : f1 * (f1 - 1.0) / 2.0;
  return static_cast<double>(occupied) + unseen;
}

namespace {

BoxCountStats tally(std::vector<CellKey>& keys) {
  std::sort(keys.begin(), keys.end());
  BoxCountStats s;
  std::size_t run = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    ++run;
    if (i + 1 == keys.size() || keys[i + 1] != keys[i]) {
      ++s.occupied;
      if (run == 1) ++s.singletons;
      if (run == 2) ++s.doubletons;
      run = 0;
    }
  }
  return s;
}

std::vector<double> usable_scales(const std::vector<double>& scales, double resolution, std::size_t minimum,
                                  const char* who) {
  std::vector<double> out;
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument(std::string(who) + ": scales must be positive");
    if (s >= resolution) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() < minimum) {
    throw std::invalid_argument(std::string(who) + ": too few usable scales above the cloud resolution");
  }
  return out;
}

DimensionEstimate fit_counts(std::vector<ScaleSample> samples, const char* method) {
  DimensionEstimate est;
  est.method = method;
  std::vector<double> xs, ys;
  for (const auto& s : samples) {
    xs.push_back(std::log(1.0 / s.scale));
    ys.push_back(std::log(s.value));
  }
  const LineFit fit = fit_line(xs, ys);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.r_squared = fit.r_squared;
  est.degenerate = fit.degenerate;
  est.window_lo = samples.back().scale;
  est.window_hi = samples.front().scale;
  est.samples = std::move(samples);
  return est;
}

}  // namespace

BoxCountStats box_count_stats(std::span<const HPoint> points, double delta, const HPoint& anchor, CellShape shape) {
  if (!(delta > 0.0)) throw std::invalid_argument("box_count: delta must be positive");
  std::vector<CellKey> keys(points.size());
  const bool at_origin = anchor == HPoint();
  parallel_chunks(points.size(), 8192, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      keys[i] = at_origin ? cell_of(points[i], delta, shape) : cell_of(points[i], delta, anchor, shape);
    }
  });
  return tally(keys);
}

std::size_t box_count(const WeightedCloud& cloud, double delta, CellShape shape) {
  return box_count_stats(cloud.points(), delta, HPoint(), shape).occupied;
}

std::vector<HPoint> random_anchors(std::size_t k, double scale, std::uint64_t seed) {
  auto g = stream(seed, 0xa7c);
  std::vector<HPoint> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double ux = uniform01(g), uy = uniform01(g), ut = uniform01(g);
    out.push_back(cell_point(CellKey{}, scale, ux, uy, ut));
  }
  return out;
}

std::vector<double> default_scales(double resolution) {
  const double lo = std::max(std::ldexp(1.0, -4), 4.0 * resolution);
  return geometric_scales(0.5, lo, 2.0);
}

DimensionEstimate box_dimension(const WeightedCloud& cloud, const std::vector<double>& scales,
                                const BoxDimensionOptions& options) {
  const double resolution = options.resolution >= 0.0 ? options.resolution : resolution_scale(cloud);
  const std::vector<double> window = usable_scales(scales, resolution, 4, "box_dimension");
  std::vector<HPoint> anchors = options.anchors;
  if (anchors.empty()) anchors.push_back(HPoint());
  std::vector<ScaleSample> samples;
  for (double delta : window) {
    double value = 0.0, raw = 0.0;
    for (const HPoint& a : anchors) {
      const BoxCountStats s = box_count_stats(cloud.points(), delta, a, options.shape);
      raw += static_cast<double>(s.occupied);
      value += options.correction == CountCorrection::chao1 ? s.chao1() : static_cast<double>(s.occupied);
    }
    const double k = static_cast<double>(anchors.size());
    samples.push_back({delta, value / k, raw / k});
  }
  return fit_counts(std::move(samples), "box");
}

BoxCountStats chart_box_count(std::span<const VerticalChartPoint> points, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("chart_box_count: delta must be positive");
  std::vector<CellKey> keys(points.size());
  const double d2 = delta * delta;
  for (std::size_t i = 0; i < points.size(); ++i) {
    keys[i] = CellKey{static_cast<std::int64_t>(std::floor(points[i].lambda1 / delta)),
                      static_cast<std::int64_t>(std::floor(points[i].lambda2 / d2)), 0};
  }
  return tally(keys);
}

DimensionEstimate chart_box_dimension(std::span<const VerticalChartPoint> points, const std::vector<double>& scales,
                                      CountCorrection correction) {
  if (points.empty()) throw std::invalid_argument("chart_box_dimension: no points");
  const std::vector<double> window = usable_scales(scales, 0.0, 4, "chart_box_dimension");
  std::vector<ScaleSample> samples;
  for (double delta : window) {
    const BoxCountStats s = chart_box_count(points, delta);
    const double raw = static_cast<double>(s.occupied);
    samples.push_back({delta, correction == CountCorrection::chao1 ? s.chao1() : raw, raw});
  }
  return fit_counts(std::move(samples), "chart-box");
}

DimensionEstimate correlation_dimension(const WeightedCloud& cloud, const std::vector<double>& scales,
                                        const CorrelationOptions& options) {
  if (cloud.size() < 2) throw std::invalid_argument("correlation_dimension: need at least two points");
  if (options.max_centers == 0) throw std::invalid_argument("correlation_dimension: max_centers must be positive");
  const double resolution = resolution_scale(cloud);
  std::vector<double> window;
  try {
    window = usable_scales(scales, resolution, 1, "correlation_dimension");
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("correlation_dimension: empty scale window");
  }
  std::sort(window.begin(), window.end());  // ascending
  const std::size_t K = window.size();
  const auto& pts = cloud.points();
  const auto& w = cloud.weights();
  const double rmax = window.back();
  auto bin_of = [&](double d) {
    return static_cast<std::size_t>(std::lower_bound(window.begin(), window.end(), d) - window.begin());
  };

  std::vector<std::uint64_t> centers;
  if (pts.size() <= options.max_centers) {
    centers.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) centers[i] = i;
  } else {
    auto g = stream(options.seed, 0xc0);
    centers = sample_indices(g, pts.size(), options.max_centers);
  }
  const double inflate = static_cast<double>(pts.size()) / static_cast<double>(centers.size());

  const std::size_t chunk = 64;
  const std::size_t chunks = chunk_count(centers.size(), chunk);
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(K + 1, 0.0));
  if (pts.size() < 2000) {
    parallel_chunks(centers.size(), chunk, [&](std::size_t b, std::size_t e, std::size_t c) {
      for (std::size_t ci = b; ci < e; ++ci) {
        const std::size_t i = centers[ci];
        for (std::size_t j = 0; j < pts.size(); ++j) {
          if (j == i) continue;
          const double d = koranyi_dist(pts[i], pts[j]);
          if (d <= rmax) partial[c][bin_of(d)] += w[i] * w[j];
        }
      }
    });
  } else {
    const BallIndex index(pts, rmax);
    parallel_chunks(centers.size(), chunk, [&](std::size_t b, std::size_t e, std::size_t c) {
      for (std::size_t ci = b; ci < e; ++ci) {
        const std::size_t i = centers[ci];
        index.visit_ball(pts[i], rmax, [&](std::size_t j, double d) {
          if (j != i) partial[c][bin_of(d)] += w[i] * w[j];
        });
      }
    });
  }
  std::vector<double> bins(K + 1, 0.0);
  for (const auto& p : partial) {
    for (std::size_t k = 0; k <= K; ++k) bins[k] += p[k];
  }
  double norm = cloud.total_mass() * cloud.total_mass();
  for (double wi : w) norm -= wi * wi;

  DimensionEstimate est;
  est.method = "correlation";
  std::vector<double> xs, ys;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    cumulative += inflate * bins[k];
    const double frac = norm > 0.0 ? cumulative / norm : 0.0;
    est.samples.push_back({window[k], frac, frac});
    if (frac > 0.0) {
      xs.push_back(std::log(window[k]));
      ys.push_back(std::log(frac));
    }
  }
  est.window_lo = window.front();
  est.window_hi = window.back();
  if (xs.size() < 2) {
    est.degenerate = true;
    return est;
  }
  const LineFit fit = fit_line(xs, ys);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.r_squared = fit.r_squared;
  est.degenerate = fit.degenerate || xs.size() < 3;
  return est;
}

}  // namespace heis
