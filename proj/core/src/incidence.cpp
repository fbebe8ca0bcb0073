#include <algorithm>
#include <bit>
#include <memory>
#include <cmath>
#include <numbers>
#include <numeric>

#include "heis/lattice.hpp"
#include "heis/lemma_lab.hpp"
#include "heis/parallel.hpp"
#include "heis/random.hpp"
#include "heis/regression.hpp"
#include "heis/sweep.hpp"

namespace heis {

bool IncidenceConfig::regime_consistent() const {
  return t >= std::pow(delta, 1.0 - 100.0 * eta) && alpha > 0.0 && alpha < 1.0;
}

double IncidenceConfig::bound_exponent() const { return (1.0 - alpha) * (s - 1.0) - 1000.0 * eta; }

double IncidenceConfig::upper_bound() const {
  return std::max(std::pow(t, 2.0 * s) * std::pow(delta, s / 2.0),
                  std::pow(t, 1.0 + s) * std::pow(delta, bound_exponent()));
}

IncidenceConfig make_incidence_config(double s, double delta, double t, double frostman_slack) {
  if (!(delta > 0.0) || !(t > 0.0)) throw std::invalid_argument("make_incidence_config: delta and t must be positive");
  if (!(frostman_slack >= 0.0)) throw std::invalid_argument("make_incidence_config: slack must be nonnegative");
  IncidenceConfig c;
  c.s = s;
  c.kappa = kappa(s);
  c.eta = eta_choice(s - frostman_slack, c.kappa);
  c.alpha = alpha(s, c.kappa, c.eta);
  c.t = t;
  c.annulus_inner = t;
  c.annulus_outer = 2.0 * t;
  return with_delta(c, delta);
}

IncidenceConfig with_delta(const IncidenceConfig& base, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("with_delta: delta must be positive");
  IncidenceConfig c = base;
  c.delta = delta;
  c.theta_separation = std::pow(delta, 4.0 * c.eta);
  c.line_threshold = std::pow(delta, c.alpha);
  return c;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct AngleTable {
  std::vector<double> c, s;
  explicit AngleTable(std::size_t n) {
    for (const Angle& a : angle_grid(n)) {
      const Planar e = a.direction();
      c.push_back(e.x);
      s.push_back(e.y);
    }
  }
};

// same arithmetic as projected_chart + chart_distance
inline double projected_distance(double c, double s, const HPoint& v, const HPoint& w) {
  const double av = c * v.x() + s * v.y(), bv = -s * v.x() + c * v.y();
  const double aw = c * w.x() + s * w.y(), bw = -s * w.x() + c * w.y();
  const VerticalChartPoint pv{bv, v.t() - 2.0 * av * bv};
  const VerticalChartPoint pw{bw, w.t() - 2.0 * aw * bw};
  return chart_distance(pv, pw);
}

class Masks {
 public:
  explicit Masks(std::size_t bits) : words_((bits + 63) / 64) {}
  std::size_t words() const { return words_; }
  std::uint64_t* add() {
    data_.resize(data_.size() + words_, 0);
    return data_.data() + data_.size() - words_;
  }
  void drop_last() { data_.resize(data_.size() - words_); }
  const std::uint64_t* at(std::size_t i) const { return data_.data() + i * words_; }
  void clear() { data_.clear(); }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

struct Geometry {
  std::size_t grid;
  double delta;
  AngleTable table;
  std::vector<std::uint64_t> far;  // far[k * words ...]: angles at grid distance >= sep steps from k
  std::size_t words;

  Geometry(std::size_t g, double d, double separation) : grid(g), delta(d), table(g), words((g + 63) / 64) {
    const double h = kPi / static_cast<double>(g);
    const auto steps = static_cast<std::size_t>(std::max(0.0, std::ceil(separation / h - 1e-9)));
    far.assign(g * words, 0);
    for (std::size_t k = 0; k < g; ++k) {
      for (std::size_t l = 0; l < g; ++l) {
        const std::size_t diff = k > l ? k - l : l - k;
        if (std::min(diff, g - diff) >= steps) far[k * words + l / 64] |= std::uint64_t{1} << (l % 64);
      }
    }
  }

  // witness mask of w relative to v; false if empty
  bool witness_mask(const HPoint& v, const HPoint& w, std::uint64_t* mask) const {
    const double r = 2.0 * delta;
    const Planar dz = v.z() - w.z();
    const double gap = std::abs(v.t() - w.t() - 2.0 * wedge(v.z(), w.z()));
    if (gap > r * r + 2.0 * r * norm(v.z() + w.z()) + 1e-9) return false;
    const double L = norm(dz);
    bool any = false;
    auto test = [&](std::size_t k) {
      if (projected_distance(table.c[k], table.s[k], v, w) <= r) {
        mask[k / 64] |= std::uint64_t{1} << (k % 64);
        any = true;
      }
    };
    if (L <= r * (1.0 + 1e-9)) {
      for (std::size_t k = 0; k < grid; ++k) test(k);
      return any;
    }
    const double h = kPi / static_cast<double>(grid);
    const double half = std::asin(std::min(1.0, r / L)) + 1e-9;
    const double phi = std::atan2(dz.y, dz.x);
    const auto k_lo = static_cast<std::int64_t>(std::ceil((phi - half) / h));
    const auto k_hi = static_cast<std::int64_t>(std::floor((phi + half) / h));
    const auto G = static_cast<std::int64_t>(grid);
    if (k_hi - k_lo + 1 >= G) {
      for (std::size_t k = 0; k < grid; ++k) test(k);
      return any;
    }
    for (std::int64_t k = k_lo; k <= k_hi; ++k) test(static_cast<std::size_t>(((k % G) + G) % G));
    return any;
  }

  bool separated_triple(const std::uint64_t* m1, const std::uint64_t* m2, const std::uint64_t* m3) const {
    for (std::size_t wa = 0; wa < words; ++wa) {
      for (std::uint64_t bits_a = m1[wa]; bits_a; bits_a &= bits_a - 1) {
        const std::size_t a = wa * 64 + static_cast<std::size_t>(std::countr_zero(bits_a));
        const std::uint64_t* fa = far.data() + a * words;
        for (std::size_t wb = 0; wb < words; ++wb) {
          for (std::uint64_t bits_b = m2[wb] & fa[wb]; bits_b; bits_b &= bits_b - 1) {
            const std::size_t b = wb * 64 + static_cast<std::size_t>(std::countr_zero(bits_b));
            const std::uint64_t* fb = far.data() + b * words;
            for (std::size_t wc = 0; wc < words; ++wc) {
              if (m3[wc] & fa[wc] & fb[wc]) return true;
            }
          }
        }
      }
    }
    return false;
  }
};

bool line_condition(Planar z, Planar z1, Planar z2, Planar z3, double t, double threshold) {
  if (norm(z - z1) < t / 2.0 || norm(z - z3) < t / 2.0) return true;
  const Planar dir = z3 - z1;
  const double len = norm(dir);
  // z1 = z3: the three planar points are collinear whatever z2 is
  if (len == 0.0) return false;
  return std::abs(wedge(dir, z2 - z1)) / len >= threshold;
}

struct CenterResult {
  double value = 0.0;     // estimate of sum over related triples of weight products
  double variance = 0.0;  // of that estimate
  std::size_t related = 0;
  bool sampled = false;
};

}  // namespace

std::vector<unsigned char> witness_angles(const HPoint& v, const HPoint& w, double delta, std::size_t theta_grid) {
  const AngleTable table(theta_grid);
  std::vector<unsigned char> out(theta_grid, 0);
  for (std::size_t k = 0; k < theta_grid; ++k) {
    out[k] = projected_distance(table.c[k], table.s[k], v, w) <= 2.0 * delta ? 1 : 0;
  }
  return out;
}

IncidenceReport incidence_experiment(const WeightedCloud& cloud, const IncidenceConfig& config,
                                     const IncidenceOptions& options) {
  if (!(config.delta > 0.0) || options.theta_grid == 0) throw std::invalid_argument("incidence_experiment: bad config");
  if (!(config.annulus_inner >= 0.0) || config.annulus_inner > config.annulus_outer || !(config.annulus_outer > 0.0)) {
    throw std::invalid_argument("incidence_experiment: bad annulus");
  }
  const auto& pts = cloud.points();
  const auto& wts = cloud.weights();
  const Geometry geo(options.theta_grid, config.delta, config.theta_separation);

  // centres: all points with their weights, or a nu-distributed sample
  const bool subsample = options.centers > 0 && options.centers < cloud.size();
  std::vector<std::size_t> centers;
  if (subsample) {
    std::vector<double> cumulative(cloud.size());
    std::partial_sum(wts.begin(), wts.end(), cumulative.begin());
    auto g = stream(options.seed, 0x1ce);
    for (std::size_t i = 0; i < options.centers; ++i) {
      const double u = uniform01(g) * cumulative.back();
      centers.push_back(std::min<std::size_t>(
          static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin()),
          cloud.size() - 1));
    }
  } else {
    centers.resize(cloud.size());
    std::iota(centers.begin(), centers.end(), std::size_t{0});
  }

  // cell scale must cover the outer radius; very wide annuli fall back to a scan
  const double extent = std::max({cloud.box().hi[0] - cloud.box().lo[0], cloud.box().hi[1] - cloud.box().lo[1],
                                  std::sqrt(cloud.box().hi[2] - cloud.box().lo[2])});
  const bool use_index = config.annulus_outer < 4.0 * (extent + 1.0);
  std::unique_ptr<BallIndex> index;
  if (use_index) index = std::make_unique<BallIndex>(pts, config.annulus_outer);

  std::vector<CenterResult> results(centers.size());
  parallel_chunks(centers.size(), 8, [&](std::size_t b, std::size_t e, std::size_t) {
    Masks masks(options.theta_grid);
    std::vector<std::size_t> related;
    std::vector<double> cumulative;
    for (std::size_t ci = b; ci < e; ++ci) {
      const std::size_t vi = centers[ci];
      const HPoint& v = pts[vi];
      masks.clear();
      related.clear();
      auto consider = [&](std::size_t j, double d) {
        if (d < config.annulus_inner || d > config.annulus_outer) return;
        std::uint64_t* m = masks.add();
        if (geo.witness_mask(v, pts[j], m)) {
          related.push_back(j);
        } else {
          masks.drop_last();
        }
      };
      if (use_index) {
        index->visit_ball(v, config.annulus_outer, consider);
      } else {
        for (std::size_t j = 0; j < pts.size(); ++j) consider(j, koranyi_dist(v, pts[j]));
      }
      // candidate order from the index is deterministic but not sorted
      std::vector<std::size_t> order(related.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return related[x] < related[y]; });

      CenterResult& out = results[ci];
      const std::size_t k = related.size();
      out.related = k;
      if (k == 0) continue;
      auto quad_ok = [&](std::size_t a, std::size_t b2, std::size_t c) {
        const HPoint& w1 = pts[related[a]];
        const HPoint& w2 = pts[related[b2]];
        const HPoint& w3 = pts[related[c]];
        return line_condition(v.z(), w1.z(), w2.z(), w3.z(), config.t, config.line_threshold) &&
               geo.separated_triple(masks.at(a), masks.at(b2), masks.at(c));
      };
      const double kd = static_cast<double>(k);
      if (kd * kd * kd <= static_cast<double>(options.exact_budget)) {
        double sum = 0.0;
        for (std::size_t x : order) {
          for (std::size_t y : order) {
            for (std::size_t z : order) {
              if (quad_ok(x, y, z)) sum += wts[related[x]] * wts[related[y]] * wts[related[z]];
            }
          }
        }
        out.value = sum;
        continue;
      }
      out.sampled = true;
      cumulative.resize(k);
      double W = 0.0;
      for (std::size_t m = 0; m < k; ++m) {
        W += wts[related[order[m]]];
        cumulative[m] = W;
      }
      auto draw = [&](std::mt19937_64& g) {
        const double u = uniform01(g) * W;
        const auto pos = std::min<std::size_t>(
            static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin()),
            k - 1);
        return order[pos];
      };
      auto g = stream(options.seed, vi);
      std::size_t hits = 0;
      const std::size_t K = std::max<std::size_t>(1, options.triples_per_center);
      for (std::size_t n = 0; n < K; ++n) {
        const std::size_t x = draw(g), y = draw(g), z = draw(g);
        if (quad_ok(x, y, z)) ++hits;
      }
      const double W3 = W * W * W;
      const double p = static_cast<double>(hits) / static_cast<double>(K);
      const double ps = (static_cast<double>(hits) + 0.5) / (static_cast<double>(K) + 1.0);
      out.value = W3 * p;
      out.variance = W3 * W3 * ps * (1.0 - ps) / static_cast<double>(K);
    }
  });

  IncidenceReport rep;
  rep.config = config;
  rep.centers_used = centers.size();
  for (const auto& r : results) {
    rep.related_pairs += r.related;
    if (r.sampled) ++rep.sampled_centers;
  }
  if (subsample) {
    const double M = static_cast<double>(centers.size());
    double mean = 0.0;
    for (const auto& r : results) mean += r.value;
    mean /= M;
    double var = 0.0;
    for (const auto& r : results) var += (r.value - mean) * (r.value - mean);
    var = M > 1.0 ? var / (M - 1.0) : 0.0;
    rep.count = cloud.total_mass() * mean;
    rep.standard_error = cloud.total_mass() * std::sqrt(var / M);
  } else {
    double var = 0.0;
    for (std::size_t ci = 0; ci < centers.size(); ++ci) {
      rep.count += wts[centers[ci]] * results[ci].value;
      var += wts[centers[ci]] * wts[centers[ci]] * results[ci].variance;
    }
    rep.standard_error = std::sqrt(var);
  }
  rep.inconclusive = rep.related_pairs < options.min_pairs;
  return rep;
}

IncidenceSweep incidence_sweep(const WeightedCloud& cloud, const IncidenceConfig& base,
                               const std::vector<double>& deltas, const IncidenceOptions& options) {
  if (deltas.empty()) throw std::invalid_argument("incidence_sweep: no deltas");
  IncidenceSweep out;
  std::vector<double> xs, ys;
  for (double d : deltas) {
    out.reports.push_back(incidence_experiment(cloud, with_delta(base, d), options));
    const auto& r = out.reports.back();
    if (r.count > 0.0 && !r.inconclusive) {
      xs.push_back(std::log(1.0 / d));
      ys.push_back(std::log(r.count));
    }
  }
  out.bound_slope = -std::min(base.s / 2.0, base.bound_exponent());
  if (xs.size() >= 2) {
    out.slope = fit_line(xs, ys).slope;
    out.fitted = true;
  }
  return out;
}

}  // namespace heis
