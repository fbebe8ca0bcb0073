#include <algorithm>
#include <cmath>
#include <numbers>

#include "heis/lemma_lab.hpp"
#include "heis/parallel.hpp"
#include "heis/random.hpp"
#include "heis/regression.hpp"

namespace heis {

namespace {

constexpr double kPi = std::numbers::pi;

double reduce(double theta) {
  double r = std::fmod(theta, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;
  return r;
}

// d(P_theta v, P_theta w) from chart coordinates
struct PairProfile {
  HPoint v, w;

  double operator()(double theta) const {
    const double c = std::cos(theta), s = std::sin(theta);
    const double av = c * v.x() + s * v.y(), bv = -s * v.x() + c * v.y();
    const double aw = c * w.x() + s * w.y(), bw = -s * w.x() + c * w.y();
    const double d1 = bv - bw;
    const double d2 = (v.t() - 2.0 * av * bv) - (w.t() - 2.0 * aw * bw);
    return root4(d1 * d1 * d1 * d1 + d2 * d2);
  }
};

// boundary between an outside point `out` (g > 0) and an inside point `in`
// (g <= 0); returns the outside end after shrinking to width tol
double bisect(const PairProfile& dist, double delta, double out, double in, double tol) {
  for (int it = 0; it < 200 && std::abs(out - in) > tol; ++it) {
    const double mid = 0.5 * (out + in);
    (dist(mid) <= delta ? in : out) = mid;
  }
  return out;
}

double golden_min(const PairProfile& dist, double lo, double hi, double tol, double& at) {
  constexpr double r = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = dist(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = dist(x2);
    }
  }
  at = f1 <= f2 ? x1 : x2;
  return std::min(f1, f2);
}

NearAngleResult near_angle_from_samples(const PairProfile& dist, const std::vector<double>& samples, double delta,
                                        const NearAngleOptions& opt) {
  NearAngleResult res;
  const std::size_t N = samples.size();
  const double h = kPi / static_cast<double>(N);
  auto theta_of = [&](std::size_t i) { return h * static_cast<double>(i); };
  auto inside = [&](std::size_t i) { return samples[i % N] <= delta; };

  std::size_t first_out = N;
  for (std::size_t i = 0; i < N; ++i) {
    if (!inside(i)) {
      first_out = i;
      break;
    }
  }
  if (first_out == N) {
    res.set = AngleIntervalSet::whole();
    return res;
  }

  std::vector<std::pair<double, double>> ranges;
  // walk the circle from an outside sample, in unrolled coordinates
  double run_start = 0.0;
  bool in_run = false;
  for (std::size_t j = 1; j <= N; ++j) {
    const std::size_t i = first_out + j;
    const double th = theta_of(first_out) + h * static_cast<double>(j);
    if (inside(i) && !in_run) {
      run_start = bisect(dist, delta, th - h, th, opt.refine_tol);
      in_run = true;
    } else if (!inside(i) && in_run) {
      ranges.emplace_back(run_start, bisect(dist, delta, th, th - h, opt.refine_tol));
      in_run = false;
    }
    // dip hidden between samples: an outside sampled local minimum
    if (!inside(i)) {
      const double gm = samples[(i + N - 1) % N], g0 = samples[i % N], gp = samples[(i + 1) % N];
      if (g0 <= gm && g0 <= gp && gm > delta && gp > delta) {
        double at = th;
        const double m = golden_min(dist, th - h, th + h, opt.refine_tol, at);
        if (m <= delta) {
          ranges.emplace_back(bisect(dist, delta, th - h, at, opt.refine_tol),
                              bisect(dist, delta, th + h, at, opt.refine_tol));
        } else if (m - delta <= 1e-12 * std::max(1.0, delta)) {
          res.converged = false;
        }
      }
    }
  }
  res.set = AngleIntervalSet::from_ranges(std::move(ranges), 2.0 * opt.refine_tol);
  return res;
}

std::vector<double> sample_profile(const PairProfile& dist, std::size_t n) {
  std::vector<double> out(n);
  const double h = kPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = dist(h * static_cast<double>(i));
  return out;
}

}  // namespace

AngleIntervalSet AngleIntervalSet::whole() {
  AngleIntervalSet s;
  s.arcs_.push_back({0.0, kPi});
  return s;
}

AngleIntervalSet AngleIntervalSet::from_ranges(std::vector<std::pair<double, double>> ranges, double merge_tol) {
  AngleIntervalSet out;
  std::vector<std::pair<double, double>> norm;
  for (auto [lo, hi] : ranges) {
    if (hi < lo) std::swap(lo, hi);
    if (hi - lo >= kPi) return whole();
    const double start = reduce(lo);
    norm.emplace_back(start, start + (hi - lo));
  }
  if (norm.empty()) return out;
  std::sort(norm.begin(), norm.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& r : norm) {
    if (!merged.empty() && r.first <= merged.back().second + merge_tol) {
      merged.back().second = std::max(merged.back().second, r.second);
    } else {
      merged.push_back(r);
    }
  }
  // wrap: the last arc may run past pi into the first
  while (merged.size() > 1 && merged.back().second + merge_tol >= merged.front().first + kPi) {
    merged.front().first = merged.back().first - kPi;
    merged.front().second = std::max(merged.front().second, merged.back().second - kPi);
    merged.pop_back();
  }
  for (const auto& [lo, hi] : merged) {
    const double len = hi - lo;
    if (len + merge_tol >= kPi) return whole();
    out.arcs_.push_back({reduce(lo), std::max(len, 0.0)});
  }
  std::sort(out.arcs_.begin(), out.arcs_.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
  return out;
}

bool AngleIntervalSet::is_whole() const { return arcs_.size() == 1 && arcs_[0].length >= kPi; }

double AngleIntervalSet::max_length() const {
  double m = 0.0;
  for (const Arc& a : arcs_) m = std::max(m, a.length);
  return m;
}

double AngleIntervalSet::total_length() const {
  double m = 0.0;
  for (const Arc& a : arcs_) m += a.length;
  return m;
}

bool AngleIntervalSet::contains(double theta, double tol) const {
  const double th = reduce(theta);
  for (const Arc& a : arcs_) {
    double off = th - a.start;
    if (off < -tol) off += kPi;
    if (off >= -tol && off <= a.length + tol) return true;
  }
  return false;
}

NearAngleResult near_angle_set(const HPoint& v, const HPoint& w, double delta, const NearAngleOptions& options) {
  if (!(delta > 0.0)) throw std::invalid_argument("near_angle_set: delta must be positive");
  if (options.samples < 16 || !(options.refine_tol > 0.0)) throw std::invalid_argument("near_angle_set: bad options");
  if (v == w) {
    NearAngleResult res;
    res.set = AngleIntervalSet::whole();
    res.coincident = true;
    return res;
  }
  const PairProfile dist{v, w};
  return near_angle_from_samples(dist, sample_profile(dist, options.samples), delta, options);
}

TransversalityFrame::TransversalityFrame(double a_, Planar p_, Planar q_) : a(a_), p(p_), q(q_) {
  if (std::abs(norm(p) - 1.0) > 1e-12 || std::abs(norm(q) - 1.0) > 1e-12) {
    throw std::invalid_argument("TransversalityFrame: p and q must be unit vectors");
  }
}

TransversalityFrame TransversalityFrame::from_pair(const HPoint& v, const HPoint& w) {
  const Planar minus = v.z() - w.z(), plus = v.z() + w.z();
  const double nm = norm(minus), np = norm(plus);
  if (nm == 0.0 || np == 0.0) throw std::invalid_argument("TransversalityFrame: need z != zeta and z != -zeta");
  const double a = (v.t() - w.t() - 2.0 * wedge(v.z(), w.z())) / (nm * np);
  return TransversalityFrame(a, minus * (1.0 / nm), plus * (1.0 / np));
}

FValues transversality_F(const TransversalityFrame& frame, const Angle& theta) {
  const Planar e = theta.direction(), ie = theta.normal();
  const double qe = dot(frame.q, e), qie = dot(frame.q, ie);
  const Planar proj = qe * e;
  const Planar d1 = qie * e + qe * ie;
  const Planar d2 = 2.0 * (qie * ie - qe * e);
  return {frame.a + 2.0 * wedge(frame.p, proj), 2.0 * wedge(frame.p, d1), 2.0 * wedge(frame.p, d2)};
}

std::pair<HPoint, HPoint> transversality_pair(PairModel model, std::uint64_t seed, std::size_t index) {
  auto g = stream(seed, index);
  const HPoint v(uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1));
  if (model == PairModel::uniform) {
    for (;;) {
      const HPoint w(uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1));
      if (!(w == v)) return {v, w};
    }
  }
  const Angle theta(uniform(g, 0.0, kPi));
  const double mu = dot(v.z(), theta.direction());
  if (model == PairModel::tangential) {
    if (std::abs(mu) < 1e-3) return transversality_pair(model, seed + 0x9e37, index);
    return {v, group_mul(vertical_projection(theta, v), HPoint(-mu * theta.direction(), 0.0))};
  }
  for (;;) {
    const double lambda = uniform(g, -1, 1);
    if (std::abs(lambda - mu) < 1e-3) continue;
    const HPoint w = group_mul(vertical_projection(theta, v), HPoint(lambda * theta.direction(), 0.0));
    return {v, w};
  }
}

TransversalityReport verify_transversality(const TransversalityOptions& options) {
  if (options.pairs == 0 || options.deltas.empty()) throw std::invalid_argument("verify_transversality: nothing to do");
  for (double d : options.deltas) {
    if (!(d > 0.0)) throw std::invalid_argument("verify_transversality: deltas must be positive");
  }
  const std::size_t D = options.deltas.size();
  std::vector<TransversalityRow> rows(options.pairs * D);
  parallel_chunks(options.pairs, 4, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t p = b; p < e; ++p) {
      const auto [v, w] = transversality_pair(options.model, options.seed, p);
      const PairProfile dist{v, w};
      const std::vector<double> samples = sample_profile(dist, options.near.samples);
      const double dH = koranyi_dist(v, w);
      for (std::size_t k = 0; k < D; ++k) {
        const double delta = options.deltas[k];
        const NearAngleResult r = near_angle_from_samples(dist, samples, delta, options.near);
        TransversalityRow& row = rows[p * D + k];
        row.pair_id = p;
        row.dH = dH;
        row.delta = delta;
        row.n_intervals = r.set.count();
        row.max_len = r.set.max_length();
        row.c_emp = row.max_len * dH / delta;
        row.whole = r.set.is_whole();
        row.converged = r.converged;
      }
    }
  });

  TransversalityReport rep;
  std::vector<double> xs, ys;
  std::vector<double> envelope(D, 0.0);
  for (const auto& row : rows) {
    rep.max_count = std::max(rep.max_count, row.n_intervals);
    rep.c_emp = std::max(rep.c_emp, row.c_emp);
    if (!row.converged) ++rep.nonconverged;
    if (row.n_intervals == 0) {
      ++rep.empty_cases;
    } else if (row.whole) {
      ++rep.whole_cases;
    } else {
      xs.push_back(std::log(row.delta / row.dH));
      ys.push_back(std::log(row.max_len));
      const std::size_t k = static_cast<std::size_t>(&row - rows.data()) % D;
      envelope[k] = std::max(envelope[k], row.max_len * row.dH);
    }
  }
  rep.count_ok = rep.max_count <= 40;
  rep.fitted_cases = xs.size();
  if (xs.size() >= 2) {
    const LineFit fit = fit_line(xs, ys);
    rep.slope = fit.slope;
    rep.slope_r2 = fit.r_squared;
  }
  std::vector<double> ex, ey;
  for (std::size_t k = 0; k < D; ++k) {
    if (envelope[k] > 0.0) {
      ex.push_back(std::log(options.deltas[k]));
      ey.push_back(std::log(envelope[k]));
    }
  }
  if (ex.size() >= 2) rep.envelope_slope = fit_line(ex, ey).slope;
  rep.rows = std::move(rows);
  return rep;
}

}  // namespace heis
