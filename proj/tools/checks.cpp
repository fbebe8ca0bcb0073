#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heis/group.hpp"
#include "heis/lemma_lab.hpp"
#include "heis/random.hpp"
#include "heis/sweep.hpp"

namespace heis::tools {

namespace {

constexpr double kPi = std::numbers::pi;

HPoint random_point(std::mt19937_64& g, double r) {
  return HPoint(uniform(g, -r, r), uniform(g, -r, r), uniform(g, -r, r));
}

Planar random_planar(std::mt19937_64& g, double r) { return {uniform(g, -r, r), uniform(g, -r, r)}; }

}  // namespace

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

std::vector<Check> metric_checks(std::size_t trials, std::uint64_t seed) {
  Check tri{"triangle_inequality", trials, 0.0, 1e-12};
  Check left{"left_invariance", trials, 0.0, 1e-9};
  Check dil{"dilation_homogeneity", trials, 0.0, 1e-9};
  Check rot{"rotation_equivariance", trials, 0.0, 1e-9};
  auto g = stream(seed, 0x3e7);
  for (std::size_t i = 0; i < trials; ++i) {
    const HPoint u = random_point(g, 10), v = random_point(g, 10), w = random_point(g, 10);
    const double uv = koranyi_dist(u, v), vw = koranyi_dist(v, w), uw = koranyi_dist(u, w);
    tri.worst = std::max(tri.worst, (uw - uv - vw) / std::max(1.0, uv + vw));

    const HPoint h = random_point(g, 10);
    const double moved = koranyi_dist(group_mul(h, v), group_mul(h, w));
    left.worst = std::max(left.worst, std::max(0.0, std::abs(moved - vw) - 1e-12) / vw);

    const double r = std::pow(10.0, uniform(g, -2, 2));
    dil.worst = std::max(dil.worst, std::abs(koranyi_dist(dilate(r, v), dilate(r, w)) - r * vw) / (r * vw));

    const double phi = uniform(g, 0, 2 * kPi);
    rot.worst = std::max(rot.worst, std::abs(koranyi_dist(rotate(phi, v), rotate(phi, w)) - vw) / vw);
  }
  return {tri, left, dil, rot};
}

std::vector<Check> identity_checks(std::size_t trials, std::uint64_t seed) {
  Check split{"wedge_split", trials, 0.0, 1e-10};
  Check absorb{"wedge_absorb", trials, 0.0, 1e-10};
  Check decomp{"decomposition", trials, 0.0, 1e-12};
  Check chart{"second_chart_difference", trials, 0.0, 1e-9};
  Check det{"determinant", trials, 0.0, 1e-9};
  auto g = stream(seed, 0x1d);
  for (std::size_t i = 0; i < trials; ++i) {
    const Angle th(uniform(g, 0, kPi));
    const Planar z = random_planar(g, 1), zeta = random_planar(g, 1);
    // pi_V is proj_line, pi_V-perp is proj_perp
    const double rhs = wedge(proj_line(th, z), proj_perp(th, zeta)) - wedge(proj_line(th, zeta), proj_perp(th, z));
    split.worst = std::max(split.worst, std::abs(wedge(z, zeta) - rhs));
    absorb.worst = std::max(absorb.worst,
                            std::abs(wedge(proj_perp(th, z), proj_line(th, zeta)) - wedge(z, proj_line(th, zeta))));

    const HPoint v = random_point(g, 1);
    const HPoint back = group_mul(vertical_projection(th, v), horizontal_projection(th, v));
    decomp.worst = std::max({decomp.worst, std::abs(back.x() - v.x()), std::abs(back.y() - v.y()),
                             std::abs(back.t() - v.t())});

    const HPoint w = random_point(g, 1);
    const TransversalityFrame f = TransversalityFrame::from_pair(v, w);
    const double dl2 = projected_chart(th, v).lambda2 - projected_chart(th, w).lambda2;
    const double scale = norm(v.z() + w.z()) * norm(v.z() - w.z());
    chart.worst = std::max(chart.worst, std::abs(transversality_F(f, th).f * scale - dl2) / (1.0 + std::abs(dl2)));

    const double sc = std::pow(10.0, uniform(g, -2, 2));
    const HPoint a(sc * uniform(g, -1, 1), sc * uniform(g, -1, 1), uniform(g, -1, 1));
    const HPoint b(sc * uniform(g, -1, 1), sc * uniform(g, -1, 1), uniform(g, -1, 1));
    const HPoint c(sc * uniform(g, -1, 1), sc * uniform(g, -1, 1), uniform(g, -1, 1));
    const TripleSolution s = triple_point_solve(a, b, c);
    det.worst = std::max(det.worst, std::abs(std::abs(s.det) - std::abs(s.wedge_det)) / std::pow(s.scale, 3));
  }

  // frames x angles; trials / 10 frames at 10^3 angles each
  const std::size_t frames = std::max<std::size_t>(1, trials / 10);
  Check osc{"oscillation", frames * 1000, 0.0, 1e-9};
  Check lip{"lipschitz_derivative", frames * 1000, 0.0, 1e-9};
  for (std::size_t i = 0; i < frames; ++i) {
    const TransversalityFrame f(uniform(g, -3, 3), Angle(uniform(g, 0, kPi)).direction(),
                                Angle(uniform(g, 0, kPi)).direction());
    double prev_th = 0.0, prev_df = transversality_F(f, Angle(0.0)).df;
    for (int k = 0; k < 1000; ++k) {
      const double th = kPi * (k + uniform01(g)) / 1000.0;
      const FValues fv = transversality_F(f, Angle(th));
      osc.worst = std::max(osc.worst, std::abs(std::pow(fv.df / 2, 2) + std::pow(fv.d2f / 4, 2) - 1.0));
      lip.worst = std::max(lip.worst, std::abs(fv.df - prev_df) - 4.0 * std::abs(th - prev_th));
      prev_th = th;
      prev_df = fv.df;
    }
  }
  return {split, absorb, decomp, chart, det, osc, lip};
}

std::vector<Check> bound_checks(std::size_t grid) {
  // the two pieces of bound_theorem meet at 5/2
  const double s0 = 2.5;
  Check cont{"continuity_at_5/2", 3, 0.0, 1e-12};
  cont.worst = std::max({std::abs(s0 / 2.0 - 1.25), std::abs(s0 * (s0 + 2.0) / (4.0 * s0 - 1.0) - 1.25),
                         std::abs(bound_theorem(s0) - 1.25)});

  Check kap{"equals_s_minus_kappa", grid, 0.0, 1e-12};
  Check imp{"improvement_interval", grid, 0.0, 0.0};
  const double hi = improvement_interval().second;
  const double step = 2.0 / static_cast<double>(grid);
  for (std::size_t i = 1; i <= grid; ++i) {
    const double s = 2.0 + step * static_cast<double>(i);
    kap.worst = std::max(kap.worst, std::abs(bound_theorem(s) - (s - kappa(s))));
    const bool better = bound_theorem(s) > std::max(bound_bdfm(s), bound_fh(s));
    // mismatches only count away from the endpoint, at grid resolution
    if (better != (s < hi) && std::abs(s - hi) > step) imp.worst += 1.0;
  }
  return {cont, kap, imp};
}

}  // namespace heis::tools
