#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "cli.hpp"
#include "heis/dimension.hpp"
#include "heis/lemma_lab.hpp"
#include "heis/measures.hpp"
#include "heis/random.hpp"
#include "heis/sweep.hpp"
#include "incidence_oracle.hpp"

using namespace heis;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // <= 0: no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string describe(const std::vector<tools::Check>& checks) {
  std::string s;
  for (const auto& c : checks) {
    s += (s.empty() ? "" : ", ") + c.name + "=" + fmt("%.2g", c.worst) + (c.pass() ? "" : "(FAIL)");
  }
  return s;
}

Outcome metric_suite() {
  const auto checks = tools::metric_checks(100000, 1);
  return {tools::all_pass(checks), describe(checks)};
}

Outcome identity_suite() {
  const auto checks = tools::identity_checks(100000, 1);
  return {tools::all_pass(checks), describe(checks)};
}

Outcome bound_suite() {
  const auto checks = tools::bound_checks(1000);
  return {tools::all_pass(checks), describe(checks)};
}

Outcome calibration() {
  struct Case {
    const char* name;
    WeightedCloud cloud;
    double target, box_tol, frostman_tol;
  };
  const std::vector<Case> cases{
      {"cube", sample_cube(100000, 1), 4.0, 0.3, 0.3},
      {"plane", sample_vertical_plane(Angle(0.3), 100000, 1), 3.0, 0.3, 0.3},
      {"ifs8", ifs_generate(standard_ifs(8, 7, 100000), 1), 3.0, 0.3, 0.3},
      {"line", sample_horizontal_line(Angle(0.3), 10000, 1), 1.0, 0.2, 0.3},
  };
  const auto scales = geometric_scales(0.5, 1.0 / 16);
  const auto radii = geometric_scales(0.5, 0.1, std::pow(2.0, 0.25));
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const double box = box_dimension(c.cloud, scales).slope;
    const double fr = frostman_exponent(c.cloud, radii).slope;
    const bool ok = std::abs(box - c.target) <= c.box_tol && std::abs(fr - c.target) <= c.frostman_tol;
    pass = pass && ok;
    detail += std::string(detail.empty() ? "" : ", ") + c.name + " box=" + fmt("%.3f", box) + " frostman=" +
              fmt("%.3f", fr) + (ok ? "" : "(FAIL)");
  }
  return {pass, detail};
}

Outcome transversality() {
  TransversalityOptions o;
  o.pairs = 1000;
  o.deltas = {1e-1, 1e-2, 1e-3};
  const TransversalityReport r = verify_transversality(o);
  const bool slope_ok = std::abs(r.slope - 1.0) <= 0.1;
  std::string detail = "colliding pairs: max_count=" + std::to_string(r.max_count) +
                       " count_ok=" + (r.count_ok ? "1" : "0") + " slope=" + fmt("%.3f", r.slope) +
                       " envelope_slope=" + fmt("%.3f", r.envelope_slope) + " C_emp=" + fmt("%.3g", r.c_emp);
  // diagnostic only: pairs where the near-angle set has a double zero
  o.model = PairModel::tangential;
  const TransversalityReport t = verify_transversality(o);
  detail += "; tangential pairs: slope=" + fmt("%.3f", t.slope) + " envelope_slope=" + fmt("%.3f", t.envelope_slope);
  return {r.count_ok && slope_ok, detail};
}

Outcome covers() {
  bool pass = true;
  std::string detail;
  for (const HPoint& v : {HPoint(), HPoint(0.5, 0.5, 0.3)}) {
    std::vector<double> radii, counts, xs, ys;
    try {
      for (int k = 2; k <= 7; ++k) {
        const double r = std::ldexp(1.0, -k);
        const CoverResult c = cover_euclidean_ball(v, r, {.verify_samples = 100000, .seed = 1});
        radii.push_back(r);
        counts.push_back(static_cast<double>(c.count));
        xs.push_back(std::log(1.0 / r));
        ys.push_back(std::log(static_cast<double>(c.count)));
      }
    } catch (const CoverVerificationError& e) {
      return {false, e.what()};
    }
    // N fitted on the coarse half, one value for the whole sweep
    double n_emp = 0.0;
    for (std::size_t i = 0; i < 3; ++i) n_emp = std::max(n_emp, counts[i] * radii[i]);
    bool bounded = true;
    for (std::size_t i = 0; i < radii.size(); ++i) bounded = bounded && counts[i] <= std::ceil(n_emp / radii[i]);
    const double slope = fit_line(xs, ys).slope;
    const bool ok = bounded && std::abs(slope - 1.0) <= 0.15;
    pass = pass && ok;
    detail += std::string(detail.empty() ? "" : ", ") + "centre (" + fmt("%g", v.x()) + "," + fmt("%g", v.y()) + "," +
              fmt("%g", v.t()) + ") N_emp=" + fmt("%.2f", n_emp) + " bounded=" + (bounded ? "1" : "0") +
              " slope=" + fmt("%.3f", slope);
  }
  return {pass, detail + ", 1e5 samples per ball covered"};
}

Outcome rigidity() {
  auto g = stream(7, 0);
  std::size_t solved = 0, trials = 0;
  double worst = 0.0;
  while (solved < 100000) {
    ++trials;
    const double sc = std::pow(10.0, uniform(g, -1, 2));
    HPoint v[3];
    for (auto& q : v) q = HPoint(sc * uniform(g, -1, 1), sc * uniform(g, -1, 1), uniform(g, -10, 10));
    const TripleSolution s = triple_point_solve(v[0], v[1], v[2]);
    if (s.degenerate) continue;
    ++solved;
    worst = std::max(worst, s.residual / s.scale);
  }
  std::size_t flagged = 0;
  const std::size_t collinear = 100000;
  for (std::size_t i = 0; i < collinear; ++i) {
    const double sc = std::pow(10.0, uniform(g, -1, 3));
    const Planar base{sc * uniform(g, -1, 1), sc * uniform(g, -1, 1)};
    const Planar dir = Angle(uniform(g, 0, std::numbers::pi)).direction();
    HPoint c[3];
    for (auto& q : c) q = HPoint(base + (sc * uniform(g, -1, 1)) * dir, uniform(g, -10, 10));
    flagged += triple_point_solve(c[0], c[1], c[2]).degenerate;
  }
  const bool pass = worst <= 1e-9 && flagged == collinear;
  return {pass, std::to_string(solved) + " solved of " + std::to_string(trials) + ", worst residual/scale=" +
                    fmt("%.2g", worst) + ", collinear flagged " + std::to_string(flagged) + "/" +
                    std::to_string(collinear)};
}

Outcome sweep() {
  const WeightedCloud ifs = ifs_generate(standard_ifs(8, 5), 1);
  const SweepResult r = sweep_dimension(ifs, 64, geometric_scales(0.25, 1.0 / 32));
  const double floor = bound_theorem(3.0) - 0.2;
  std::size_t above = 0;
  double lowest = 1e9;
  for (const auto& d : r.per_theta_dimension) {
    above += d.slope >= floor;
    lowest = std::min(lowest, d.slope);
  }
  const double frac = static_cast<double>(above) / 64.0;
  return {frac >= 0.9, "n=" + std::to_string(ifs.size()) + ", " + std::to_string(above) + "/64 angles >= " +
                           fmt("%.4f", floor) + " (" + fmt("%.1f", 100 * frac) + "%), lowest " + fmt("%.3f", lowest)};
}

Outcome incidence() {
  const WeightedCloud cube = sample_cube(20000, 1);
  const IncidenceConfig base = make_incidence_config(3.0, 0.125, 0.25);
  const IncidenceSweep s = incidence_sweep(cube, base, {0.125, 0.0625, 0.03125, 0.015625});
  const bool slope_ok = s.fitted && s.slope <= s.bound_slope + 0.3;
  std::string detail = "slope=" + fmt("%.3f", s.slope) + " bound_slope=" + fmt("%.4f", s.bound_slope) + " counts";
  for (const auto& r : s.reports) detail += " " + fmt("%.3g", r.count);

  const WeightedCloud small = sample_cube(500, 2);
  const IncidenceConfig c = with_delta(base, 1.0 / 16);
  const double exact = oracle::brute_count(small, c, 64);
  const IncidenceReport mc = incidence_experiment(small, c, {.exact_budget = 0, .triples_per_center = 4000});
  const bool mc_ok = exact > 0.0 && std::abs(mc.count - exact) <= 3.0 * mc.standard_error;
  detail += "; n=500 brute force " + fmt("%.4g", exact) + " vs Monte Carlo " + fmt("%.4g", mc.count) + " +- " +
            fmt("%.2g", mc.standard_error);
  return {slope_ok && mc_ok, detail};
}

std::string strip_threads(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.rfind("# threads=", 0) != 0) kept += line + '\n';
  }
  return kept;
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"gen", "--kind", "ifs", "--depth", "5", "--n", "20000"},
      {"dim", "--n", "20000"},
      {"dim", "--method", "frostman", "--n", "20000"},
      {"dim", "--method", "correlation", "--n", "5000"},
      {"project", "--kind", "plane", "--n", "2000", "--angle", "0.7"},
      {"sweep", "--kind", "ifs", "--depth", "4", "--grid", "16"},
      {"zdelta", "--n", "5000"},
      {"verify-transversality", "--pairs", "100", "--deltas", "1e-2,1e-3"},
      {"verify-cover", "--k-hi", "5", "--samples", "20000"},
      {"verify-identities", "--trials", "10000"},
      {"triple", "--random", "10000"},
      {"incidence", "--n", "1000", "--deltas", "0.125,0.0625"},
      {"bounds", "--s-grid", "0.01"},
  };
  std::size_t same = 0;
  std::string failed;
  for (const auto& cmd : commands) {
    std::vector<std::string> outputs;
    int codes = 0;
    for (const char* threads : {"1", "4", "4"}) {
      std::vector<std::string> args{"--seed", "3", "--threads", threads};
      args.insert(args.end(), cmd.begin(), cmd.end());
      std::ostringstream out, err;
      codes |= cli::run(args, out, err);
      outputs.push_back(strip_threads(out.str()));
    }
    if (codes == 0 && outputs[0] == outputs[1] && outputs[1] == outputs[2]) {
      ++same;
    } else {
      failed += " " + cmd.front();
    }
  }
  std::string detail = std::to_string(same) + "/" + std::to_string(commands.size()) +
                       " invocations identical across threads {1,4,4}";
  if (!failed.empty()) detail += "; differing:" + failed;
  return {same == commands.size(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "metric suite", 10, metric_suite},
      {2, "identity suite", 10, identity_suite},
      {3, "bound curves", 1, bound_suite},
      {4, "dimension calibration", 120, calibration},
      {5, "near-angle intervals", 300, transversality},
      {6, "Euclidean ball covers", 120, covers},
      {7, "three-point rigidity", 10, rigidity},
      {8, "projection sweep", 300, sweep},
      {9, "incidence experiment", 600, incidence},
      {10, "determinism", 0, determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_seconds <= 0 || secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::string timing = fmt("%.2fs", secs);
    if (c.limit_seconds > 0) timing += " (limit " + fmt("%gs", c.limit_seconds) + (in_time ? ")" : ", exceeded)");
    std::printf("criterion %d %s: %s | %s | %s\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
