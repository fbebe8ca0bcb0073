#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "checks.hpp"
#include "heis/dimension.hpp"
#include "heis/lemma_lab.hpp"
#include "heis/measures.hpp"
#include "heis/parallel.hpp"
#include "heis/random.hpp"
#include "heis/sweep.hpp"

namespace heis::cli {

namespace {

std::string cell(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "1" : "0"; }
std::string cell(const std::string& v) { return v; }

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  void header(const std::string& tag, const std::vector<std::string>& config) {
    os_ << "#heis-" << tag << " v1\n";
    for (const auto& line : config) os_ << "# " << line << '\n';
    os_ << "# threads=" << thread_count() << '\n';
  }
  void columns(std::initializer_list<const char*> names) {
    os_ << '#';
    for (const char* n : names) os_ << ' ' << n;
    os_ << '\n';
  }
  void comment(const std::string& text) { os_ << "# " << text << '\n'; }
  std::ostream& stream() { return os_; }
  template <class... T>
  void row(const T&... values) {
    bool first = true;
    ((os_ << (first ? "" : " ") << cell(values), first = false), ...);
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s;
}

void echo_options(const CLI::App& app, std::vector<std::string>& lines) {
  for (const CLI::Option* o : app.get_options()) {
    const std::string name = o->get_single_name();
    if (name == "help" || name == "threads") continue;
    lines.push_back(name + "=" + (o->count() > 0 ? join(o->results()) : o->get_default_str()));
  }
}

std::vector<std::string> config_lines(const CLI::App& app, const CLI::App& sub) {
  std::vector<std::string> lines{"subcommand=" + sub.get_name()};
  echo_options(app, lines);
  echo_options(sub, lines);
  return lines;
}

struct CloudArgs {
  std::string input;
  std::string kind = "cube";
  std::size_t n = 10000;
  double theta = 0.0;
  int m = 8;
  int depth = 6;
};

void add_cloud_options(CLI::App* sub, CloudArgs& a, std::size_t default_n) {
  a.n = default_n;
  sub->add_option("--input", a.input, "cloud file (#heis-cloud v1); overrides the generator options");
  sub->add_option("--kind", a.kind, "generator")->check(CLI::IsMember({"cube", "plane", "line", "ifs"}));
  sub->add_option("--n", a.n, "points (cap for ifs)");
  sub->add_option("--theta", a.theta, "angle of the plane or line");
  sub->add_option("--m", a.m, "ifs maps")->check(CLI::IsMember({1, 8, 16}));
  sub->add_option("--depth", a.depth, "ifs depth")->check(CLI::PositiveNumber);
}

WeightedCloud load_cloud(const CloudArgs& a, std::uint64_t seed) {
  if (!a.input.empty()) {
    std::ifstream in(a.input);
    if (!in) throw std::invalid_argument("cannot open " + a.input);
    return read_cloud(in);
  }
  if (a.kind == "cube") return sample_cube(a.n, seed);
  if (a.kind == "plane") return sample_vertical_plane(Angle(a.theta), a.n, seed);
  if (a.kind == "line") return sample_horizontal_line(Angle(a.theta), a.n, seed);
  return ifs_generate(standard_ifs(a.m, a.depth, a.n), seed);
}

HPoint parse_point(const std::string& text) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) c.push_back(std::stod(part));
  if (c.size() != 3) throw std::invalid_argument("point must be x,y,t: " + text);
  return HPoint(c[0], c[1], c[2]);
}

PairModel parse_model(const std::string& m) {
  if (m == "uniform") return PairModel::uniform;
  if (m == "tangential") return PairModel::tangential;
  return PairModel::colliding;
}

void write_estimate(Writer& w, const DimensionEstimate& e) {
  w.columns({"slope", "intercept", "r2", "window_lo", "window_hi", "degenerate"});
  w.row(e.slope, e.intercept, e.r_squared, e.window_lo, e.window_hi, e.degenerate);
}

struct Options {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string output = "-";
};

int dispatch(CLI::App& app, const Options& opt, std::ostream& os, std::ostream& err,
             const std::vector<std::pair<CLI::App*, std::function<int(Writer&, const std::vector<std::string>&)>>>&
                 handlers) {
  for (const auto& [sub, fn] : handlers) {
    if (!sub->parsed()) continue;
    std::unique_ptr<std::ofstream> file;
    std::ostream* dest = &os;
    if (opt.output != "-") {
      file = std::make_unique<std::ofstream>(opt.output);
      if (!*file) {
        err << "cannot write " << opt.output << '\n';
        return usage_error;
      }
      dest = file.get();
    }
    Writer w(*dest);
    return fn(w, config_lines(app, *sub));
  }
  return usage_error;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heisenberg vertical projection experiments", "heis"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--threads", opt.threads, "worker threads (overrides HEIS_THREADS)")->check(CLI::PositiveNumber);
  app.add_option("--output", opt.output, "output file, - for stdout");

  // gen
  CloudArgs gen_cloud;
  CLI::App* gen = app.add_subcommand("gen", "generate a weighted point cloud");
  add_cloud_options(gen, gen_cloud, 10000);

  // dim
  CloudArgs dim_cloud;
  std::string dim_method = "box", dim_shape = "axis", dim_correction = "chao1";
  double dim_hi = -1.0, dim_lo = -1.0, dim_ratio = -1.0;
  std::size_t dim_anchors = 0, dim_centers = 256;
  CLI::App* dim = app.add_subcommand("dim", "dimension estimate of a cloud");
  add_cloud_options(dim, dim_cloud, 10000);
  dim->add_option("--method", dim_method)->check(CLI::IsMember({"box", "frostman", "correlation"}));
  dim->add_option("--scale-hi", dim_hi, "largest scale, negative for the method default");
  dim->add_option("--scale-lo", dim_lo, "smallest scale, negative for the method default");
  dim->add_option("--ratio", dim_ratio, "scale ratio, negative for the method default");
  dim->add_option("--shape", dim_shape, "box cells")->check(CLI::IsMember({"axis", "lattice"}));
  dim->add_option("--correction", dim_correction)->check(CLI::IsMember({"chao1", "none"}));
  dim->add_option("--anchors", dim_anchors, "random grid anchors, 0 for the origin only");
  dim->add_option("--centers", dim_centers, "frostman centres per radius");

  // project
  CloudArgs proj_cloud;
  double proj_angle = 0.0;
  CLI::App* project = app.add_subcommand("project", "chart coordinates of a vertical projection");
  add_cloud_options(project, proj_cloud, 10000);
  project->add_option("--angle", proj_angle, "projection angle");

  // sweep
  CloudArgs sweep_cloud;
  std::size_t sweep_grid = 64;
  double sweep_hi = 0.25, sweep_lo = 1.0 / 32, sweep_s = -1.0;
  CLI::App* sweep = app.add_subcommand("sweep", "projection dimension over an angle grid");
  add_cloud_options(sweep, sweep_cloud, 10000);
  sweep->add_option("--grid", sweep_grid, "angles");
  sweep->add_option("--scale-hi", sweep_hi);
  sweep->add_option("--scale-lo", sweep_lo);
  sweep->add_option("--s", sweep_s, "dimension for the bound columns, negative for the cloud's nominal value");

  // zdelta
  CloudArgs z_cloud;
  std::vector<double> z_deltas{0.125, 0.0625, 0.03125};
  double z_s = 2.8, z_eta = 0.01;
  std::size_t z_grid = 64, z_samples = 100;
  CLI::App* zdelta = app.add_subcommand("zdelta", "mass of points whose projections are often heavy");
  add_cloud_options(zdelta, z_cloud, 10000);
  zdelta->add_option("--deltas", z_deltas)->delimiter(',');
  zdelta->add_option("--s", z_s, "Frostman exponent");
  zdelta->add_option("--eta", z_eta);
  zdelta->add_option("--grid", z_grid, "angles");
  zdelta->add_option("--samples", z_samples, "sampled points");

  // verify-transversality
  TransversalityOptions vt;
  std::string vt_model = "colliding";
  CLI::App* vtrans = app.add_subcommand("verify-transversality", "near-angle interval counts and lengths");
  vtrans->add_option("--pairs", vt.pairs);
  vtrans->add_option("--deltas", vt.deltas)->delimiter(',');
  vtrans->add_option("--model", vt_model)->check(CLI::IsMember({"colliding", "uniform", "tangential"}));
  vtrans->add_option("--samples", vt.near.samples, "scan samples per pair");
  vtrans->add_option("--refine-tol", vt.near.refine_tol);

  // verify-cover
  std::string vc_center = "0,0,0";
  int vc_k_lo = 2, vc_k_hi = 7;
  std::size_t vc_samples = 100000;
  CLI::App* vcover = app.add_subcommand("verify-cover", "covers of Euclidean balls by Koranyi balls");
  vcover->add_option("--center", vc_center, "x,y,t");
  vcover->add_option("--k-lo", vc_k_lo, "largest radius is 2^-k_lo");
  vcover->add_option("--k-hi", vc_k_hi, "smallest radius is 2^-k_hi");
  vcover->add_option("--samples", vc_samples, "rejection samples per ball");

  // verify-identities
  std::size_t vi_trials = 100000;
  CLI::App* vident = app.add_subcommand("verify-identities", "randomized metric and identity checks");
  vident->add_option("--trials", vi_trials);

  // triple
  std::string tr_v1 = "1,0,0", tr_v2 = "0,1,0", tr_v3 = "0,0,0";
  std::size_t tr_random = 0;
  CLI::App* triple = app.add_subcommand("triple", "point determined by three vertical constraints");
  triple->add_option("--v1", tr_v1, "x,y,t");
  triple->add_option("--v2", tr_v2, "x,y,t");
  triple->add_option("--v3", tr_v3, "x,y,t");
  triple->add_option("--random", tr_random, "solve this many random triples instead");

  // incidence
  CloudArgs in_cloud;
  double in_s = 3.0, in_t = 0.25, in_slack = 0.01;
  std::vector<double> in_deltas{0.125, 0.0625, 0.03125, 0.015625};
  IncidenceOptions in_opt;
  CLI::App* incidence = app.add_subcommand("incidence", "quadruple counts over a delta sweep");
  add_cloud_options(incidence, in_cloud, 2000);
  incidence->add_option("--s", in_s);
  incidence->add_option("--t", in_t, "annulus radius");
  incidence->add_option("--slack", in_slack, "eta is taken at s - slack");
  incidence->add_option("--deltas", in_deltas)->delimiter(',');
  incidence->add_option("--grid", in_opt.theta_grid, "angles");
  incidence->add_option("--centers", in_opt.centers, "sampled centres, 0 for all");
  incidence->add_option("--budget", in_opt.exact_budget, "exact enumeration budget per centre");
  incidence->add_option("--triples", in_opt.triples_per_center, "Monte Carlo triples per centre");

  // bounds
  double b_step = 0.01;
  CLI::App* bounds = app.add_subcommand("bounds", "projection bound curves over (2,4]");
  bounds->add_option("--s-grid", b_step, "grid step")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage_error;
  }
  if (opt.threads > 0) set_thread_count(opt.threads);

  const std::vector<std::pair<CLI::App*, std::function<int(Writer&, const std::vector<std::string>&)>>> handlers{
      {gen,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         const WeightedCloud c = load_cloud(gen_cloud, opt.seed);
         std::vector<std::string> header = cfg;
         header.push_back("threads=" + std::to_string(thread_count()));
         write_cloud(w.stream(), c, header);
         return ok;
       }},
      {dim,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         const WeightedCloud c = load_cloud(dim_cloud, opt.seed);
         w.header("dim", cfg);
         DimensionEstimate e;
         if (dim_method == "box") {
           const double ratio = dim_ratio > 0 ? dim_ratio : 2.0;
           std::vector<double> scales = default_scales(resolution_scale(c));
           if (dim_hi > 0 || dim_lo > 0) {
             scales = geometric_scales(dim_hi > 0 ? dim_hi : scales.front(), dim_lo > 0 ? dim_lo : scales.back(), ratio);
           }
           BoxDimensionOptions o;
           o.shape = dim_shape == "axis" ? CellShape::axis : CellShape::lattice;
           o.correction = dim_correction == "chao1" ? CountCorrection::chao1 : CountCorrection::none;
           if (dim_anchors > 0) o.anchors = random_anchors(dim_anchors, scales.front(), opt.seed);
           e = box_dimension(c, scales, o);
           w.columns({"delta", "count", "raw"});
         } else {
           const double ratio = dim_ratio > 0 ? dim_ratio : std::pow(2.0, 0.25);
           if (dim_method == "frostman") {
             const auto radii = geometric_scales(dim_hi > 0 ? dim_hi : 0.5, dim_lo > 0 ? dim_lo : 0.1, ratio);
             e = frostman_exponent(c, radii, {.centers_per_radius = dim_centers, .seed = opt.seed});
             w.columns({"r", "mass", "raw"});
           } else {
             const auto radii = geometric_scales(dim_hi > 0 ? dim_hi : 0.2, dim_lo > 0 ? dim_lo : 0.05, ratio);
             e = correlation_dimension(c, radii, {.seed = opt.seed});
             w.columns({"r", "fraction", "raw"});
           }
         }
         for (const auto& s : e.samples) w.row(s.scale, s.value, s.raw);
         write_estimate(w, e);
         return ok;
       }},
      {project,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         const WeightedCloud c = load_cloud(proj_cloud, opt.seed);
         w.header("project", cfg);
         w.columns({"lambda1", "lambda2", "weight"});
         const auto chart = project_cloud(c, Angle(proj_angle));
         for (std::size_t i = 0; i < chart.size(); ++i) w.row(chart[i].lambda1, chart[i].lambda2, c.weights()[i]);
         return ok;
       }},
      {sweep,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         WeightedCloud c = load_cloud(sweep_cloud, opt.seed);
         if (sweep_s >= 0) c = WeightedCloud(c.points(), c.weights(), sweep_s);
         const SweepResult r = sweep_dimension(c, sweep_grid, geometric_scales(sweep_hi, sweep_lo));
         w.header("sweep", cfg);
         w.columns({"theta", "slope", "r2", "bound_theorem", "bound_bdfm", "bound_fh"});
         std::size_t above = 0;
         for (std::size_t k = 0; k < r.thetas.size(); ++k) {
           const auto& d = r.per_theta_dimension[k];
           w.row(r.thetas[k].radians(), d.slope, d.r_squared, r.bound_theorem, r.bound_bdfm, r.bound_fh);
           if (d.slope >= r.bound_theorem - 0.2) ++above;
         }
         w.columns({"nominal_s", "fraction_above_bound_minus_0.2"});
         w.row(r.nominal_s, static_cast<double>(above) / static_cast<double>(r.thetas.size()));
         return ok;
       }},
      {zdelta,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         const WeightedCloud c = load_cloud(z_cloud, opt.seed);
         w.header("zdelta", cfg);
         w.columns({"delta", "s", "eta", "bad_mass", "mean_fraction", "atom_floor"});
         for (double d : z_deltas) {
           const ZDeltaReport r = z_delta_fraction(c, d, z_s, z_eta, z_grid, z_samples, opt.seed);
           w.row(d, z_s, z_eta, r.bad_point_mass, r.mean_fraction, r.atom_floor);
         }
         return ok;
       }},
      {vtrans,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         vt.seed = opt.seed;
         vt.model = parse_model(vt_model);
         const TransversalityReport r = verify_transversality(vt);
         w.header("transversality", cfg);
         w.columns({"pair_id", "dH", "delta", "n_intervals", "max_len", "C_emp"});
         for (const auto& row : r.rows) w.row(row.pair_id, row.dH, row.delta, row.n_intervals, row.max_len, row.c_emp);
         w.columns({"max_count", "count_ok", "C_emp", "slope", "slope_r2", "envelope_slope", "fitted", "empty", "whole",
                    "nonconverged"});
         w.row(r.max_count, r.count_ok, r.c_emp, r.slope, r.slope_r2, r.envelope_slope, r.fitted_cases, r.empty_cases,
               r.whole_cases, r.nonconverged);
         return r.count_ok ? ok : invariant_failed;
       }},
      {vcover,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         const HPoint v = parse_point(vc_center);
         if (vc_k_lo > vc_k_hi) throw std::invalid_argument("verify-cover: k-lo exceeds k-hi");
         w.header("cover", cfg);
         std::vector<double> radii, counts;
         for (int k = vc_k_lo; k <= vc_k_hi; ++k) {
           const double r = std::ldexp(1.0, -k);
           try {
             const CoverResult c = cover_euclidean_ball(v, r, {.verify_samples = vc_samples, .seed = opt.seed});
             radii.push_back(r);
             counts.push_back(static_cast<double>(c.count));
           } catch (const CoverVerificationError& e) {
             w.comment(std::string("uncovered: ") + e.what());
             return static_cast<int>(invariant_failed);
           }
         }
         // N fitted on the coarse half of the sweep, checked on all of it
         const std::size_t half = (radii.size() + 1) / 2;
         double n_emp = 0.0;
         for (std::size_t i = 0; i < half; ++i) n_emp = std::max(n_emp, counts[i] * radii[i]);
         w.columns({"r", "count", "count_r", "bound", "within_bound"});
         std::vector<double> xs, ys;
         for (std::size_t i = 0; i < radii.size(); ++i) {
           const double bound = std::ceil(n_emp / radii[i]);
           w.row(radii[i], static_cast<std::size_t>(counts[i]), counts[i] * radii[i], bound, counts[i] <= bound);
           xs.push_back(std::log(1.0 / radii[i]));
           ys.push_back(std::log(counts[i]));
         }
         w.columns({"n_emp", "slope", "samples_per_ball"});
         w.row(n_emp, xs.size() >= 2 ? fit_line(xs, ys).slope : 0.0, vc_samples);
         return static_cast<int>(ok);
       }},
      {vident,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         auto checks = tools::metric_checks(vi_trials, opt.seed);
         const auto more = tools::identity_checks(vi_trials, opt.seed);
         checks.insert(checks.end(), more.begin(), more.end());
         w.header("identities", cfg);
         w.columns({"check", "trials", "worst", "tolerance", "pass"});
         for (const auto& c : checks) w.row(c.name, c.trials, c.worst, c.tolerance, c.pass());
         return tools::all_pass(checks) ? ok : invariant_failed;
       }},
      {triple,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         w.header("triple", cfg);
         if (tr_random == 0) {
           const TripleSolution s = triple_point_solve(parse_point(tr_v1), parse_point(tr_v2), parse_point(tr_v3));
           w.columns({"x", "y", "t", "det", "wedge_det", "residual", "degenerate"});
           w.row(s.point.x(), s.point.y(), s.point.t(), s.det, s.wedge_det, s.residual, s.degenerate);
           const bool good = s.degenerate || s.residual <= 1e-9 * s.scale;
           return good ? ok : invariant_failed;
         }
         auto g = stream(opt.seed, 0x7e);
         std::size_t solved = 0, flagged = 0;
         double worst = 0.0, det_worst = 0.0;
         for (std::size_t i = 0; i < tr_random; ++i) {
           const double sc = std::pow(10.0, uniform(g, -1, 1));
           HPoint v[3];
           for (auto& q : v) q = HPoint(sc * uniform(g, -1, 1), sc * uniform(g, -1, 1), uniform(g, -1, 1));
           const TripleSolution s = triple_point_solve(v[0], v[1], v[2]);
           det_worst = std::max(det_worst, std::abs(std::abs(s.det) - std::abs(s.wedge_det)) / std::pow(s.scale, 3));
           if (!s.degenerate) {
             ++solved;
             worst = std::max(worst, s.residual / s.scale);
           }
           // a collinear triple through the same planar line
           const Planar base{sc * uniform(g, -1, 1), sc * uniform(g, -1, 1)};
           const Planar dir = Angle(uniform(g, 0, std::numbers::pi)).direction();
           HPoint c[3];
           for (auto& q : c) q = HPoint(base + (sc * uniform(g, -1, 1)) * dir, uniform(g, -1, 1));
           flagged += triple_point_solve(c[0], c[1], c[2]).degenerate;
         }
         w.columns({"trials", "solved", "worst_residual_over_scale", "det_identity_error", "collinear_flagged"});
         w.row(tr_random, solved, worst, det_worst, flagged);
         const bool good = worst <= 1e-9 && det_worst <= 1e-9 && flagged == tr_random;
         return good ? ok : invariant_failed;
       }},
      {incidence,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         const WeightedCloud c = load_cloud(in_cloud, opt.seed);
         const IncidenceConfig base = make_incidence_config(in_s, in_deltas.front(), in_t, in_slack);
         in_opt.seed = opt.seed;
         const IncidenceSweep s = incidence_sweep(c, base, in_deltas, in_opt);
         w.header("incidence", cfg);
         w.comment("kappa=" + cell(base.kappa) + " eta=" + cell(base.eta) + " alpha=" + cell(base.alpha) +
                   " regime_consistent=" + cell(base.regime_consistent()));
         w.columns({"delta", "count", "slope", "bound_exponent", "standard_error", "related_pairs", "sampled_centers",
                    "inconclusive", "upper_bound"});
         for (const auto& r : s.reports) {
           w.row(r.config.delta, r.count, s.slope, base.bound_exponent(), r.standard_error, r.related_pairs,
                 r.sampled_centers, r.inconclusive, r.config.upper_bound());
         }
         w.columns({"slope", "bound_slope", "fitted"});
         w.row(s.slope, s.bound_slope, s.fitted);
         return ok;
       }},
      {bounds,
       [&](Writer& w, const std::vector<std::string>& cfg) {
         const double cross = improvement_interval().second;
         w.header("bounds", cfg);
         w.comment("crossover=" + cell(cross));
         w.columns({"s", "bound_theorem", "bound_bdfm", "bound_fh"});
         std::vector<double> grid;
         const auto steps = static_cast<std::size_t>(std::llround(2.0 / b_step));
         for (std::size_t i = 1; i <= steps; ++i) grid.push_back(std::min(4.0, 2.0 + b_step * static_cast<double>(i)));
         grid.push_back(2.5);
         grid.push_back(cross);
         std::sort(grid.begin(), grid.end());
         grid.erase(std::unique(grid.begin(), grid.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                    grid.end());
         for (double s : grid) w.row(s, bound_theorem(s), bound_bdfm(s), bound_fh(s));
         const auto checks = tools::bound_checks(1000);
         w.columns({"check", "trials", "worst", "tolerance", "pass"});
         for (const auto& c : checks) w.row(c.name, c.trials, c.worst, c.tolerance, c.pass());
         return tools::all_pass(checks) ? ok : invariant_failed;
       }},
  };

  try {
    return dispatch(app, opt, out, err, handlers);
  } catch (const std::exception& e) {
    err << "heis: " << e.what() << '\n';
    return usage_error;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"heis"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace heis::cli
