#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "heis/group.hpp"
#include "heis/measures.hpp"

namespace heis {

// ---------------------------------------------------------------- angles

struct Arc {
  double start = 0.0;   // in [0, pi)
  double length = 0.0;  // in (0, pi]
};

// Disjoint closed arcs of R / pi Z, sorted by start.
class AngleIntervalSet {
 public:
  AngleIntervalSet() = default;
  static AngleIntervalSet whole();
  // Arcs as [lo, hi] with lo <= hi on the real line; reduced mod pi and
  // merged when gaps are at most merge_tol.
  static AngleIntervalSet from_ranges(std::vector<std::pair<double, double>> ranges, double merge_tol);

  const std::vector<Arc>& intervals() const { return arcs_; }
  std::size_t count() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  bool is_whole() const;
  double max_length() const;
  double total_length() const;
  bool contains(double theta, double tol = 0.0) const;

 private:
  std::vector<Arc> arcs_;
};

struct NearAngleOptions {
  double refine_tol = 1e-10;
  std::size_t samples = std::size_t{1} << 16;
};

struct NearAngleResult {
  AngleIntervalSet set;
  bool coincident = false;  // v == w: whole circle, flagged
  bool converged = true;    // false if a dip could not be resolved against delta
};

// Enclosure of {theta : d(P_theta v, P_theta w) <= delta}.
NearAngleResult near_angle_set(const HPoint& v, const HPoint& w, double delta, const NearAngleOptions& options = {});

struct TransversalityFrame {
  double a = 0.0;
  Planar p{1.0, 0.0};
  Planar q{1.0, 0.0};

  TransversalityFrame() = default;
  TransversalityFrame(double a_, Planar p_, Planar q_);  // throws unless |p| = |q| = 1
  // a = (t - tau - 2 z^zeta) / (|z+zeta||z-zeta|), p = (z-zeta)/|z-zeta|, q = (z+zeta)/|z+zeta|
  static TransversalityFrame from_pair(const HPoint& v, const HPoint& w);
};

struct FValues {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
};

// F(theta) = a + 2 p ^ proj_line(theta, q) with its first two derivatives.
FValues transversality_F(const TransversalityFrame& frame, const Angle& theta);

enum class PairModel { colliding, uniform, tangential };

struct TransversalityOptions {
  std::size_t pairs = 1000;
  std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  std::uint64_t seed = 1;
  PairModel model = PairModel::colliding;
  NearAngleOptions near{};
};

struct TransversalityRow {
  std::size_t pair_id = 0;
  double dH = 0.0;
  double delta = 0.0;
  std::size_t n_intervals = 0;
  double max_len = 0.0;
  double c_emp = 0.0;  // max_len * dH / delta
  bool whole = false;
  bool converged = true;
};

struct TransversalityReport {
  std::vector<TransversalityRow> rows;
  std::size_t max_count = 0;
  bool count_ok = true;              // every set has at most 40 intervals
  double c_emp = 0.0;                // largest max_len * dH / delta
  double slope = 0.0;                // pooled fit of log max_len on log(delta/dH)
  double slope_r2 = 0.0;
  double envelope_slope = 0.0;       // fit of log max over pairs of max_len*dH on log delta
  std::size_t fitted_cases = 0;
  std::size_t empty_cases = 0;
  std::size_t whole_cases = 0;
  std::size_t nonconverged = 0;
};

// Random pair for the transversality experiment.  colliding: w shares the
// vertical projection of v at a random angle, so the near-angle sets are
// nonempty for every delta; uniform: v, w uniform in [-1,1]^3; tangential:
// colliding with zeta the reflection of z in the line through i e^{i theta},
// where the second chart coordinate of the difference has a double zero.
std::pair<HPoint, HPoint> transversality_pair(PairModel model, std::uint64_t seed, std::size_t index);

TransversalityReport verify_transversality(const TransversalityOptions& options);

// ---------------------------------------------------------------- covering

class CoverVerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoverOptions {
  std::size_t verify_samples = 100000;
  std::uint64_t seed = 1;
};

struct CoverResult {
  std::vector<HPoint> centers;
  std::size_t count = 0;
  double cell_scale = 0.0;
  std::size_t verified_samples = 0;
};

// Korányi radius from a unit lattice cell's centre to its farthest point.
double unit_cell_radius();

// Cover of the Euclidean ball B_E(v, r) by Korányi balls of radius r centred
// at lattice cell centres.  Throws CoverVerificationError if a sampled point
// of the ball is left uncovered.
CoverResult cover_euclidean_ball(const HPoint& v, double r, const CoverOptions& options = {});

// ---------------------------------------------------------------- rigidity

struct TripleSolution {
  bool degenerate = false;
  HPoint point;
  double det = 0.0;          // determinant of the linear system
  double wedge_det = 0.0;    // 4 (z1^z2 + z2^z3 + z3^z1)
  double residual = 0.0;     // max_i |t - tau_i - 2 z ^ zeta_i|
  double scale = 1.0;        // max(1, largest planar coordinate)
};

// Unique (z,t) with t - tau_i - 2 z ^ zeta_i = 0 for i = 1,2,3.
TripleSolution triple_point_solve(const HPoint& v1, const HPoint& v2, const HPoint& v3);

inline constexpr double kGapConstant = 64.0;

struct GapCheck {
  double gap = 0.0;                  // |t - tau - 2 z ^ zeta|
  double projected_distance = 0.0;   // d(P_theta v, P_theta w)
  bool within = false;               // projected_distance <= delta
  bool implied_ok = true;            // !within or gap <= kGapConstant * delta
};

GapCheck second_component_gap(const HPoint& v, const HPoint& w, const Angle& theta, double delta);

// ---------------------------------------------------------------- incidences

struct IncidenceConfig {
  double s = 3.0;
  double kappa = 0.0;
  double eta = 0.0;
  double alpha = 0.5;
  double delta = 0.1;
  double t = 0.25;
  double theta_separation = 0.0;  // delta^(4 eta)
  double line_threshold = 0.0;    // delta^alpha
  double annulus_inner = 0.25;    // t
  double annulus_outer = 0.5;     // 2t

  // t >= delta^(1 - 100 eta) and alpha in (0,1)
  bool regime_consistent() const;
  // exponent of delta in the second term of the upper bound
  double bound_exponent() const;
  // max{t^(2s) delta^(s/2), t^(1+s) delta^bound_exponent()}
  double upper_bound() const;
};

// Config at dimension s with kappa = kappa(s).  eta is taken at the Frostman
// exponent s - slack, where it is strictly positive even if kappa sits on a
// branch of the maximum.
IncidenceConfig make_incidence_config(double s, double delta, double t, double frostman_slack = 0.01);
// Same config with delta replaced and the delta-dependent thresholds recomputed.
IncidenceConfig with_delta(const IncidenceConfig& base, double delta);

struct IncidenceOptions {
  std::size_t theta_grid = 64;
  std::uint64_t seed = 1;
  std::size_t centers = 0;                   // 0: every point is a centre
  std::uint64_t exact_budget = 200000;       // enumerate triples exactly when |R(v)|^3 <= budget
  std::size_t triples_per_center = 512;      // Monte Carlo samples otherwise
  std::size_t min_pairs = 100;
};

struct IncidenceReport {
  IncidenceConfig config;
  double count = 0.0;           // sum_v nu(v) sum_{v1,v2,v3} nu(v1) nu(v2) nu(v3) [quadruple]
  double standard_error = 0.0;
  std::size_t related_pairs = 0;
  std::size_t centers_used = 0;
  std::size_t sampled_centers = 0;  // centres whose triples were sampled rather than enumerated
  bool inconclusive = false;    // fewer than min_pairs related pairs
};

// Whether w is related to v at grid angle k (a "witness").
std::vector<unsigned char> witness_angles(const HPoint& v, const HPoint& w, double delta, std::size_t theta_grid);

IncidenceReport incidence_experiment(const WeightedCloud& cloud, const IncidenceConfig& config,
                                     const IncidenceOptions& options = {});

struct IncidenceSweep {
  std::vector<IncidenceReport> reports;
  double slope = 0.0;            // fit of log count on log(1/delta)
  double bound_slope = 0.0;      // -min{s/2, bound exponent}
  bool fitted = false;
};

IncidenceSweep incidence_sweep(const WeightedCloud& cloud, const IncidenceConfig& base,
                               const std::vector<double>& deltas, const IncidenceOptions& options = {});

}  // namespace heis
