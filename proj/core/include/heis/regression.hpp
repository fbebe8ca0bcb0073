#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace heis {

struct ScaleSample {
  double scale = 0.0;   // delta or r
  double value = 0.0;   // count, mass or pair fraction entering the fit
  double raw = 0.0;     // uncorrected count where a correction was applied
};

// Log-log least-squares fit.  For box counts x = log(1/scale); for masses and
// pair fractions x = log(scale).  Flagged degenerate when y is constant or
// fewer than two distinct scales remain.
struct DimensionEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  bool degenerate = false;
  std::string method;
  std::vector<ScaleSample> samples;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool degenerate = false;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// geometric scale sequence hi, hi/ratio, ... while >= lo
std::vector<double> geometric_scales(double hi, double lo, double ratio = 2.0);

}  // namespace heis
