#include "heis/regression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("fit_line: need matching nonempty samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  if (sxx <= 0.0) {
    fit.degenerate = true;
    fit.intercept = my;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy <= 1e-24 * (1.0 + my * my)) {
    fit.degenerate = true;
    fit.slope = 0.0;
    fit.intercept = my;
    fit.r_squared = 1.0;
    return fit;
  }
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr += e * e;
  }
  fit.r_squared = std::max(0.0, std::min(1.0, 1.0 - ssr / syy));
  return fit;
}

std::vector<double> geometric_scales(double hi, double lo, double ratio) {
  if (!(hi > 0.0) || !(lo > 0.0) || !(ratio > 1.0)) throw std::invalid_argument("geometric_scales: bad range");
  std::vector<double> out;
  for (double s = hi; s >= lo * (1.0 - 1e-12); s /= ratio) out.push_back(s);
  return out;
}

}  // namespace heis
