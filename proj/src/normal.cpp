#include "qbs/normal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qbs/errors.hpp"

namespace qbs {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double phi_series(double x, int n_max) {
  if (n_max < 1) throw DomainError("phi_series: n_max must be >= 1");
  if (!(std::abs(x) <= kPhiSeriesWindow)) {
    std::ostringstream os;
    os << "phi_series: |x| = " << std::abs(x) << " outside the validity window "
       << kPhiSeriesWindow;
    throw DomainError(os.str());
  }
  // power_n = (-1)^n x^{2n+1} / (2^n n!)
  double power = x;
  double sum = 0.0;
  const double x2 = x * x;
  for (int n = 0; n <= n_max; ++n) {
    sum += power / (2.0 * n + 1.0);
    power *= -x2 / (2.0 * (n + 1));
  }
  return 0.5 + sum / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace qbs
