#include "qbs/classical.hpp"

#include <cmath>
#include <sstream>

#include "qbs/errors.hpp"
#include "qbs/normal.hpp"

namespace qbs {

ClassicalQuote classical_bs(double x, double K, double r, double sigma, double t) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "classical_bs: " << name << " must be finite and > 0 (got " << v << ")";
      throw DomainError(os.str());
    }
  };
  positive(x, "x");
  positive(K, "K");
  positive(sigma, "sigma");
  positive(t, "t");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("classical_bs: r must be finite and >= 0");

  const double vol = sigma * std::sqrt(t);
  const double g = (std::log(x / K) + (r + 0.5 * sigma * sigma) * t) / vol;
  const double h = g - vol;
  const double delta = normal_cdf(g);
  return {x * delta - K * std::exp(-r * t) * normal_cdf(h), delta};
}

}  // namespace qbs
