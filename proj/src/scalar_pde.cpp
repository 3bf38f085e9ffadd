#include "qbs/scalar_pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbs {

namespace {

void require_positive_point(const GridPoint& p, const char* op) {
  if (!(p.x > 0.0) || !std::isfinite(p.x)) {
    std::ostringstream os;
    os << op << ": grid point x = " << p.x << " is not > 0";
    throw DomainError(os.str());
  }
  if (!(p.t > 0.0) || !std::isfinite(p.t)) {
    std::ostringstream os;
    os << op << ": grid point t = " << p.t << " is not > 0";
    throw DomainError(os.str());
  }
}

}  // namespace

ResidualReport residual_brownian_scalar(const ScalarSurface& u, const ScalarMap& g, double r,
                                        std::span<const GridPoint> grid, double tol) {
  double worst = 0.0;
  for (const auto& p : grid) {
    require_positive_point(p, "residual_brownian_scalar");
    const double ht = std::min(1e-4, 0.5 * p.t);
    const double hx = std::min(1e-4 * std::max(1.0, p.x), 0.5 * p.x);
    const double v = u(p.t, p.x);
    const double u_t = (u(p.t + ht, p.x) - u(p.t - ht, p.x)) / (2.0 * ht);
    const double up = u(p.t, p.x + hx);
    const double um = u(p.t, p.x - hx);
    const double u_x = (up - um) / (2.0 * hx);
    const double u_xx = (up - 2.0 * v + um) / (hx * hx);
    const double res = u_t - (0.5 * u_xx * g(p.x) + u_x * p.x * r - v * r);
    if (std::isnan(res)) return ResidualReport::make(res, tol, {grid.begin(), grid.end()});
    worst = std::max(worst, std::abs(res));
  }
  return ResidualReport::make(worst, tol, {grid.begin(), grid.end()});
}

PoissonResidualReport residual_poisson_scalar(const SmoothSurface& u, const ScalarMap& g,
                                              double r, int k_max,
                                              std::span<const GridPoint> grid, double tol) {
  if (k_max < 2) throw DomainError("residual_poisson_scalar: k_max must be >= 2");
  PoissonResidualReport out;
  out.k_max = k_max;
  double worst = 0.0;
  for (const auto& p : grid) {
    require_positive_point(p, "residual_poisson_scalar");
    const double gx = g(p.x);
    double series = 0.0;
    double fact = 1.0;
    double last = 0.0;
    for (int k = 2; k <= k_max; ++k) {
      fact *= k;
      last = u.space_derivative(k, p.t, p.x) * gx / fact;
      series += last;
    }
    const double res = u.time_derivative(p.t, p.x) -
                       (series + u.space_derivative(1, p.t, p.x) * p.x * r - u.value(p.t, p.x) * r);
    worst = std::max(worst, std::abs(res));
    out.tail_estimate = std::max(out.tail_estimate, std::abs(last));
  }
  out.residual = ResidualReport::make(worst, tol, {grid.begin(), grid.end()});
  return out;
}

}  // namespace qbs
