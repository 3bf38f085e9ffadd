#include "qbs/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qbs/normal.hpp"

namespace qbs {

namespace {

void require_positive_time(double t, const char* op) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << op << ": time to maturity must be finite and > 0 (got " << t << ")";
    throw DomainError(os.str());
  }
}

// K f(z) for K commuting with z.
HermitianMatrix strike_times(const HermitianMatrix& K, const ComplexMatrix& fz) {
  return HermitianMatrix::from_rounded(0.5 * (K.matrix() * fz + fz * K.matrix()));
}

}  // namespace

ScalarPrice scalar_price(double t, double z, double r) {
  const double st = std::sqrt(t);
  const double g = z / st + (r + 0.5) * st;
  const double h = z / st + (r - 0.5) * st;
  const double ez = std::exp(z);
  const double disc = std::exp(-r * t);
  const double Pg = normal_cdf(g);
  const double Ph = normal_cdf(h);
  const double pg = normal_pdf(g);
  const double ph = normal_pdf(h);

  const double g_t = -z / (2.0 * t * st) + (r + 0.5) / (2.0 * st);
  const double h_t = -z / (2.0 * t * st) + (r - 0.5) / (2.0 * st);
  // d/dz g = d/dz h = t^{-1/2}; phi'(y) = -y phi(y)
  ScalarPrice p;
  p.value = ez * Pg - disc * Ph;
  p.d_t = ez * pg * g_t - disc * ph * h_t + r * disc * Ph;
  p.d_z = ez * Pg + ez * pg / st - disc * ph / st;
  p.d_zz = ez * Pg + 2.0 * ez * pg / st - ez * g * pg / t + disc * h * ph / t;
  return p;
}

HermitianMatrix log_moneyness(const HermitianMatrix& x, const HermitianMatrix& K) {
  require_same_dim(x, K, "log_moneyness");
  require_positive_definite(x, "log_moneyness (stock)");
  require_positive_definite(K, "log_moneyness (strike)");
  require_commuting(x, K, "log_moneyness");
  return operator_log(x) - operator_log(K);
}

std::pair<HermitianMatrix, HermitianMatrix> g_h_arguments(double t, const HermitianMatrix& z,
                                                          double r) {
  require_positive_time(t, "g_h_arguments");
  const double st = std::sqrt(t);
  const auto I = HermitianMatrix::identity(z.dim());
  const HermitianMatrix scaled = (1.0 / st) * z;
  return {scaled + ((r + 0.5) * st) * I, scaled + ((r - 0.5) * st) * I};
}

PriceQuote price(double t, const HermitianMatrix& z, const MarketModel& model) {
  require_positive_time(t, "price");
  require_same_dim(z, model.K, "price");
  require_commuting(z, model.K, "price (z, K)");
  const double r = model.r;
  const ComplexMatrix f =
      apply_scalar_function(z, [&](double s) { return scalar_price(t, s, r).value; });
  return PriceQuote{t, z, strike_times(model.K, f), std::nullopt};
}

PriceDerivatives price_derivatives(double t, const HermitianMatrix& z, const MarketModel& model) {
  require_positive_time(t, "price_derivatives");
  require_same_dim(z, model.K, "price_derivatives");
  require_commuting(z, model.K, "price_derivatives (z, K)");
  const double r = model.r;
  const auto spec = spectral_decompose(z);
  auto part = [&](double ScalarPrice::*field) {
    return strike_times(model.K, apply_scalar_function(spec, [&](double s) {
                          return scalar_price(t, s, r).*field;
                        }));
  };
  return {part(&ScalarPrice::d_t), part(&ScalarPrice::d_z), part(&ScalarPrice::d_zz)};
}

ResidualReport residual_eq8(double t, const HermitianMatrix& z, const MarketModel& model,
                            double tol) {
  const auto q = price(t, z, model);
  const auto d = price_derivatives(t, z, model);
  const double r = model.r;
  const ComplexMatrix res = d.omega10.matrix() - 0.5 * d.omega02.matrix() -
                            (r - 0.5) * d.omega01.matrix() + r * q.omega.matrix();
  std::vector<GridPoint> grid;
  const auto spec = spectral_decompose(z);
  for (Index i = 0; i < spec.eigenvalues.size(); ++i) grid.push_back({t, spec.eigenvalues(i)});
  return ResidualReport::make(operator_norm(res), tol, std::move(grid));
}

ResidualReport residual_eq8_candidate(const ValueSurface& omega, std::span<const double> times,
                                      std::span<const double> points, double r, double tol,
                                      double step) {
  double worst = 0.0;
  std::vector<GridPoint> grid;
  for (double t : times) {
    require_positive_time(t, "residual_eq8_candidate");
    const double ht = std::min(step, 0.5 * t);
    for (double z : points) {
      const double hz = step;
      const double w = omega(t, z);
      const double w_t = (omega(t + ht, z) - omega(t - ht, z)) / (2.0 * ht);
      const double w_p = omega(t, z + hz);
      const double w_m = omega(t, z - hz);
      const double w_z = (w_p - w_m) / (2.0 * hz);
      const double w_zz = (w_p - 2.0 * w + w_m) / (hz * hz);
      const double res = w_t - 0.5 * w_zz - (r - 0.5) * w_z + r * w;
      worst = std::max(worst, std::abs(res));
      if (std::isnan(res)) worst = res;
      grid.push_back({t, z});
    }
  }
  return ResidualReport::make(worst, tol, std::move(grid));
}

HermitianMatrix terminal_payoff_spectral(const HermitianMatrix& zT, const HermitianMatrix& K) {
  require_same_dim(zT, K, "terminal_payoff");
  require_commuting(zT, K, "terminal_payoff (zT, K)");
  const HermitianMatrix x = strike_times(K, operator_exp(zT).matrix());
  return positive_part(x - K);
}

double terminal_payoff_expectation(const HermitianMatrix& zT, const HermitianMatrix& K,
                                   const ComplexVector& state) {
  require_same_dim(zT, K, "terminal_payoff");
  require_commuting(zT, K, "terminal_payoff (zT, K)");
  const HermitianMatrix x = strike_times(K, operator_exp(zT).matrix());
  return std::max(0.0, expectation(state, (x - K).matrix()).real());
}

ResidualReport terminal_limit_check(const HermitianMatrix& zT, const MarketModel& model,
                                    double t_small, double gap, double rel_tol) {
  const auto spec = spectral_decompose(zT);
  for (Index i = 0; i < spec.eigenvalues.size(); ++i) {
    if (std::abs(spec.eigenvalues(i)) < gap) {
      std::ostringstream os;
      os << "terminal_limit_check: eigenvalue " << spec.eigenvalues(i) << " (index " << i
         << ") lies within " << gap << " of 0";
      throw DomainError(os.str());
    }
  }
  const auto payoff = terminal_payoff_spectral(zT, model.K);
  const auto q = price(t_small, zT, model);
  const double tol = rel_tol * std::max(1.0, operator_norm(payoff));
  std::vector<GridPoint> grid;
  for (Index i = 0; i < spec.eigenvalues.size(); ++i)
    grid.push_back({t_small, spec.eigenvalues(i)});
  return ResidualReport::make(operator_norm((q.omega - payoff).matrix()), tol, std::move(grid));
}

PriceQuote reasonable_price(const MarketModel& model, const ComplexVector& state) {
  const auto z0 = log_moneyness(model.ops.X, model.K);
  auto q = price(model.T, z0, model);
  q.omega_expectation = expectation(state, q.omega).real();
  return q;
}

const char* to_string(DeltaConvention c) {
  switch (c) {
    case DeltaConvention::log_price:
      return "log_price";
    case DeltaConvention::classical:
      return "classical";
  }
  return "unknown";
}

}  // namespace qbs
