#pragma once

// Operator-valued European call price in the unit-volatility quantum
// Brownian model. With stock operator x = K e^z (z commuting with K) and
// t the time to maturity,
//
//   omega(t, z) = K e^z Phi(g) - K Phi(h) e^{-r t},
//   g = z t^{-1/2} + (r + 1/2) t^{1/2},   h = g - t^{1/2},
//
// solves omega_t = omega_zz / 2 + (r - 1/2) omega_z - r omega with
// omega(0+, z) = (K e^z - K)^+.

#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "qbs/market.hpp"
#include "qbs/residual.hpp"

namespace qbs {

/// Closed form per unit strike and its partial derivatives at a scalar
/// log-moneyness z: omega = K * value, omega_{1 0} = K * d_t, ...
struct ScalarPrice {
  double value;
  double d_t;
  double d_z;
  double d_zz;
};

ScalarPrice scalar_price(double t, double z, double r);

/// z = log(x) - log(K) for commuting positive definite x and K.
HermitianMatrix log_moneyness(const HermitianMatrix& x, const HermitianMatrix& K);

/// (g, h) with g - h = sqrt(t) I. Throws DomainError for t <= 0.
std::pair<HermitianMatrix, HermitianMatrix> g_h_arguments(double t, const HermitianMatrix& z,
                                                          double r);

struct PriceQuote {
  double t;
  HermitianMatrix z;
  HermitianMatrix omega;
  std::optional<double> omega_expectation;
};

PriceQuote price(double t, const HermitianMatrix& z, const MarketModel& model);

struct PriceDerivatives {
  HermitianMatrix omega10;  // d/dt
  HermitianMatrix omega01;  // d/dz
  HermitianMatrix omega02;  // d^2/dz^2
};

PriceDerivatives price_derivatives(double t, const HermitianMatrix& z, const MarketModel& model);

/// Operator norm of omega_10 - omega_02/2 - (r - 1/2) omega_01 + r omega for
/// the closed form. Grid: (t, eigenvalue of z).
ResidualReport residual_eq8(double t, const HermitianMatrix& z, const MarketModel& model,
                            double tol = 1e-6);

/// Candidate omega(t, z) per unit strike.
using ValueSurface = std::function<double(double, double)>;

/// Same residual for an arbitrary scalar candidate, with central finite
/// differences of the given step. Reports the maximum over times x points.
ResidualReport residual_eq8_candidate(const ValueSurface& omega, std::span<const double> times,
                                      std::span<const double> points, double r,
                                      double tol = 1e-6, double step = 1e-4);

/// positive_part(K e^{zT} - K)
HermitianMatrix terminal_payoff_spectral(const HermitianMatrix& zT, const HermitianMatrix& K);
/// max(0, <u, (K e^{zT} - K) u>)
double terminal_payoff_expectation(const HermitianMatrix& zT, const HermitianMatrix& K,
                                   const ComplexVector& state);

/// ||price(t_small, zT) - terminal_payoff_spectral(zT, K)|| against
/// rel_tol max(1, ||payoff||). Throws DomainError when an eigenvalue of zT
/// lies within `gap` of 0, where the limit is governed by the Phi transition.
ResidualReport terminal_limit_check(const HermitianMatrix& zT, const MarketModel& model,
                                    double t_small = 1e-8, double gap = 0.1,
                                    double rel_tol = 1e-6);

/// omega(T, z0) with X = K e^{z0}, plus its expectation in `state`.
PriceQuote reasonable_price(const MarketModel& model, const ComplexVector& state);

enum class DeltaConvention {
  /// a = omega_{0 1}(T - t, z_t), the sensitivity to log price
  log_price,
  /// a = omega_{0 1}(T - t, z_t) x^{-1}, the classical delta
  classical,
};

const char* to_string(DeltaConvention c);

struct HedgePosition {
  HermitianMatrix a;
  HermitianMatrix b;
  HermitianMatrix value;
  double bond;                   // beta_t
  double reconstruction_defect;  // ||a x + b beta_t - omega||_F / max(1, ||omega||_F)
  DeltaConvention convention;
};

/// Holdings at calendar time t in (0, T) for the stock operator j_x.
HedgePosition hedge_portfolio(double t, const HermitianMatrix& jx, const MarketModel& model,
                              DeltaConvention convention = DeltaConvention::log_price);

}  // namespace qbs
