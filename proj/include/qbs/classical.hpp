#pragma once

namespace qbs {

struct ClassicalQuote {
  double price;
  double delta;
};

/// Black-Scholes European call on a stock at x with strike K, rate r,
/// volatility sigma and time to maturity t:
///   u = x Phi(g) - K e^{-r t} Phi(g - sigma sqrt(t)),
///   g = (ln(x/K) + (r + sigma^2/2) t) / (sigma sqrt(t)),   delta = Phi(g).
/// Requires x, K, sigma, t > 0 and r >= 0.
ClassicalQuote classical_bs(double x, double K, double r, double sigma, double t);

}  // namespace qbs
