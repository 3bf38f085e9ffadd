#pragma once

// Coefficient matching for a value process V_t = F(t, j_t(X)).
//
// The Ito expansion of F produces one quantum stochastic differential; the
// self-financing condition dV = a dj_t(X) + b dbeta produces another. The
// quantum Black-Scholes equations state that the two agree slot by slot.

#include <functional>

#include "qbs/ito_flow.hpp"

namespace qbs {

/// (time order, space order, t, x) -> d^{n+k} F / dt^n dx^k at (t, x).
using SurfaceDerivative = std::function<double(int, int, double, double)>;

struct CoefficientEquationOptions {
  /// Highest k kept in sum_k a_{0,k}(t, X) (dj_t(X))^k.
  int truncation_degree = 8;
  /// Replace lambda by the identity in both sides (Poisson reduction).
  bool poisson_substitution = false;
};

struct CoefficientEquationReport {
  QuantumStochasticDifferential series_side;
  QuantumStochasticDifferential self_financing_side;
  std::array<double, 4> slot_deviation{};  // ||series - self_financing||_F per slot
  double max_deviation = 0.0;
  int truncation_degree = 0;
};

/// Both sides of the coefficient equations at time t for the holding a:
///   series:          a_{1,0} dt + sum_{k=1}^{N} a_{0,k} (dj_t(X))^k
///   self-financing:  a dj_t(X) + (F - a X) r dt
/// with a_{n,k}(t, X) = F_{n,k}(t, X) / (n! k!) by spectral calculus on X.
CoefficientEquationReport coefficient_equations(const SurfaceDerivative& f, double t,
                                                const ModelOperators& m,
                                                const HermitianMatrix& a, double r,
                                                const CoefficientEquationOptions& options = {});

}  // namespace qbs
