#pragma once

// Scalar forms of the quantum Black-Scholes equation after the Brownian and
// Poisson reductions, evaluated for user-supplied candidates u(t, x).

#include <functional>
#include <span>

#include "qbs/operator_core.hpp"
#include "qbs/residual.hpp"

namespace qbs {

using ScalarSurface = std::function<double(double, double)>;

/// max |u_t - (u_xx g(x) / 2 + u_x x r - u r)| over the grid, with central
/// finite differences (relative step 1e-4). Throws DomainError for x <= 0.
ResidualReport residual_brownian_scalar(const ScalarSurface& u, const ScalarMap& g, double r,
                                        std::span<const GridPoint> grid, double tol = 1e-6);

/// Candidate with analytic derivatives. space_derivative(k, t, x) is
/// d^k u / dx^k for k >= 1.
struct SmoothSurface {
  ScalarSurface value;
  ScalarSurface time_derivative;
  std::function<double(int, double, double)> space_derivative;
};

struct PoissonResidualReport {
  ResidualReport residual;
  int k_max = 0;
  /// max over the grid of |u_{0,k_max} g / k_max!|, the last retained term.
  double tail_estimate = 0.0;
};

/// max |u_t - (sum_{k=2}^{k_max} u_{0k} g / k! + u_x x r - u r)| over the grid.
PoissonResidualReport residual_poisson_scalar(const SmoothSurface& u, const ScalarMap& g,
                                              double r, int k_max,
                                              std::span<const GridPoint> grid, double tol = 1e-6);

}  // namespace qbs
