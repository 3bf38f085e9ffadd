#pragma once

// Quantum Ito coefficient algebra for a single Hudson-Parthasarathy noise
// channel. The flow j_t is never materialized: by the homomorphism property
// every differential is represented by its four system-operator
// coefficients, multiplied as matrices wherever j_t images multiply.

#include <array>
#include <vector>

#include "qbs/operator_core.hpp"

namespace qbs {

/// System operators of the unitary evolution: stock observable X,
/// Hamiltonian H, coupling L, scattering S.
struct ModelOperators {
  HermitianMatrix X;
  HermitianMatrix H;
  ComplexMatrix L;
  UnitaryMatrix S;

  /// Throws DimensionError unless all four share one dimension.
  ModelOperators(HermitianMatrix x, HermitianMatrix h, ComplexMatrix l, UnitaryMatrix s);

  Index dim() const noexcept { return X.dim(); }
};

/// Coefficients of dA^dagger, dLambda, dA and dt.
struct QuantumStochasticDifferential {
  ComplexMatrix creation;
  ComplexMatrix conservation;
  ComplexMatrix annihilation;
  ComplexMatrix time;

  static QuantumStochasticDifferential zero(Index dim);

  Index dim() const noexcept { return creation.rows(); }
  std::array<const ComplexMatrix*, 4> slots() const {
    return {&creation, &conservation, &annihilation, &time};
  }

  QuantumStochasticDifferential& operator+=(const QuantumStochasticDifferential& o);
  friend QuantumStochasticDifferential operator+(QuantumStochasticDifferential a,
                                                 const QuantumStochasticDifferential& b) {
    a += b;
    return a;
  }
  friend QuantumStochasticDifferential operator*(Complex s, QuantumStochasticDifferential d);
};

inline constexpr std::array<const char*, 4> kSlotNames = {"creation", "conservation",
                                                         "annihilation", "time"};

/// Per-slot ||a - b||_F / max(1, ||b||_F).
std::array<double, 4> slot_deviations(const QuantumStochasticDifferential& a,
                                      const QuantumStochasticDifferential& b);
double max_slot_deviation(const QuantumStochasticDifferential& a,
                          const QuantumStochasticDifferential& b);

struct FlowCoefficients {
  ComplexMatrix alpha;         // [L*, X] S
  ComplexMatrix alpha_dagger;  // S* [X, L]
  ComplexMatrix lambda;        // S* X S - X
  ComplexMatrix theta;         // i[H, X] - (L*L X + X L*L - 2 L* X L)/2
};

FlowCoefficients flow_coefficients(const HermitianMatrix& x, const ModelOperators& m);

/// dj_t(X) = alpha^dagger dA^dagger + lambda dLambda + alpha dA + theta dt
QuantumStochasticDifferential flow_differential(const HermitianMatrix& x,
                                                const ModelOperators& m);

/// Product under the Ito table (left coefficient times right coefficient):
///   dLambda dA^dagger = dA^dagger, dLambda dLambda = dLambda,
///   dA dA^dagger = dt,             dA dLambda = dA,
/// every other product of basis differentials vanishes.
QuantumStochasticDifferential ito_product(const QuantumStochasticDifferential& d1,
                                          const QuantumStochasticDifferential& d2);

/// (dj_t(X))^k for k >= 2 from the power rule:
///   (lambda^{k-1} alpha^dagger, lambda^k, alpha lambda^{k-1},
///    alpha lambda^{k-2} alpha^dagger).
QuantumStochasticDifferential qsd_power_closed_form(const HermitianMatrix& x,
                                                    const ModelOperators& m, int k);

/// (dj_t(X))^k by repeated left multiplication with dj_t(X); k >= 1.
QuantumStochasticDifferential qsd_power_iterated(const HermitianMatrix& x,
                                                 const ModelOperators& m, int k);

struct BrownianReport {
  double lambda_norm = 0.0;             // ||S* X S - X||_F
  double alpha_deviation = 0.0;         // ||alpha - [L*, X]||_F
  double alpha_dagger_deviation = 0.0;  // ||alpha^dagger - [X, L]||_F
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Confirms the S = 1 reduction. Throws DomainError if ||S - I||_F > 1e-12.
/// Tolerance is 1e-14 max(1, ||X||_F) plus 2 ||S - I||_F ||X||_F for S that is
/// the identity only up to the precondition tolerance.
BrownianReport brownian_reduction_check(const ModelOperators& m);

struct PoissonReport {
  std::vector<Index> interior;
  double interior_deviation = 0.0;  // max |(lambda - I)_ij|, i, j in interior
  double full_deviation = 0.0;      // max |(lambda - I)_ij| over all entries
  double exterior_magnitude = 0.0;  // max |lambda_ij| with i or j outside interior
  Complex lambda_trace{};           // always 0 in exact arithmetic
  double trace_defect = 0.0;        // |trace(lambda) - dim|
  bool trace_obstruction = true;    // lambda = I is impossible at finite dim
  double tolerance = 1e-14;
  bool passed = false;              // interior_deviation <= tolerance
};

/// Evaluates lambda = S* X S - X against the identity on an interior index
/// set. Throws DomainError on an empty or out-of-range mask.
PoissonReport poisson_reduction_check(const ModelOperators& m, std::span<const Index> interior);

/// theta(X) = i[H, X] - (L*L X + X L*L - 2 L* X L)/2, the dt coefficient.
ComplexMatrix lindblad_generator(const ComplexMatrix& x, const ModelOperators& m);

/// d^2 x d^2 matrix of X -> theta(X) acting on column-stacked vec(X).
ComplexMatrix lindblad_superoperator(const ModelOperators& m);

/// max(1000 t, 100)
int default_semigroup_steps(double t);

/// Integrates dX/dt = theta(X) from x0 with `steps` classical RK4 steps.
HermitianMatrix semigroup_evolve(const HermitianMatrix& x0, const ModelOperators& m, double t,
                                 int steps);
/// exp(t G) vec(x0) with G the Lindblad superoperator.
HermitianMatrix semigroup_evolve_exact(const HermitianMatrix& x0, const ModelOperators& m,
                                       double t);

/// <u, M u> for a unit vector u (norm within 1e-12).
Complex expectation(const ComplexVector& state, const ComplexMatrix& m);

}  // namespace qbs
