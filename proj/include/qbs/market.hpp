#pragma once

#include <cmath>

#include "qbs/ito_flow.hpp"

namespace qbs {

/// Relative commutator bound used wherever two operators must share an
/// eigenbasis: ||[A, B]||_F <= 1e-10 ||A||_F ||B||_F.
inline constexpr double kCommutationTolerance = 1e-10;

double min_eigenvalue(const HermitianMatrix& m);
bool is_positive_definite(const HermitianMatrix& m);

/// ||[a, b]||_F / (||a||_F ||b||_F), 0 when either is zero.
double relative_commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// Throws DomainError naming `what` when the relative commutator exceeds the
/// tolerance.
void require_commuting(const ComplexMatrix& a, const ComplexMatrix& b, std::string_view what,
                       double tol = kCommutationTolerance);
/// Throws DomainError unless every eigenvalue of m is > 0.
void require_positive_definite(const HermitianMatrix& m, std::string_view what);

/// Quantum market: system operators, strike operator K, bond rate r,
/// maturity T and initial bond value beta0 (bond value beta0 e^{r t}).
struct MarketModel {
  ModelOperators ops;
  HermitianMatrix K;
  double r;
  double T;
  double beta0;

  /// Validates X > 0, K > 0, [X, K] = 0, r >= 0, T > 0, beta0 > 0.
  MarketModel(ModelOperators ops, HermitianMatrix K, double r, double T, double beta0);

  Index dim() const noexcept { return ops.dim(); }
  double bond(double t) const { return beta0 * std::exp(r * t); }
};

}  // namespace qbs
