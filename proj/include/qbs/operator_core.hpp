#pragma once

// Dense complex operators on a finite-dimensional system space and the
// Hermitian functional calculus built on their spectral decomposition.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "qbs/errors.hpp"

namespace qbs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

double frobenius_norm(const ComplexMatrix& m);
/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Throws InvariantError unless `m` is square with finite entries.
void require_square_finite(const ComplexMatrix& m, std::string_view what);
/// Throws DimensionError unless `a` and `b` are square of the same size.
void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      std::string_view op);

/// FNV-1a over the raw entries; used to identify inputs in error messages.
std::uint64_t matrix_hash(const ComplexMatrix& m);

class HermitianMatrix {
 public:
  /// Relative Frobenius tolerance on ||M - M*||.
  static constexpr double kTolerance = 1e-12;

  /// Checks squareness, finiteness and Hermiticity; never symmetrizes.
  explicit HermitianMatrix(ComplexMatrix m);

  static HermitianMatrix identity(Index dim);
  static HermitianMatrix zero(Index dim);
  static HermitianMatrix diagonal(const RealVector& d);
  static HermitianMatrix diagonal(std::initializer_list<double> d);
  /// (m + m*)/2 for results that are Hermitian in exact arithmetic and only
  /// carry rounding asymmetry. Still rejects m whose defect exceeds `tol`.
  static HermitianMatrix from_rounded(const ComplexMatrix& m,
                                      double tol = 1e-9);

  /// ||M - M*||_F / max(1, ||M||_F)
  static double defect(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  operator const ComplexMatrix&() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  HermitianMatrix operator-() const;
  friend HermitianMatrix operator+(const HermitianMatrix& a,
                                   const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a,
                                   const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);
  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.dim() == b.dim() && a.m_ == b.m_;
  }

 private:
  struct Unchecked {};
  HermitianMatrix(Unchecked, ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

class UnitaryMatrix {
 public:
  /// ||M*M - I||_F <= kTolerance * dim
  static constexpr double kTolerance = 1e-12;

  explicit UnitaryMatrix(ComplexMatrix m);
  static UnitaryMatrix identity(Index dim);
  static double defect(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  operator const ComplexMatrix&() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  friend bool operator==(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return a.dim() == b.dim() && a.m_ == b.m_;
  }

 private:
  ComplexMatrix m_;
};

/// M = V diag(eigenvalues) V*, eigenvalues ascending. Each eigenvector's
/// largest-modulus component is real and positive.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

ComplexMatrix adjoint(const ComplexMatrix& m);
/// AB - BA
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

SpectralDecomposition spectral_decompose(const HermitianMatrix& m);

using ScalarMap = std::function<double(double)>;

/// V diag(f(eigenvalues)) V*. Throws DomainError if f is non-finite at an
/// eigenvalue.
ComplexMatrix apply_scalar_function(const HermitianMatrix& m,
                                    const ScalarMap& f);
ComplexMatrix apply_scalar_function(const SpectralDecomposition& spec,
                                    const ScalarMap& f);
/// apply_scalar_function with the result typed Hermitian.
HermitianMatrix hermitian_function(const HermitianMatrix& m,
                                   const ScalarMap& f);
HermitianMatrix hermitian_function(const SpectralDecomposition& spec,
                                   const ScalarMap& f);

/// Spectral logarithm; throws DomainError naming the first non-positive
/// eigenvalue.
HermitianMatrix operator_log(const HermitianMatrix& h);
HermitianMatrix operator_exp(const HermitianMatrix& a);
/// Spectral x -> max(0, x).
HermitianMatrix positive_part(const HermitianMatrix& m);
/// Standard normal CDF applied spectrally.
HermitianMatrix phi_operator(const HermitianMatrix& m);
/// exp(i t H), unitary for Hermitian H.
ComplexMatrix unitary_propagator(const HermitianMatrix& h, double t);

/// Solves [X, L] = W X for L with zero diagonal in the eigenbasis of X.
///
/// In that basis L_ij = W_ij * x_j / (x_i - x_j) for i != j. Requires the
/// eigenvalues of X to be distinct and nonzero and W to have zero diagonal in
/// the same basis; with these, [L*, X][X, L] = X W* W X = X^2.
ComplexMatrix sylvester_L(const HermitianMatrix& x, const UnitaryMatrix& w);

}  // namespace qbs
