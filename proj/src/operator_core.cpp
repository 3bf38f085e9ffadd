#include "qbs/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "qbs/normal.hpp"

namespace qbs {

namespace {

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

void require_square_finite(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvariantError(std::string(what) + ": matrix must be square and non-empty (got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")",
                         0.0);
  }
  if (!m.allFinite()) {
    throw InvariantError(std::string(what) + ": matrix has non-finite entries", 0.0);
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, std::string_view op) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()) + ")");
  }
}

std::uint64_t matrix_hash(const ComplexMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  };
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      mix(m(i, j).real());
      mix(m(i, j).imag());
    }
  return h;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

double HermitianMatrix::defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).norm() / std::max(1.0, m.norm());
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square_finite(m_, "HermitianMatrix");
  const double d = defect(m_);
  if (d > kTolerance) {
    std::ostringstream os;
    os << "HermitianMatrix: relative Hermiticity defect " << d << " exceeds " << kTolerance;
    throw InvariantError(os.str(), d);
  }
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
  return HermitianMatrix(Unchecked{}, ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  return HermitianMatrix(Unchecked{}, ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return HermitianMatrix(Unchecked{}, d.cast<Complex>().asDiagonal());
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> d) {
  RealVector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return diagonal(v);
}

HermitianMatrix HermitianMatrix::from_rounded(const ComplexMatrix& m, double tol) {
  require_square_finite(m, "HermitianMatrix");
  const double d = defect(m);
  if (d > tol) {
    std::ostringstream os;
    os << "HermitianMatrix: rounding defect " << d << " exceeds " << tol;
    throw InvariantError(os.str(), d);
  }
  return HermitianMatrix(Unchecked{}, 0.5 * (m + m.adjoint()));
}

HermitianMatrix HermitianMatrix::operator-() const { return HermitianMatrix(Unchecked{}, -m_); }

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.m_, b.m_, "HermitianMatrix +");
  return HermitianMatrix(HermitianMatrix::Unchecked{}, a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.m_, b.m_, "HermitianMatrix -");
  return HermitianMatrix(HermitianMatrix::Unchecked{}, a.m_ - b.m_);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(HermitianMatrix::Unchecked{}, s * a.m_);
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

double UnitaryMatrix::defect(const ComplexMatrix& m) {
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square_finite(m_, "UnitaryMatrix");
  const double d = defect(m_);
  if (d > kTolerance * static_cast<double>(m_.rows())) {
    std::ostringstream os;
    os << "UnitaryMatrix: unitarity defect " << d << " exceeds "
       << kTolerance * static_cast<double>(m_.rows());
    throw InvariantError(os.str(), d);
  }
}

UnitaryMatrix UnitaryMatrix::identity(Index dim) {
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

// ---------------------------------------------------------------------------
// Algebra

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("spectral_decompose: eigensolver did not converge for input hash 0x" +
                           hex(matrix_hash(m.matrix())));
  }
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Index j = 0; j < out.eigenvectors.cols(); ++j) {
    auto col = out.eigenvectors.col(j);
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > best) {
        best = std::abs(col(i));
        pivot = i;
      }
    }
    col *= std::conj(col(pivot)) / best;
    col(pivot) = Complex(col(pivot).real(), 0.0);
  }
  return out;
}

ComplexMatrix apply_scalar_function(const SpectralDecomposition& spec, const ScalarMap& f) {
  RealVector fx(spec.eigenvalues.size());
  for (Index i = 0; i < fx.size(); ++i) {
    fx(i) = f(spec.eigenvalues(i));
    if (!std::isfinite(fx(i))) {
      std::ostringstream os;
      os << "apply_scalar_function: f is not finite at eigenvalue " << spec.eigenvalues(i)
         << " (index " << i << ")";
      throw DomainError(os.str());
    }
  }
  return spec.eigenvectors * fx.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
}

ComplexMatrix apply_scalar_function(const HermitianMatrix& m, const ScalarMap& f) {
  return apply_scalar_function(spectral_decompose(m), f);
}

HermitianMatrix hermitian_function(const SpectralDecomposition& spec, const ScalarMap& f) {
  return HermitianMatrix::from_rounded(apply_scalar_function(spec, f));
}

HermitianMatrix hermitian_function(const HermitianMatrix& m, const ScalarMap& f) {
  return hermitian_function(spectral_decompose(m), f);
}

HermitianMatrix operator_log(const HermitianMatrix& h) {
  const auto spec = spectral_decompose(h);
  for (Index i = 0; i < spec.eigenvalues.size(); ++i) {
    if (!(spec.eigenvalues(i) > 0.0)) {
      std::ostringstream os;
      os << "operator_log: eigenvalue " << spec.eigenvalues(i) << " (index " << i
         << ") is not strictly positive";
      throw DomainError(os.str());
    }
  }
  return hermitian_function(spec, [](double x) { return std::log(x); });
}

HermitianMatrix operator_exp(const HermitianMatrix& a) {
  return hermitian_function(a, [](double x) { return std::exp(x); });
}

HermitianMatrix positive_part(const HermitianMatrix& m) {
  return hermitian_function(m, [](double x) { return std::max(0.0, x); });
}

HermitianMatrix phi_operator(const HermitianMatrix& m) { return hermitian_function(m, normal_cdf); }

ComplexMatrix unitary_propagator(const HermitianMatrix& h, double t) {
  const auto spec = spectral_decompose(h);
  ComplexVector phases(spec.eigenvalues.size());
  for (Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, t * spec.eigenvalues(i));
  return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

ComplexMatrix sylvester_L(const HermitianMatrix& x, const UnitaryMatrix& w) {
  require_same_dim(x, w, "sylvester_L");
  constexpr double kSeparation = 1e-10;
  constexpr double kDiagonal = 1e-10;

  const auto spec = spectral_decompose(x);
  const RealVector& lam = spec.eigenvalues;
  const Index d = lam.size();
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());

  for (Index i = 0; i < d; ++i) {
    if (std::abs(lam(i)) <= kSeparation * scale) {
      std::ostringstream os;
      os << "sylvester_L: X has a zero eigenvalue at index " << i << " (" << lam(i) << ")";
      throw DomainError(os.str());
    }
    if (i > 0 && lam(i) - lam(i - 1) <= kSeparation * scale) {
      std::ostringstream os;
      os << "sylvester_L: X has a repeated eigenvalue at index " << i << " (" << lam(i - 1)
         << ", " << lam(i) << ")";
      throw DomainError(os.str());
    }
  }

  const ComplexMatrix& v = spec.eigenvectors;
  const ComplexMatrix w_eig = v.adjoint() * w.matrix() * v;
  for (Index i = 0; i < d; ++i) {
    if (std::abs(w_eig(i, i)) > kDiagonal) {
      std::ostringstream os;
      os << "sylvester_L: W has nonzero diagonal entry " << std::abs(w_eig(i, i))
         << " at index " << i << " in the eigenbasis of X";
      throw DomainError(os.str());
    }
  }

  ComplexMatrix l_eig = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      if (i != j) l_eig(i, j) = w_eig(i, j) * lam(j) / (lam(i) - lam(j));
  return v * l_eig * v.adjoint();
}

}  // namespace qbs
