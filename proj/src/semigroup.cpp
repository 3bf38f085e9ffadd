#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qbs/ito_flow.hpp"

namespace qbs {

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void require_time(double t, const char* op) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(op) + ": t must be finite and >= 0");
  }
}

}  // namespace

ComplexMatrix lindblad_superoperator(const ModelOperators& m) {
  const Index d = m.dim();
  const ComplexMatrix I = ComplexMatrix::Identity(d, d);
  const ComplexMatrix& H = m.H;
  const ComplexMatrix& L = m.L;
  const ComplexMatrix LsL = L.adjoint() * L;
  const Complex i(0.0, 1.0);
  // vec(A X B) = (B^T kron A) vec(X)
  return i * (kron(I, H) - kron(H.transpose(), I)) -
         0.5 * (kron(I, LsL) + kron(LsL.transpose(), I) - 2.0 * kron(L.transpose(), L.adjoint()));
}

int default_semigroup_steps(double t) {
  return std::max(100, static_cast<int>(std::ceil(1000.0 * t)));
}

HermitianMatrix semigroup_evolve(const HermitianMatrix& x0, const ModelOperators& m, double t,
                                 int steps) {
  require_same_dim(x0, m.X, "semigroup_evolve");
  require_time(t, "semigroup_evolve");
  if (steps < 1) throw DomainError("semigroup_evolve: steps must be >= 1");

  const double h = t / steps;
  ComplexMatrix x = x0.matrix();
  for (int s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = lindblad_generator(x, m);
    const ComplexMatrix k2 = lindblad_generator(x + 0.5 * h * k1, m);
    const ComplexMatrix k3 = lindblad_generator(x + 0.5 * h * k2, m);
    const ComplexMatrix k4 = lindblad_generator(x + h * k3, m);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return HermitianMatrix::from_rounded(x, 1e-9);
}

HermitianMatrix semigroup_evolve_exact(const HermitianMatrix& x0, const ModelOperators& m,
                                       double t) {
  require_same_dim(x0, m.X, "semigroup_evolve_exact");
  require_time(t, "semigroup_evolve_exact");
  const Index d = m.dim();
  const ComplexMatrix propagator = (t * lindblad_superoperator(m)).exp();
  const ComplexVector v = propagator * x0.matrix().reshaped();
  return HermitianMatrix::from_rounded(v.reshaped(d, d), 1e-9);
}

}  // namespace qbs
