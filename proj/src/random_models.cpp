#include "qbs/random_models.hpp"

#include <cmath>

namespace qbs {

ComplexMatrix random_complex(Index dim, Rng& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  ComplexMatrix m(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

HermitianMatrix random_hermitian(Index dim, Rng& rng, double scale) {
  const ComplexMatrix g = random_complex(dim, rng, scale);
  return HermitianMatrix::from_rounded(0.5 * (g + g.adjoint()));
}

UnitaryMatrix random_unitary(Index dim, Rng& rng) {
  const ComplexMatrix g = random_complex(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return UnitaryMatrix(q);
}

HermitianMatrix random_with_spectrum(Index dim, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  RealVector ev(dim);
  for (Index i = 0; i < dim; ++i) ev(i) = u(rng);
  const ComplexMatrix q = random_unitary(dim, rng).matrix();
  return HermitianMatrix::from_rounded(q * ev.cast<Complex>().asDiagonal() * q.adjoint());
}

ComplexVector random_state(Index dim, Rng& rng) {
  const ComplexMatrix g = random_complex(dim, rng);
  ComplexVector v = g.col(0);
  return v / v.norm();
}

ModelOperators random_model(Index dim, Rng& rng, double scale) {
  auto x = random_hermitian(dim, rng, scale);
  auto h = random_hermitian(dim, rng, scale);
  ComplexMatrix l = random_complex(dim, rng, scale);
  auto s = random_unitary(dim, rng);
  return ModelOperators(std::move(x), std::move(h), std::move(l), std::move(s));
}

}  // namespace qbs
