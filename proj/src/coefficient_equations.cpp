#include "qbs/coefficient_equations.hpp"

#include <algorithm>

namespace qbs {

CoefficientEquationReport coefficient_equations(const SurfaceDerivative& f, double t,
                                                const ModelOperators& m,
                                                const HermitianMatrix& a, double r,
                                                const CoefficientEquationOptions& options) {
  require_same_dim(a, m.X, "coefficient_equations");
  if (options.truncation_degree < 1) {
    throw DomainError("coefficient_equations: truncation degree must be >= 1");
  }
  const Index d = m.dim();
  const ComplexMatrix I = ComplexMatrix::Identity(d, d);
  const auto spec = spectral_decompose(m.X);
  auto coefficient = [&](int n, int k) {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return apply_scalar_function(spec, [&](double x) { return f(n, k, t, x) / fact; });
  };

  auto c = flow_coefficients(m.X, m);
  if (options.poisson_substitution) c.lambda = I;

  CoefficientEquationReport rep;
  rep.truncation_degree = options.truncation_degree;

  auto& lhs = rep.series_side;
  lhs = QuantumStochasticDifferential::zero(d);
  lhs.time = coefficient(1, 0) + coefficient(0, 1) * c.theta;
  ComplexMatrix lam_km2 = I;  // lambda^{k-2}
  ComplexMatrix lam_km1 = I;  // lambda^{k-1}
  for (int k = 1; k <= options.truncation_degree; ++k) {
    const ComplexMatrix ak = coefficient(0, k);
    lhs.creation += ak * lam_km1 * c.alpha_dagger;
    lhs.conservation += ak * lam_km1 * c.lambda;
    lhs.annihilation += ak * c.alpha * lam_km1;
    if (k >= 2) {
      lhs.time += ak * c.alpha * lam_km2 * c.alpha_dagger;
      lam_km2 = lam_km2 * c.lambda;
    }
    lam_km1 = lam_km1 * c.lambda;
  }

  const ComplexMatrix& A = a.matrix();
  const ComplexMatrix& X = m.X.matrix();
  const ComplexMatrix v = coefficient(0, 0);
  auto& rhs = rep.self_financing_side;
  rhs.creation = A * c.alpha_dagger;
  rhs.conservation = A * c.lambda;
  rhs.annihilation = A * c.alpha;
  rhs.time = A * c.theta + (v - A * X) * r;

  const auto ls = lhs.slots();
  const auto rs = rhs.slots();
  for (std::size_t i = 0; i < 4; ++i) rep.slot_deviation[i] = (*ls[i] - *rs[i]).norm();
  rep.max_deviation = *std::max_element(rep.slot_deviation.begin(), rep.slot_deviation.end());
  return rep;
}

}  // namespace qbs
