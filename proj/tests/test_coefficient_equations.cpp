#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qbs/coefficient_equations.hpp"
#include "qbs/normal.hpp"
#include "support.hpp"

using namespace qbs;

namespace {

ModelOperators gen_model(oracle::Engine& e, int dim) {
  return ModelOperators(HermitianMatrix(oracle::gen_hermitian(e, dim)),
                        HermitianMatrix(oracle::gen_hermitian(e, dim, 0.5)),
                        oracle::gen_complex(e, dim, 0.5), UnitaryMatrix(oracle::gen_unitary(e, dim)));
}

// F(t, x) = x: a unit stock holding.
double stock(int n, int k, double, double x) {
  if (n == 0 && k == 0) return x;
  if (n == 0 && k == 1) return 1.0;
  return 0.0;
}

}  // namespace

TEST(CoefficientEquations, StockHoldingIsSelfFinancing) {
  oracle::Engine e(51);
  const auto m = gen_model(e, 3);
  const auto rep = coefficient_equations(stock, 0.5, m, HermitianMatrix::identity(3), 0.05);
  EXPECT_LT(rep.max_deviation, 1e-13);
  EXPECT_EQ(rep.truncation_degree, 8);
}

TEST(CoefficientEquations, BondHoldingIsSelfFinancing) {
  oracle::Engine e(52);
  const auto m = gen_model(e, 3);
  const double r = 0.07;
  auto bond = [r](int n, int k, double t, double) {
    if (k > 0) return 0.0;
    return std::pow(r, n) * std::exp(r * t);
  };
  const auto rep = coefficient_equations(bond, 1.5, m, HermitianMatrix::zero(3), r);
  EXPECT_LT(rep.max_deviation, 1e-13);
}

TEST(CoefficientEquations, QuadraticHoldingLeavesKnownTimeDefect) {
  // F = x^2 with a = 2X and S = I: every noise slot matches and the time slot
  // misses by alpha alpha^dagger + r X^2.
  oracle::Engine e(53);
  const auto base = gen_model(e, 3);
  const ModelOperators m(base.X, base.H, base.L, UnitaryMatrix::identity(3));
  const double r = 0.1;
  auto square = [](int n, int k, double, double x) {
    if (n > 0) return 0.0;
    if (k == 0) return x * x;
    if (k == 1) return 2.0 * x;
    if (k == 2) return 2.0;
    return 0.0;
  };
  const auto rep = coefficient_equations(square, 1.0, m, 2.0 * m.X, r);
  EXPECT_LT(rep.slot_deviation[0], 1e-13);
  EXPECT_LT(rep.slot_deviation[1], 1e-13);
  EXPECT_LT(rep.slot_deviation[2], 1e-13);
  const auto q = oracle::transcribed_flow(m.X, m.H, m.L, m.S);
  const ComplexMatrix x = m.X;
  const double expected = (q.alpha * q.alpha_dagger + r * x * x).norm();
  EXPECT_NEAR(rep.slot_deviation[3], expected, 1e-12 * std::max(1.0, expected));
}

TEST(CoefficientEquations, BlackScholesSolvesBrownianSylvesterModel) {
  // With S = I and [L*, X][X, L] = X^2 the equations reduce to the classical
  // unit-volatility PDE in calendar time, which the call price satisfies.
  const auto x = HermitianMatrix::diagonal({0.8, 1.1, 1.6});
  const ComplexMatrix l = sylvester_L(x, UnitaryMatrix(test::shift(3)));
  const ModelOperators m(x, HermitianMatrix::zero(3), l, UnitaryMatrix::identity(3));
  const double K = 1.0, r = 0.05, T = 1.0, t = 0.4;

  auto call = [=](int n, int k, double time, double s) {
    const double tau = T - time;
    const double st = std::sqrt(tau);
    const double d1 = (std::log(s / K) + (r + 0.5) * tau) / st;
    const double d2 = d1 - st;
    const double pdf = std::exp(-0.5 * d1 * d1) / std::sqrt(2.0 * M_PI);
    const double cdf1 = oracle::gauss_cdf_quadrature(d1);
    const double cdf2 = oracle::gauss_cdf_quadrature(d2);
    if (n == 0 && k == 0) return s * cdf1 - K * std::exp(-r * tau) * cdf2;
    if (n == 0 && k == 1) return cdf1;
    if (n == 0 && k == 2) return pdf / (s * st);
    // d/dt = -d/dtau
    if (n == 1 && k == 0) return -(s * pdf / (2.0 * st) + r * K * std::exp(-r * tau) * cdf2);
    // Higher x-orders multiply powers of lambda = 0.
    return 0.0;
  };
  const HermitianMatrix a = HermitianMatrix::diagonal({call(0, 1, t, 0.8), call(0, 1, t, 1.1),
                                                       call(0, 1, t, 1.6)});
  const auto rep = coefficient_equations(call, t, m, a, r);
  EXPECT_LT(rep.max_deviation, 1e-12);
}

TEST(CoefficientEquations, PoissonSubstitutionReplacesLambda) {
  oracle::Engine e(54);
  const auto m = gen_model(e, 3);
  CoefficientEquationOptions opts;
  opts.poisson_substitution = true;
  opts.truncation_degree = 5;
  const auto rep = coefficient_equations(stock, 0.5, m, HermitianMatrix::identity(3), 0.05, opts);
  EXPECT_LT(test::max_diff(rep.series_side.conservation, ComplexMatrix::Identity(3, 3)), 1e-15);
  EXPECT_LT(rep.max_deviation, 1e-13);
  EXPECT_EQ(rep.truncation_degree, 5);
}

TEST(CoefficientEquations, RejectsBadArguments) {
  oracle::Engine e(55);
  const auto m = gen_model(e, 2);
  CoefficientEquationOptions opts;
  opts.truncation_degree = 0;
  EXPECT_THROW(coefficient_equations(stock, 0.5, m, HermitianMatrix::identity(2), 0.0, opts),
               DomainError);
  EXPECT_THROW(coefficient_equations(stock, 0.5, m, HermitianMatrix::identity(3), 0.0),
               DimensionError);
}
