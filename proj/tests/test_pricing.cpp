#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qbs/classical.hpp"
#include "qbs/normal.hpp"
#include "qbs/pricing.hpp"
#include "support.hpp"

using namespace qbs;
using test::diag;
using test::max_diff;

namespace {

HermitianMatrix scalar(double v) { return HermitianMatrix::diagonal({v}); }

MarketModel model_with(const HermitianMatrix& x, const HermitianMatrix& K, double r, double T) {
  const Index d = x.dim();
  return MarketModel(ModelOperators(x, HermitianMatrix::zero(d), ComplexMatrix::Zero(d, d),
                                    UnitaryMatrix::identity(d)),
                     K, r, T, 1.0);
}

MarketModel unit_model(Index d, double r = 0.0, double T = 1.0) {
  return model_with(HermitianMatrix::identity(d), HermitianMatrix::identity(d), r, T);
}

// Unit-strike price by quadrature over the lognormal law.
double quad_price(double t, double z, double r) {
  return oracle::call_by_quadrature(std::exp(z), 1.0, r, 1.0, t);
}

}  // namespace

TEST(MarketModel, ValidatesInvariants) {
  const auto I = HermitianMatrix::identity(2);
  const ModelOperators ops(I, HermitianMatrix::zero(2), ComplexMatrix::Zero(2, 2),
                           UnitaryMatrix::identity(2));
  EXPECT_NO_THROW(MarketModel(ops, I, 0.0, 1.0, 1.0));
  EXPECT_THROW(MarketModel(ops, HermitianMatrix::diagonal({1.0, -1.0}), 0.05, 1.0, 1.0),
               DomainError);
  EXPECT_THROW(MarketModel(ops, I, -0.01, 1.0, 1.0), DomainError);
  EXPECT_THROW(MarketModel(ops, I, 0.05, 0.0, 1.0), DomainError);
  EXPECT_THROW(MarketModel(ops, I, 0.05, 1.0, 0.0), DomainError);

  const ModelOperators negative(HermitianMatrix::diagonal({1.0, -2.0}), HermitianMatrix::zero(2),
                                ComplexMatrix::Zero(2, 2), UnitaryMatrix::identity(2));
  EXPECT_THROW(MarketModel(negative, I, 0.05, 1.0, 1.0), DomainError);

  const ModelOperators diagonal_x(HermitianMatrix::diagonal({1.0, 2.0}), HermitianMatrix::zero(2),
                                  ComplexMatrix::Zero(2, 2), UnitaryMatrix::identity(2));
  const HermitianMatrix off(test::mat({{2.0, 0.5}, {0.5, 2.0}}));
  EXPECT_THROW(MarketModel(diagonal_x, off, 0.05, 1.0, 1.0), DomainError);
}

TEST(LogMoneyness, Examples) {
  oracle::Engine e(61);
  const HermitianMatrix K(oracle::gen_spectrum(e, 3, 0.5, 2.0));
  EXPECT_LT(log_moneyness(K, K).matrix().cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(max_diff(log_moneyness(std::exp(1.0) * K, K), ComplexMatrix::Identity(3, 3)), 1e-14);
  const auto z = log_moneyness(HermitianMatrix::diagonal({2.0, 8.0}), 2.0 * HermitianMatrix::identity(2));
  EXPECT_LT(max_diff(z, diag({0.0, std::log(4.0)})), 1e-15);
}

TEST(LogMoneyness, RejectsBadInputs) {
  const auto I = HermitianMatrix::identity(2);
  EXPECT_THROW(log_moneyness(HermitianMatrix::diagonal({1.0, 0.0}), I), DomainError);
  EXPECT_THROW(log_moneyness(HermitianMatrix::diagonal({1.0, 2.0}),
                             HermitianMatrix(test::mat({{2.0, 0.5}, {0.5, 2.0}}))),
               DomainError);
}

TEST(GhArguments, Examples) {
  const auto [g0, h0] = g_h_arguments(1.0, HermitianMatrix::zero(2), 0.0);
  EXPECT_LT(max_diff(g0, 0.5 * ComplexMatrix::Identity(2, 2)), 1e-16);
  EXPECT_LT(max_diff(h0, -0.5 * ComplexMatrix::Identity(2, 2)), 1e-16);

  const auto [g, h] = g_h_arguments(4.0, HermitianMatrix::diagonal({1.0, -1.0}), 0.1);
  EXPECT_LT(max_diff(g, diag({1.7, 0.7})), 1e-15);
  EXPECT_LT(max_diff(g.matrix() - h.matrix(), 2.0 * ComplexMatrix::Identity(2, 2)), 1e-15);

  EXPECT_THROW(g_h_arguments(0.0, HermitianMatrix::zero(1), 0.0), DomainError);
}

TEST(Price, AtTheMoneyScalar) {
  const auto q = price(1.0, scalar(0.0), unit_model(1));
  const double expected = 2.0 * oracle::gauss_cdf_quadrature(0.5) - 1.0;
  EXPECT_NEAR(q.omega.matrix()(0, 0).real(), expected, 1e-14);
  EXPECT_NEAR(q.omega.matrix()(0, 0).real(), 0.38292, 1e-5);
}

TEST(Price, MatchesLognormalQuadrature) {
  for (double z : {-1.0, -0.2, 0.0, 0.4, 1.5}) {
    for (double t : {0.1, 1.0, 2.0}) {
      for (double r : {0.0, 0.05}) {
        const auto q = price(t, scalar(z), unit_model(1, r, 2.0));
        EXPECT_NEAR(q.omega.matrix()(0, 0).real(), quad_price(t, z, r), 1e-10)
            << "z=" << z << " t=" << t << " r=" << r;
      }
    }
  }
}

TEST(Price, ShortMaturityLimits) {
  const auto m = unit_model(2, 0.05);
  const auto in = price(1e-8, HermitianMatrix::diagonal({1.0, 2.0}), m);
  EXPECT_LT(max_diff(in.omega, diag({std::exp(1.0) - 1.0, std::exp(2.0) - 1.0})), 1e-7);
  const auto out = price(1e-8, HermitianMatrix::diagonal({-1.0, -0.5}), m);
  EXPECT_LT(out.omega.matrix().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Price, OperatorStrikeActsPerEigenvalue) {
  const auto K = HermitianMatrix::diagonal({1.0, 2.0});
  const auto x = HermitianMatrix::diagonal({1.5, 1.0});
  const auto m = model_with(x, K, 0.03, 1.0);
  const auto z = log_moneyness(x, K);
  const auto q = price(0.8, z, m);
  EXPECT_NEAR(q.omega.matrix()(0, 0).real(), oracle::call_by_quadrature(1.5, 1.0, 0.03, 1.0, 0.8),
              1e-10);
  EXPECT_NEAR(q.omega.matrix()(1, 1).real(), oracle::call_by_quadrature(1.0, 2.0, 0.03, 1.0, 0.8),
              1e-10);
  EXPECT_EQ(q.omega.matrix()(0, 1), Complex(0.0, 0.0));
}

TEST(Price, RejectsBadInputs) {
  const auto m = unit_model(2);
  EXPECT_THROW(price(0.0, HermitianMatrix::zero(2), m), DomainError);
  EXPECT_THROW(price(-1.0, HermitianMatrix::zero(2), m), DomainError);
  const auto K = HermitianMatrix::diagonal({1.0, 2.0});
  const auto mk = model_with(HermitianMatrix::diagonal({1.0, 1.0}), K, 0.0, 1.0);
  EXPECT_THROW(price(1.0, HermitianMatrix(test::mat({{0.0, 1.0}, {1.0, 0.0}})), mk), DomainError);
  EXPECT_THROW(price(1.0, HermitianMatrix::zero(3), m), DimensionError);
}

TEST(PriceDerivatives, DeepInTheMoney) {
  // g and h are near 11, so every normal tail term is below 1e-27.
  const auto d = price_derivatives(0.5, scalar(8.0), unit_model(1));
  EXPECT_NEAR(d.omega01.matrix()(0, 0).real(), std::exp(8.0), 1e-9);
}

TEST(PriceDerivatives, ChainRuleAgainstClassicalGreeks) {
  // omega_01 = u_x x and omega_02 - omega_01 = u_xx x^2 with x = K e^z.
  const double K = 1.3, r = 0.04, t = 0.9;
  for (double z : {-0.5, 0.0, 0.7}) {
    const double x = K * std::exp(z);
    const auto m = model_with(scalar(x), scalar(K), r, 1.0);
    const auto d = price_derivatives(t, scalar(z), m);
    auto u = [&](double s) { return classical_bs(s, K, r, 1.0, t).price; };
    const double delta = classical_bs(x, K, r, 1.0, t).delta;
    const double gamma = oracle::d2(u, x, 1e-4);
    EXPECT_NEAR(d.omega01.matrix()(0, 0).real(), delta * x, 1e-12);
    EXPECT_NEAR((d.omega02.matrix() - d.omega01.matrix())(0, 0).real(), gamma * x * x, 1e-6);
  }
}

TEST(PriceDerivatives, AgreeWithFiniteDifferences) {
  const double r = 0.05;
  for (double z : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
      const auto s = scalar_price(t, z, r);
      auto in_t = [&](double tt) { return scalar_price(tt, z, r).value; };
      auto in_z = [&](double zz) { return scalar_price(t, zz, r).value; };
      EXPECT_NEAR(s.d_t, oracle::d1(in_t, t, 1e-4), 1e-6) << z << " " << t;
      EXPECT_NEAR(s.d_z, oracle::d1(in_z, z, 1e-4), 1e-6) << z << " " << t;
      EXPECT_NEAR(s.d_zz, oracle::d2(in_z, z, 1e-4), 1e-6) << z << " " << t;
    }
  }
}

TEST(ResidualEq8, ClosedFormSolves) {
  const auto r1 = residual_eq8(1.0, scalar(0.0), unit_model(1));
  EXPECT_LE(r1.residual_norm, 1e-8);
  EXPECT_TRUE(r1.passed);
  ASSERT_EQ(r1.grid.size(), 1u);
  EXPECT_EQ(r1.grid[0].t, 1.0);

  oracle::Engine e(62);
  const HermitianMatrix z(oracle::gen_spectrum(e, 5, -2.0, 2.0));
  const auto r5 = residual_eq8(0.3, z, unit_model(5, 0.05));
  EXPECT_TRUE(r5.passed);
  EXPECT_EQ(r5.grid.size(), 5u);
}

TEST(ResidualEq8, FiniteDifferenceEvaluatorAgreesOnClosedForm) {
  const std::vector<double> times{0.5, 1.0};
  const std::vector<double> points{-1.0, 0.0, 1.0};
  auto omega = [](double t, double z) { return scalar_price(t, z, 0.0).value; };
  const auto rep = residual_eq8_candidate(omega, times, points, 0.0);
  EXPECT_LE(rep.residual_norm, 1e-6);
  EXPECT_EQ(rep.grid.size(), 6u);
}

TEST(ResidualEq8, ForwardPerturbationIsItselfASolution) {
  // e^z (the forward on the stock) solves the equation, so adding it to the
  // price cannot be detected by the residual.
  const std::vector<double> times{0.5, 1.0, 2.0};
  const std::vector<double> points{-1.0, 0.0, 1.5};
  auto shifted = [](double t, double z) { return scalar_price(t, z, 0.05).value + 0.01 * std::exp(z); };
  EXPECT_LE(residual_eq8_candidate(shifted, times, points, 0.05).residual_norm, 1e-6);
}

TEST(ResidualEq8, DetectsVolatilityPerturbedCandidate) {
  const std::vector<double> times{0.1, 0.5, 1.0, 2.0};
  const std::vector<double> points{-2.0, -1.0, 0.0, 1.0, 2.0};
  auto perturbed = [](double t, double z) {
    return classical_bs(std::exp(z), 1.0, 0.05, 1.01, t).price;
  };
  EXPECT_GT(residual_eq8_candidate(perturbed, times, points, 0.05).residual_norm, 1e-3);
}

TEST(TerminalPayoff, Conventions) {
  const auto K = HermitianMatrix::identity(2);
  const auto zp = HermitianMatrix::diagonal({0.5, 1.0});
  const ComplexMatrix expected = diag({std::exp(0.5) - 1.0, std::exp(1.0) - 1.0});
  EXPECT_LT(max_diff(terminal_payoff_spectral(zp, K), expected), 1e-15);
  EXPECT_LT(terminal_payoff_spectral(HermitianMatrix::diagonal({-1.0, -2.0}), K)
                .matrix().cwiseAbs().maxCoeff(),
            1e-16);

  const ComplexVector u = ComplexVector::Unit(2, 1);
  EXPECT_NEAR(terminal_payoff_expectation(zp, K, u), std::exp(1.0) - 1.0, 1e-15);
  EXPECT_EQ(terminal_payoff_expectation(HermitianMatrix::diagonal({-1.0, -2.0}), K, u), 0.0);
}

TEST(TerminalPayoff, IndefiniteCaseSeparatesConventions) {
  // K e^z - K = diag(e - 1, e^{-1} - 1); the balanced state sees the spectral
  // positive part as (e - 1)/2 but the expectation convention as the positive
  // part of the mean.
  const auto K = HermitianMatrix::identity(2);
  const auto z = HermitianMatrix::diagonal({1.0, -1.0});
  ComplexVector u(2);
  u << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const double spectral = expectation(u, terminal_payoff_spectral(z, K)).real();
  const double expect = terminal_payoff_expectation(z, K, u);
  EXPECT_NEAR(spectral, 0.5 * (std::exp(1.0) - 1.0), 1e-15);
  EXPECT_NEAR(expect, 0.5 * (std::exp(1.0) + std::exp(-1.0)) - 1.0, 1e-15);
  EXPECT_GT(spectral - expect, 0.3);
}

TEST(TerminalLimit, Examples) {
  const auto m = unit_model(1, 0.05);
  const auto up = terminal_limit_check(scalar(1.0), m);
  EXPECT_TRUE(up.passed);
  const auto payoff = terminal_payoff_spectral(scalar(1.0), m.K);
  EXPECT_NEAR(payoff.matrix()(0, 0).real(), std::exp(1.0) - 1.0, 1e-15);
  EXPECT_TRUE(terminal_limit_check(scalar(-1.0), m).passed);

  const auto m2 = unit_model(2, 0.05);
  const auto z = HermitianMatrix::diagonal({1.0, -1.0});
  EXPECT_TRUE(terminal_limit_check(z, m2).passed);
  EXPECT_LT(max_diff(terminal_payoff_spectral(z, m2.K), diag({std::exp(1.0) - 1.0, 0.0})), 1e-15);
}

TEST(TerminalLimit, RejectsSpectrumNearZero) {
  try {
    terminal_limit_check(HermitianMatrix::diagonal({1.0, 0.05}), unit_model(2));
    FAIL() << "accepted an eigenvalue within the gap";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("0.05"), std::string::npos) << e.what();
  }
}

TEST(ReasonablePrice, Examples) {
  const ComplexVector u1 = ComplexVector::Unit(1, 0);
  const auto q = reasonable_price(unit_model(1), u1);
  EXPECT_NEAR(*q.omega_expectation, 0.38292, 1e-5);

  const auto K = HermitianMatrix::diagonal({1.0, 3.0});
  const double r = 0.05, T = 0.7;
  const auto m = model_with(K, K, r, T);
  oracle::Engine e(63);
  const auto qk = reasonable_price(m, oracle::gen_state(e, 2));
  const double per_unit = oracle::gauss_cdf_quadrature((r + 0.5) * std::sqrt(T)) -
                          oracle::gauss_cdf_quadrature((r - 0.5) * std::sqrt(T)) * std::exp(-r * T);
  EXPECT_LT(max_diff(qk.omega, per_unit * K.matrix()), 1e-14);
}

TEST(ReasonablePrice, ShortMaturityTendsToIntrinsicValue) {
  const auto x = HermitianMatrix::diagonal({2.0, 1.5});
  const auto m = model_with(x, HermitianMatrix::identity(2), 0.02, 1e-8);
  oracle::Engine e(64);
  const ComplexVector u = oracle::gen_state(e, 2);
  const auto q = reasonable_price(m, u);
  const double intrinsic = expectation(u, x.matrix() - ComplexMatrix::Identity(2, 2)).real();
  EXPECT_NEAR(*q.omega_expectation, intrinsic, 1e-7);
}

TEST(ClassicalBs, Examples) {
  const auto q = classical_bs(1.0, 1.0, 0.0, 1.0, 1.0);
  EXPECT_NEAR(q.price, 2.0 * oracle::gauss_cdf_quadrature(0.5) - 1.0, 1e-14);
  EXPECT_NEAR(q.price, 0.38292, 1e-5);
  EXPECT_NEAR(q.delta, oracle::gauss_cdf_quadrature(0.5), 1e-14);
  EXPECT_NEAR(q.delta, 0.69146, 1e-5);

  const auto near_expiry = classical_bs(1.2, 1.0, 0.05, 1.0, 1e-10);
  EXPECT_NEAR(near_expiry.price, 0.2, 1e-9);
  EXPECT_NEAR(near_expiry.delta, 1.0, 1e-12);

  EXPECT_NEAR(classical_bs(1.2, 1.0, 0.0, 1e-9, 1.0).price, 0.2, 1e-12);
  EXPECT_NEAR(classical_bs(0.8, 1.0, 0.0, 1e-9, 1.0).price, 0.0, 1e-12);
}

TEST(ClassicalBs, MatchesLognormalQuadrature) {
  for (double sigma : {0.2, 1.0, 2.0}) {
    EXPECT_NEAR(classical_bs(1.1, 1.0, 0.03, sigma, 0.75).price,
                oracle::call_by_quadrature(1.1, 1.0, 0.03, sigma, 0.75), 1e-10)
        << "sigma " << sigma;
  }
}

TEST(ClassicalBs, RejectsDomainViolations) {
  EXPECT_THROW(classical_bs(0.0, 1.0, 0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(classical_bs(1.0, -1.0, 0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(classical_bs(1.0, 1.0, 0.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(classical_bs(1.0, 1.0, 0.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(classical_bs(1.0, 1.0, -0.1, 1.0, 1.0), DomainError);
}
