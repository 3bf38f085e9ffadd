#include <cmath>
#include <sstream>

#include "qbs/pricing.hpp"

namespace qbs {

HedgePosition hedge_portfolio(double t, const HermitianMatrix& jx, const MarketModel& model,
                              DeltaConvention convention) {
  if (!(t > 0.0 && t < model.T)) {
    std::ostringstream os;
    os << "hedge_portfolio: t = " << t << " outside (0, " << model.T << ")";
    throw DomainError(os.str());
  }
  const double tau = model.T - t;
  const auto z = log_moneyness(jx, model.K);
  const auto q = price(tau, z, model);
  const auto d = price_derivatives(tau, z, model);

  const ComplexMatrix& x = jx.matrix();
  HermitianMatrix a = d.omega01;
  if (convention == DeltaConvention::classical) {
    a = HermitianMatrix::from_rounded(d.omega01.matrix() * x.inverse());
  }
  const ComplexMatrix ax = a.matrix() * x;
  const HermitianMatrix b =
      HermitianMatrix::from_rounded((q.omega.matrix() - ax) * (std::exp(-model.r * t) / model.beta0));
  const double bond = model.bond(t);
  const HermitianMatrix value = HermitianMatrix::from_rounded(ax + bond * b.matrix());
  const double defect =
      (value.matrix() - q.omega.matrix()).norm() / std::max(1.0, q.omega.matrix().norm());
  return HedgePosition{a, b, value, bond, defect, convention};
}

}  // namespace qbs
