#include "qbs/market.hpp"

#include <sstream>

namespace qbs {

double min_eigenvalue(const HermitianMatrix& m) {
  return spectral_decompose(m).eigenvalues.minCoeff();
}

bool is_positive_definite(const HermitianMatrix& m) { return min_eigenvalue(m) > 0.0; }

double relative_commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double scale = a.norm() * b.norm();
  if (scale == 0.0) return 0.0;
  return commutator(a, b).norm() / scale;
}

void require_commuting(const ComplexMatrix& a, const ComplexMatrix& b, std::string_view what,
                       double tol) {
  require_same_dim(a, b, what);
  const double c = relative_commutator(a, b);
  if (c > tol) {
    std::ostringstream os;
    os << what << ": operators do not commute (relative commutator " << c << " > " << tol << ")";
    throw DomainError(os.str());
  }
}

void require_positive_definite(const HermitianMatrix& m, std::string_view what) {
  const double lo = min_eigenvalue(m);
  if (!(lo > 0.0)) {
    std::ostringstream os;
    os << what << ": not positive definite (smallest eigenvalue " << lo << ")";
    throw DomainError(os.str());
  }
}

MarketModel::MarketModel(ModelOperators o, HermitianMatrix k, double rate, double maturity,
                         double b0)
    : ops(std::move(o)), K(std::move(k)), r(rate), T(maturity), beta0(b0) {
  require_same_dim(ops.X, K, "MarketModel (X, K)");
  require_positive_definite(ops.X, "MarketModel.X");
  require_positive_definite(K, "MarketModel.K");
  require_commuting(ops.X, K, "MarketModel (X, K)");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("MarketModel.r must be finite and >= 0");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("MarketModel.T must be finite and > 0");
  if (!(beta0 > 0.0) || !std::isfinite(beta0)) {
    throw DomainError("MarketModel.beta0 must be finite and > 0");
  }
}

}  // namespace qbs
