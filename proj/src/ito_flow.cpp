#include "qbs/ito_flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbs {

ModelOperators::ModelOperators(HermitianMatrix x, HermitianMatrix h, ComplexMatrix l,
                               UnitaryMatrix s)
    : X(std::move(x)), H(std::move(h)), L(std::move(l)), S(std::move(s)) {
  require_square_finite(L, "ModelOperators.L");
  require_same_dim(X, H, "ModelOperators (X, H)");
  require_same_dim(X, L, "ModelOperators (X, L)");
  require_same_dim(X, S, "ModelOperators (X, S)");
}

QuantumStochasticDifferential QuantumStochasticDifferential::zero(Index dim) {
  const ComplexMatrix z = ComplexMatrix::Zero(dim, dim);
  return {z, z, z, z};
}

QuantumStochasticDifferential& QuantumStochasticDifferential::operator+=(
    const QuantumStochasticDifferential& o) {
  require_same_dim(creation, o.creation, "QuantumStochasticDifferential +");
  creation += o.creation;
  conservation += o.conservation;
  annihilation += o.annihilation;
  time += o.time;
  return *this;
}

QuantumStochasticDifferential operator*(Complex s, QuantumStochasticDifferential d) {
  d.creation *= s;
  d.conservation *= s;
  d.annihilation *= s;
  d.time *= s;
  return d;
}

std::array<double, 4> slot_deviations(const QuantumStochasticDifferential& a,
                                      const QuantumStochasticDifferential& b) {
  require_same_dim(a.creation, b.creation, "slot_deviations");
  std::array<double, 4> out{};
  const auto sa = a.slots();
  const auto sb = b.slots();
  for (std::size_t i = 0; i < 4; ++i)
    out[i] = (*sa[i] - *sb[i]).norm() / std::max(1.0, sb[i]->norm());
  return out;
}

double max_slot_deviation(const QuantumStochasticDifferential& a,
                          const QuantumStochasticDifferential& b) {
  const auto dev = slot_deviations(a, b);
  return *std::max_element(dev.begin(), dev.end());
}

FlowCoefficients flow_coefficients(const HermitianMatrix& x, const ModelOperators& m) {
  require_same_dim(x, m.X, "flow_coefficients");
  const ComplexMatrix& X = x.matrix();
  const ComplexMatrix& L = m.L;
  const ComplexMatrix& S = m.S;
  const ComplexMatrix Ls = L.adjoint();
  return FlowCoefficients{
      commutator(Ls, X) * S,
      S.adjoint() * commutator(X, L),
      S.adjoint() * X * S - X,
      lindblad_generator(X, m),
  };
}

QuantumStochasticDifferential flow_differential(const HermitianMatrix& x,
                                                const ModelOperators& m) {
  auto c = flow_coefficients(x, m);
  return {std::move(c.alpha_dagger), std::move(c.lambda), std::move(c.alpha),
          std::move(c.theta)};
}

QuantumStochasticDifferential ito_product(const QuantumStochasticDifferential& d1,
                                          const QuantumStochasticDifferential& d2) {
  require_same_dim(d1.creation, d2.creation, "ito_product");
  return {
      d1.conservation * d2.creation,
      d1.conservation * d2.conservation,
      d1.annihilation * d2.conservation,
      d1.annihilation * d2.creation,
  };
}

QuantumStochasticDifferential qsd_power_closed_form(const HermitianMatrix& x,
                                                    const ModelOperators& m, int k) {
  if (k < 2) throw DomainError("qsd_power_closed_form: k must be >= 2, got " + std::to_string(k));
  const auto c = flow_coefficients(x, m);
  const Index d = x.dim();
  ComplexMatrix lam_pow = ComplexMatrix::Identity(d, d);  // lambda^{k-2}
  for (int i = 0; i < k - 2; ++i) lam_pow = lam_pow * c.lambda;
  const ComplexMatrix lam_km1 = lam_pow * c.lambda;
  return {
      lam_km1 * c.alpha_dagger,
      lam_km1 * c.lambda,
      c.alpha * lam_km1,
      c.alpha * lam_pow * c.alpha_dagger,
  };
}

QuantumStochasticDifferential qsd_power_iterated(const HermitianMatrix& x,
                                                 const ModelOperators& m, int k) {
  if (k < 1) throw DomainError("qsd_power_iterated: k must be >= 1, got " + std::to_string(k));
  const auto dx = flow_differential(x, m);
  auto power = dx;
  for (int i = 1; i < k; ++i) power = ito_product(dx, power);
  return power;
}

BrownianReport brownian_reduction_check(const ModelOperators& m) {
  const Index d = m.dim();
  const double s_defect = (m.S.matrix() - ComplexMatrix::Identity(d, d)).norm();
  if (s_defect > 1e-12) {
    std::ostringstream os;
    os << "brownian_reduction_check: requires S = I, ||S - I||_F = " << s_defect;
    throw DomainError(os.str());
  }
  const auto c = flow_coefficients(m.X, m);
  const ComplexMatrix& X = m.X;
  BrownianReport r;
  r.lambda_norm = c.lambda.norm();
  r.alpha_deviation = (c.alpha - commutator(m.L.adjoint(), X)).norm();
  r.alpha_dagger_deviation = (c.alpha_dagger - commutator(X, m.L)).norm();
  r.max_deviation = std::max({r.lambda_norm, r.alpha_deviation, r.alpha_dagger_deviation});
  const double xn = X.norm();
  const double ln = m.L.norm();
  r.tolerance = 1e-14 * std::max(1.0, xn) + 2.0 * s_defect * xn * std::max(1.0, 2.0 * ln);
  r.passed = r.max_deviation <= r.tolerance;
  return r;
}

PoissonReport poisson_reduction_check(const ModelOperators& m, std::span<const Index> interior) {
  const Index d = m.dim();
  if (interior.empty()) throw DomainError("poisson_reduction_check: empty interior mask");
  std::vector<bool> inside(static_cast<std::size_t>(d), false);
  for (Index i : interior) {
    if (i < 0 || i >= d) {
      throw DomainError("poisson_reduction_check: mask index " + std::to_string(i) +
                        " outside [0, " + std::to_string(d) + ")");
    }
    inside[static_cast<std::size_t>(i)] = true;
  }

  const ComplexMatrix& X = m.X;
  const ComplexMatrix& S = m.S;
  const ComplexMatrix lambda = S.adjoint() * X * S - X;
  const ComplexMatrix dev = lambda - ComplexMatrix::Identity(d, d);

  PoissonReport r;
  r.interior.assign(interior.begin(), interior.end());
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double e = std::abs(dev(i, j));
      r.full_deviation = std::max(r.full_deviation, e);
      if (inside[static_cast<std::size_t>(i)] && inside[static_cast<std::size_t>(j)]) {
        r.interior_deviation = std::max(r.interior_deviation, e);
      } else {
        r.exterior_magnitude = std::max(r.exterior_magnitude, std::abs(lambda(i, j)));
      }
    }
  }
  r.lambda_trace = lambda.trace();
  r.trace_defect = std::abs(r.lambda_trace - Complex(static_cast<double>(d), 0.0));
  r.trace_obstruction = true;
  r.passed = r.interior_deviation <= r.tolerance;
  return r;
}

ComplexMatrix lindblad_generator(const ComplexMatrix& x, const ModelOperators& m) {
  require_same_dim(x, m.X, "lindblad_generator");
  const ComplexMatrix& H = m.H;
  const ComplexMatrix& L = m.L;
  const ComplexMatrix Ls = L.adjoint();
  const ComplexMatrix LsL = Ls * L;
  const Complex i(0.0, 1.0);
  return i * commutator(H, x) - 0.5 * (LsL * x + x * LsL - 2.0 * Ls * x * L);
}

Complex expectation(const ComplexVector& state, const ComplexMatrix& m) {
  if (m.rows() != m.cols() || state.size() != m.rows()) {
    throw DimensionError("expectation: state of size " + std::to_string(state.size()) +
                         " against " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " operator");
  }
  const double n = state.norm();
  if (std::abs(n - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "expectation: state is not normalized (norm " << n << ")";
    throw DomainError(os.str());
  }
  return state.dot(m * state);
}

}  // namespace qbs
