#pragma once

#include <initializer_list>
#include <string>

#include <gtest/gtest.h>

#include "qbs/operator_core.hpp"

namespace test {

using qbs::Complex;
using qbs::ComplexMatrix;

inline const Complex I1{0.0, 1.0};

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix m(static_cast<qbs::Index>(rows.size()),
                  static_cast<qbs::Index>(rows.begin()->size()));
  qbs::Index i = 0;
  for (const auto& row : rows) {
    qbs::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<qbs::Index>(d.size()),
                                        static_cast<qbs::Index>(d.size()));
  qbs::Index i = 0;
  for (const auto& v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

/// Cyclic shift S e_j = e_{j+1 mod d}.
inline ComplexMatrix shift(qbs::Index d) {
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (qbs::Index j = 0; j < d; ++j) s((j + 1) % d, j) = 1.0;
  return s;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

/// Runs `body(seed)` for `trials` seeds and labels failures with the seed so
/// a failing case can be replayed alone.
template <class Body>
void for_seeds(int trials, Body&& body, std::uint64_t base = 20261016) {
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(k);
    SCOPED_TRACE("seed " + std::to_string(seed));
    body(seed);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

}  // namespace test
