#pragma once

namespace qbs {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF, 0.5 * erfc(-x / sqrt(2)). Accurate in both tails.
double normal_cdf(double x);

/// Partial Maclaurin sum of the normal CDF:
///   1/2 + (2 pi)^{-1/2} sum_{n=0}^{n_max} (-1)^n x^{2n+1} / (2^n n! (2n+1)).
/// Only accepted for |x| <= 3 where the alternating terms stay well
/// conditioned; n_max >= 1.
double phi_series(double x, int n_max);

inline constexpr double kPhiSeriesWindow = 3.0;

}  // namespace qbs
