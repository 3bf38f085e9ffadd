#pragma once

#include <vector>

namespace qbs {

/// A (time, spectral point) pair at which a residual was evaluated.
struct GridPoint {
  double t;
  double x;
};

struct ResidualReport {
  double residual_norm = 0.0;
  double tolerance = 0.0;
  std::vector<GridPoint> grid;
  bool passed = false;

  static ResidualReport make(double norm, double tol, std::vector<GridPoint> grid) {
    return {norm, tol, std::move(grid), norm <= tol};
  }
};

}  // namespace qbs
