#pragma once

#include <cstdint>

namespace qbs {

struct ReplicationParams {
  double x0 = 1.0;
  double strike = 1.0;
  double r = 0.05;
  double T = 1.0;
  int steps = 1000;
  int paths = 10000;
  std::uint64_t seed = 0;
  /// Volatility of both the simulated paths and the hedge.
  double sigma = 1.0;
  /// 0 = hardware concurrency. Results do not depend on this.
  unsigned threads = 0;
};

struct ReplicationStats {
  double initial_price = 0.0;
  double mean_error = 0.0;      // mean of V_T - (X_T - K)^+
  double mean_abs_error = 0.0;  // mean of |V_T - (X_T - K)^+|
  double std_error = 0.0;       // sample standard deviation of V_T - (X_T - K)^+
  int steps = 0;
  int paths = 0;
};

/// Discrete delta hedge of a European call along geometric Brownian paths
/// with drift r. Starts from the Black-Scholes price, rebalances to the
/// classical delta at every step and keeps the remainder in the bond.
/// Path p draws its normals from an engine seeded by (seed, p) only.
ReplicationStats replication_simulation(const ReplicationParams& params);

}  // namespace qbs
