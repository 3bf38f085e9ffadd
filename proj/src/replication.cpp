#include "qbs/replication.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "qbs/classical.hpp"
#include "qbs/errors.hpp"

namespace qbs {

namespace {

void validate(const ReplicationParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "replication_simulation: " << name << " must be finite and > 0 (got " << v << ")";
      throw DomainError(os.str());
    }
  };
  positive(p.x0, "x0");
  positive(p.strike, "strike");
  positive(p.T, "T");
  positive(p.sigma, "sigma");
  if (!(p.r >= 0.0) || !std::isfinite(p.r)) {
    throw DomainError("replication_simulation: r must be finite and >= 0");
  }
  if (p.steps < 100) throw DomainError("replication_simulation: steps must be >= 100");
  if (p.paths < 1000) throw DomainError("replication_simulation: paths must be >= 1000");
}

double hedge_one_path(const ReplicationParams& p, double v0, int path) {
  std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32),
                    static_cast<std::uint32_t>(path)};
  std::mt19937_64 engine(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  const double h = p.T / p.steps;
  const double drift = (p.r - 0.5 * p.sigma * p.sigma) * h;
  const double diffusion = p.sigma * std::sqrt(h);
  const double growth = std::exp(p.r * h);

  double x = p.x0;
  double stock = classical_bs(x, p.strike, p.r, p.sigma, p.T).delta;
  double cash = v0 - stock * x;
  for (int n = 1; n <= p.steps; ++n) {
    x *= std::exp(drift + diffusion * normal(engine));
    cash *= growth;
    if (n < p.steps) {
      const double tau = p.T - n * h;
      const double next = classical_bs(x, p.strike, p.r, p.sigma, tau).delta;
      cash -= (next - stock) * x;
      stock = next;
    }
  }
  const double value = stock * x + cash;
  return value - std::max(0.0, x - p.strike);
}

}  // namespace

ReplicationStats replication_simulation(const ReplicationParams& params) {
  validate(params);
  const double v0 = classical_bs(params.x0, params.strike, params.r, params.sigma, params.T).price;

  std::vector<double> errors(static_cast<std::size_t>(params.paths));
  unsigned workers = params.threads ? params.threads : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(params.paths));
  {
    std::vector<std::jthread> pool;
    const int chunk = (params.paths + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const int begin = static_cast<int>(w) * chunk;
      const int end = std::min(params.paths, begin + chunk);
      pool.emplace_back([&, begin, end] {
        for (int i = begin; i < end; ++i)
          errors[static_cast<std::size_t>(i)] = hedge_one_path(params, v0, i);
      });
    }
  }

  ReplicationStats s;
  s.initial_price = v0;
  s.steps = params.steps;
  s.paths = params.paths;
  for (double e : errors) {
    s.mean_error += e;
    s.mean_abs_error += std::abs(e);
  }
  s.mean_error /= params.paths;
  s.mean_abs_error /= params.paths;
  double ss = 0.0;
  for (double e : errors) ss += (e - s.mean_error) * (e - s.mean_error);
  s.std_error = std::sqrt(ss / (params.paths - 1));
  return s;
}

}  // namespace qbs
