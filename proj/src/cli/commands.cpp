#include "qbs/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "qbs/classical.hpp"
#include "qbs/random_models.hpp"
#include "qbs/replication.hpp"

namespace qbs::cli {

namespace {

struct Context {
  const RunConfig& cfg;
  RunReport& report;

  double tol(const char* name) const { return cfg.tolerances.get(name); }

  void check(const std::string& check, const std::string& item, double value, double tolerance) {
    if (!(value <= tolerance)) report.violations.push_back({check, item, value, tolerance});
  }

  std::uint64_t require_seed(const char* command) const {
    if (!cfg.seed) throw ConfigError("seed", std::string("required by the stochastic command ") + command);
    return *cfg.seed;
  }
};

std::string item_name(const char* kind, std::size_t i) {
  return std::string(kind) + "[" + std::to_string(i) + "]";
}

Json eigenvalues_json(const HermitianMatrix& m) {
  const auto spec = spectral_decompose(m);
  Json out = Json::array();
  for (Index i = 0; i < spec.eigenvalues.size(); ++i) out.push_back(spec.eigenvalues(i));
  return out;
}

HermitianMatrix default_z(const MarketModel& model) { return log_moneyness(model.ops.X, model.K); }

std::vector<double> grid_times(const RunConfig& cfg) {
  return cfg.grid.t.empty() ? std::vector<double>{cfg.model.T} : cfg.grid.t;
}

std::vector<HermitianMatrix> grid_points(const RunConfig& cfg) {
  return cfg.grid.z.empty() ? std::vector<HermitianMatrix>{default_z(cfg.model)} : cfg.grid.z;
}

// ---------------------------------------------------------------------------

void cmd_coeffs(Context& ctx) {
  const auto& ops = ctx.cfg.model.ops;
  const auto c = flow_coefficients(ops.X, ops);
  const double structure = ctx.tol("coeff_structure");
  // alpha^dagger = alpha* requires S unitary; lambda and theta are Hermitian.
  const double dagger = frobenius_norm(c.alpha_dagger - adjoint(c.alpha)) /
                        std::max(1.0, frobenius_norm(c.alpha));
  const double lambda_h = HermitianMatrix::defect(c.lambda);
  const double theta_h = HermitianMatrix::defect(c.theta);
  ctx.check("alpha_dagger_is_adjoint", "X", dagger, structure);
  ctx.check("lambda_hermitian", "X", lambda_h, structure);
  ctx.check("theta_hermitian", "X", theta_h, structure);

  Json item;
  item["operator"] = "X";
  item["alpha_norm"] = frobenius_norm(c.alpha);
  item["alpha_dagger_norm"] = frobenius_norm(c.alpha_dagger);
  item["lambda_norm"] = frobenius_norm(c.lambda);
  item["theta_norm"] = frobenius_norm(c.theta);
  item["adjoint_defect"] = dagger;
  item["alpha"] = matrix_json(c.alpha);
  item["alpha_dagger"] = matrix_json(c.alpha_dagger);
  item["lambda"] = matrix_json(c.lambda);
  item["theta"] = matrix_json(c.theta);
  ctx.report.results.push_back(std::move(item));
}

void cmd_ito_check(Context& ctx) {
  const std::uint64_t seed = ctx.require_seed("ito-check");
  const auto& s = ctx.cfg.ito_check;
  const double tol = ctx.tol("ito_power");
  ctx.report.parameters["k_max"] = s.k_max;
  ctx.report.parameters["trials"] = s.trials;
  for (int dim : s.dims) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(dim)};
    Rng rng(seq);
    double worst = 0.0;
    int worst_k = 2;
    for (int trial = 0; trial < s.trials; ++trial) {
      const auto m = random_model(dim, rng);
      for (int k = 2; k <= s.k_max; ++k) {
        const double dev =
            max_slot_deviation(qsd_power_closed_form(m.X, m, k), qsd_power_iterated(m.X, m, k));
        if (dev > worst || std::isnan(dev)) {
          worst = dev;
          worst_k = k;
        }
      }
    }
    const std::string name = "dim=" + std::to_string(dim);
    ctx.check("ito_power_rule", name, worst, tol);
    Json item;
    item["dim"] = dim;
    item["trials"] = s.trials;
    item["k_max"] = s.k_max;
    item["max_deviation"] = worst;
    item["worst_k"] = worst_k;
    item["passed"] = worst <= tol;
    ctx.report.results.push_back(std::move(item));
  }
}

void cmd_price(Context& ctx) {
  const auto& model = ctx.cfg.model;
  const double bound_tol = ctx.tol("price_bounds");
  const auto times = grid_times(ctx.cfg);
  const auto points = grid_points(ctx.cfg);
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (std::size_t iz = 0; iz < points.size(); ++iz) {
      const double t = times[it];
      const auto q = price(t, points[iz], model);
      // Per eigenvalue: max(0, e^z - e^{-rt}) <= f(t, z) <= e^z.
      const auto spec = spectral_decompose(points[iz]);
      double bound_defect = 0.0;
      for (Index i = 0; i < spec.eigenvalues.size(); ++i) {
        const double z = spec.eigenvalues(i);
        const double f = scalar_price(t, z, model.r).value;
        const double lo = std::max(0.0, std::exp(z) - std::exp(-model.r * t));
        const double hi = std::exp(z);
        bound_defect = std::max({bound_defect, lo - f, f - hi});
      }
      const std::string name = "t[" + std::to_string(it) + "],z[" + std::to_string(iz) + "]";
      ctx.check("price_bounds", name, bound_defect, bound_tol);

      Json item;
      item["t"] = t;
      item["z_index"] = iz;
      item["omega_norm"] = operator_norm(q.omega);
      if (model.dim() == 1) item["omega_value"] = q.omega.matrix()(0, 0).real();
      if (ctx.cfg.state) item["omega_expectation"] = expectation(*ctx.cfg.state, q.omega).real();
      item["bound_defect"] = bound_defect;
      item["z_eigenvalues"] = eigenvalues_json(points[iz]);
      item["omega"] = matrix_json(q.omega);
      ctx.report.results.push_back(std::move(item));
    }
  }
}

void cmd_residual(Context& ctx) {
  const auto times = grid_times(ctx.cfg);
  const auto points = grid_points(ctx.cfg);
  const double tol = ctx.tol("residual");
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (std::size_t iz = 0; iz < points.size(); ++iz) {
      const auto rep = residual_eq8(times[it], points[iz], ctx.cfg.model, tol);
      const std::string name = "t[" + std::to_string(it) + "],z[" + std::to_string(iz) + "]";
      ctx.check("pde_residual", name, rep.residual_norm, rep.tolerance);
      Json item;
      item["t"] = times[it];
      item["z_index"] = iz;
      item["residual"] = rep.residual_norm;
      item["tolerance"] = rep.tolerance;
      item["passed"] = rep.passed;
      item["z_eigenvalues"] = eigenvalues_json(points[iz]);
      ctx.report.results.push_back(std::move(item));
    }
  }
}

void cmd_terminal_check(Context& ctx) {
  const auto& s = ctx.cfg.terminal;
  const auto& model = ctx.cfg.model;
  const auto points = s.zT.empty() ? std::vector<HermitianMatrix>{default_z(model)} : s.zT;
  const double tol = ctx.tol("terminal");
  ctx.report.parameters["t_small"] = s.t_small;
  ctx.report.parameters["gap"] = s.gap;
  for (std::size_t i = 0; i < points.size(); ++i) {
    ResidualReport rep;
    try {
      rep = terminal_limit_check(points[i], model, s.t_small, s.gap, tol);
    } catch (const DomainError& e) {
      throw ConfigError(s.zT.empty() ? "model.ops.X" : item_name("terminal.zT", i), e.what());
    }
    ctx.check("terminal_limit", item_name("zT", i), rep.residual_norm, rep.tolerance);
    const auto payoff = terminal_payoff_spectral(points[i], model.K);
    Json item;
    item["zT_index"] = i;
    item["residual"] = rep.residual_norm;
    item["tolerance"] = rep.tolerance;
    item["passed"] = rep.passed;
    item["payoff_spectral_norm"] = operator_norm(payoff);
    if (ctx.cfg.state) {
      const auto& u = *ctx.cfg.state;
      item["payoff_spectral_expectation"] = expectation(u, payoff).real();
      item["payoff_expectation_convention"] = terminal_payoff_expectation(points[i], model.K, u);
    }
    item["zT_eigenvalues"] = eigenvalues_json(points[i]);
    item["payoff_spectral"] = matrix_json(payoff);
    ctx.report.results.push_back(std::move(item));
  }
}

void cmd_hedge(Context& ctx) {
  const auto& s = ctx.cfg.hedge;
  const auto& model = ctx.cfg.model;
  const auto times = s.times.empty() ? std::vector<double>{0.5 * model.T} : s.times;
  const auto stocks = s.stock.empty() ? std::vector<HermitianMatrix>{model.ops.X} : s.stock;
  const double tol = ctx.tol("reconstruction");
  ctx.report.parameters["convention"] = to_string(s.convention);
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (std::size_t ix = 0; ix < stocks.size(); ++ix) {
      const auto pos = hedge_portfolio(times[it], stocks[ix], model, s.convention);
      const std::string name = "t[" + std::to_string(it) + "],stock[" + std::to_string(ix) + "]";
      ctx.check("portfolio_reconstruction", name, pos.reconstruction_defect, tol);
      Json item;
      item["t"] = times[it];
      item["stock_index"] = ix;
      item["convention"] = to_string(pos.convention);
      item["bond"] = pos.bond;
      item["reconstruction_defect"] = pos.reconstruction_defect;
      if (model.dim() == 1) {
        item["a_value"] = pos.a.matrix()(0, 0).real();
        item["b_value"] = pos.b.matrix()(0, 0).real();
        item["portfolio_value"] = pos.value.matrix()(0, 0).real();
      }
      if (ctx.cfg.state) {
        const auto& u = *ctx.cfg.state;
        item["a_expectation"] = expectation(u, pos.a).real();
        item["b_expectation"] = expectation(u, pos.b).real();
        item["value_expectation"] = expectation(u, pos.value).real();
      }
      item["a"] = matrix_json(pos.a);
      item["b"] = matrix_json(pos.b);
      item["value"] = matrix_json(pos.value);
      ctx.report.results.push_back(std::move(item));
    }
  }
}

void cmd_classical(Context& ctx) {
  const auto& s = ctx.cfg.classical;
  const double tol = ctx.tol("classical");
  // The quantum model pins the volatility to 1, so the cross-check only
  // applies there.
  const bool compare = s.sigma == 1.0;
  ctx.report.parameters["strike"] = s.strike;
  ctx.report.parameters["r"] = s.r;
  ctx.report.parameters["sigma"] = s.sigma;
  for (std::size_t ix = 0; ix < s.x.size(); ++ix) {
    for (std::size_t it = 0; it < s.t.size(); ++it) {
      const double x = s.x[ix];
      const double t = s.t[it];
      const auto q = classical_bs(x, s.strike, s.r, s.sigma, t);
      Json item;
      item["x"] = x;
      item["t"] = t;
      item["price"] = q.price;
      item["delta"] = q.delta;
      if (compare) {
        const auto one = [](double v) { return HermitianMatrix::diagonal({v}); };
        const MarketModel scalar(ModelOperators(one(x), one(0.0), ComplexMatrix::Zero(1, 1),
                                                UnitaryMatrix::identity(1)),
                                 one(s.strike), s.r, t, 1.0);
        const double quantum = price(t, one(std::log(x / s.strike)), scalar).omega.matrix()(0, 0).real();
        const double dev = std::abs(quantum - q.price);
        ctx.check("classical_limit", "x[" + std::to_string(ix) + "],t[" + std::to_string(it) + "]",
                  dev, tol);
        item["quantum_price"] = quantum;
        item["deviation"] = dev;
      }
      ctx.report.results.push_back(std::move(item));
    }
  }
}

void cmd_lindblad(Context& ctx) {
  const auto& s = ctx.cfg.lindblad;
  const auto& ops = ctx.cfg.model.ops;
  const double tol = ctx.tol("lindblad");
  const double unit_tol = ctx.tol("unitality");
  const auto I = HermitianMatrix::identity(ops.dim());
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const double t = s.times[i];
    const int steps = s.steps.value_or(default_semigroup_steps(t));
    const auto evolved = semigroup_evolve(ops.X, ops, t, steps);
    const auto exact = semigroup_evolve_exact(ops.X, ops, t);
    const double dev = frobenius_norm(evolved - exact) / std::max(1.0, frobenius_norm(exact));
    const double unitality = frobenius_norm(semigroup_evolve(I, ops, t, steps) - I);
    ctx.check("semigroup_vs_exponential", item_name("t", i), dev, tol);
    ctx.check("unitality", item_name("t", i), unitality, unit_tol);
    Json item;
    item["t"] = t;
    item["steps"] = steps;
    item["deviation"] = dev;
    item["unitality_defect"] = unitality;
    if (ctx.cfg.state) item["expectation"] = expectation(*ctx.cfg.state, evolved).real();
    item["evolved"] = matrix_json(evolved);
    ctx.report.results.push_back(std::move(item));
  }
}

void cmd_replicate(Context& ctx) {
  const auto& s = ctx.cfg.replicate;
  ReplicationParams p;
  p.x0 = s.x0;
  p.strike = s.strike;
  p.r = s.r;
  p.T = s.T;
  p.steps = s.steps;
  p.paths = s.paths;
  p.sigma = s.sigma;
  p.seed = ctx.require_seed("replicate");
  const auto stats = replication_simulation(p);
  ctx.check("replication_error", "mean_abs_error", stats.mean_abs_error,
            ctx.tol("replication") * s.x0);
  Json item;
  item["x0"] = s.x0;
  item["strike"] = s.strike;
  item["r"] = s.r;
  item["T"] = s.T;
  item["sigma"] = s.sigma;
  item["steps"] = stats.steps;
  item["paths"] = stats.paths;
  item["initial_price"] = stats.initial_price;
  item["mean_error"] = stats.mean_error;
  item["mean_abs_error"] = stats.mean_abs_error;
  item["std_error"] = stats.std_error;
  ctx.report.results.push_back(std::move(item));
}

using Handler = void (*)(Context&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> table = {
      {"coeffs", cmd_coeffs},       {"ito-check", cmd_ito_check},
      {"price", cmd_price},         {"residual", cmd_residual},
      {"terminal-check", cmd_terminal_check}, {"hedge", cmd_hedge},
      {"classical", cmd_classical}, {"lindblad", cmd_lindblad},
      {"replicate", cmd_replicate},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

RunReport run(const RunConfig& config, std::string_view command, const RunOptions& options) {
  const auto& table = handlers();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const auto& entry) { return entry.first == command; });
  if (it == table.end()) throw ConfigError("command", "unknown command \"" + std::string(command) + "\"");

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.command = std::string(command);
  report.version = kVersion;
  report.seed = config.seed;
  report.tolerances = config.tolerances.values();
  Context ctx{config, report};
  it->second(ctx);
  if (options.timing) {
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

}  // namespace qbs::cli
