#include "qbs/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "qbs/cli/report.hpp"

namespace qbs::cli {

using nlohmann::json;

ConfigError::ConfigError(std::string path, const std::string& message, double defect)
    : Error("config error at " + path + ": " + message), path_(std::move(path)), defect_(defect) {}

Tolerances::Tolerances()
    : values_{
          {"coeff_structure", 1e-12},
          {"ito_power", 1e-10},
          {"price_bounds", 1e-12},
          {"residual", 1e-6},
          {"terminal", 1e-6},
          {"classical", 1e-9},
          {"reconstruction", 1e-10},
          {"lindblad", 1e-8},
          {"unitality", 1e-9},
          {"replication", 0.01},
      } {}

double Tolerances::get(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("tolerances." + name, "unknown tolerance");
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  const auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("tolerances." + name, "unknown tolerance");
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError("tolerances." + name, "tolerance must be finite and > 0");
  }
  it->second = value;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  auto same = [](const ComplexMatrix& x, const ComplexMatrix& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
  };
  const auto& ma = a.model;
  const auto& mb = b.model;
  const bool model_eq = ma.ops.X == mb.ops.X && ma.ops.H == mb.ops.H && same(ma.ops.L, mb.ops.L) &&
                        ma.ops.S == mb.ops.S && ma.K == mb.K && ma.r == mb.r && ma.T == mb.T &&
                        ma.beta0 == mb.beta0;
  const bool state_eq = a.state.has_value() == b.state.has_value() &&
                        (!a.state || (a.state->size() == b.state->size() && *a.state == *b.state));
  return a.schema_version == b.schema_version && model_eq && state_eq && a.grid == b.grid &&
         a.ito_check == b.ito_check && a.terminal == b.terminal && a.hedge == b.hedge &&
         a.classical == b.classical && a.lindblad == b.lindblad && a.replicate == b.replicate &&
         a.seed == b.seed && a.tolerances == b.tolerances && a.output == b.output;
}

namespace {

// ---------------------------------------------------------------------------
// Field readers. Every failure is reported with the dotted field path.

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "number is not finite");
  return v;
}

int read_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

std::vector<double> read_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  if (j.empty()) throw ConfigError(path, "grid must be nonempty");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], at_index(path, i)));
  return out;
}

Complex read_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected an [re, im] pair");
  return {read_number(j[0], at_index(path, 0)), read_number(j[1], at_index(path, 1))};
}

ComplexMatrix read_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty array of rows");
  const auto n = static_cast<Index>(j.size());
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    const std::string rpath = at_index(path, static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw ConfigError(rpath, "matrix must be square (" + std::to_string(n) + " entries per row)");
    }
    for (Index k = 0; k < n; ++k)
      m(i, k) = read_complex(row[static_cast<std::size_t>(k)], at_index(rpath, static_cast<std::size_t>(k)));
  }
  return m;
}

HermitianMatrix read_hermitian(const json& j, const std::string& path) {
  try {
    return HermitianMatrix(read_matrix(j, path));
  } catch (const InvariantError& e) {
    throw ConfigError(path, e.what(), e.defect());
  }
}

UnitaryMatrix read_unitary(const json& j, const std::string& path) {
  try {
    return UnitaryMatrix(read_matrix(j, path));
  } catch (const InvariantError& e) {
    throw ConfigError(path, e.what(), e.defect());
  }
}

std::vector<HermitianMatrix> read_hermitians(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty array of matrices");
  std::vector<HermitianMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_hermitian(j[i], at_index(path, i)));
  return out;
}

void check_dim(const ComplexMatrix& m, Index dim, const std::string& path) {
  if (m.rows() != dim) {
    throw ConfigError(path, "dimension " + std::to_string(m.rows()) + " does not match model dimension " +
                                std::to_string(dim));
  }
}

void check_positive(const HermitianMatrix& m, const std::string& path) {
  const double lo = min_eigenvalue(m);
  if (!(lo > 0.0)) {
    std::ostringstream os;
    os << "must be positive definite (smallest eigenvalue " << lo << ")";
    throw ConfigError(path, os.str(), -lo);
  }
}

void check_commutes(const ComplexMatrix& a, const ComplexMatrix& k, const std::string& path) {
  const double c = relative_commutator(a, k);
  if (c > kCommutationTolerance) {
    std::ostringstream os;
    os << "must commute with model.K (relative commutator " << c << ")";
    throw ConfigError(path, os.str(), c);
  }
}

MarketModel read_model(const json& j) {
  require_object(j, "model");
  const json* ops = find(j, "ops");
  if (!ops) throw ConfigError("model.ops", "missing");
  require_object(*ops, "model.ops");

  const json* xj = find(*ops, "X");
  if (!xj) throw ConfigError("model.ops.X", "missing");
  HermitianMatrix x = read_hermitian(*xj, "model.ops.X");
  const Index d = x.dim();

  HermitianMatrix h = HermitianMatrix::zero(d);
  if (const json* p = find(*ops, "H")) h = read_hermitian(*p, "model.ops.H");
  ComplexMatrix l = ComplexMatrix::Zero(d, d);
  if (const json* p = find(*ops, "L")) l = read_matrix(*p, "model.ops.L");
  UnitaryMatrix s = UnitaryMatrix::identity(d);
  if (const json* p = find(*ops, "S")) s = read_unitary(*p, "model.ops.S");
  check_dim(h, d, "model.ops.H");
  check_dim(l, d, "model.ops.L");
  check_dim(s, d, "model.ops.S");
  check_positive(x, "model.ops.X");

  const json* kj = find(j, "K");
  if (!kj) throw ConfigError("model.K", "missing");
  HermitianMatrix k = kj->is_number()
                          ? read_number(*kj, "model.K") * HermitianMatrix::identity(d)
                          : read_hermitian(*kj, "model.K");
  check_dim(k, d, "model.K");
  check_positive(k, "model.K");
  check_commutes(x, k, "model.ops.X");

  auto scalar = [&](const char* key, std::optional<double> fallback) {
    const std::string path = std::string("model.") + key;
    const json* p = find(j, key);
    if (!p) {
      if (!fallback) throw ConfigError(path, "missing");
      return *fallback;
    }
    return read_number(*p, path);
  };
  const double r = scalar("r", std::nullopt);
  const double T = scalar("T", std::nullopt);
  const double beta0 = scalar("beta0", 1.0);
  if (r < 0.0) throw ConfigError("model.r", "must be >= 0");
  if (!(T > 0.0)) throw ConfigError("model.T", "must be > 0");
  if (!(beta0 > 0.0)) throw ConfigError("model.beta0", "must be > 0");

  return MarketModel(ModelOperators(std::move(x), std::move(h), std::move(l), std::move(s)),
                     std::move(k), r, T, beta0);
}

ComplexVector read_state(const json& j, Index dim) {
  if (!j.is_array() || static_cast<Index>(j.size()) != dim) {
    throw ConfigError("state", "expected " + std::to_string(dim) + " [re, im] pairs");
  }
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i)
    v(i) = read_complex(j[static_cast<std::size_t>(i)], at_index("state", static_cast<std::size_t>(i)));
  const double n = v.norm();
  if (std::abs(n - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "state must be normalized (norm " << n << ")";
    throw ConfigError("state", os.str(), std::abs(n - 1.0));
  }
  return v;
}

template <class Fn>
void with(const json& obj, const char* key, const std::string& path, Fn&& fn) {
  if (const json* p = find(obj, key)) fn(*p, join(path, key));
}

void read_section(const json& root, const char* key, const std::function<void(const json&, const std::string&)>& fn) {
  if (const json* p = find(root, key)) {
    require_object(*p, key);
    fn(*p, key);
  }
}

std::vector<std::string> known_keys() {
  return {"schema_version", "model", "state", "grid", "ito_check", "terminal", "hedge",
          "classical", "lindblad", "replicate", "seed", "tolerances", "output"};
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("syntax error: ") + e.what());
  }
  require_object(root, "");
  for (const auto& [key, value] : root.items()) {
    (void)value;
    const auto keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError(key, "unknown field");
  }

  const json* version = find(root, "schema_version");
  if (!version) throw ConfigError("schema_version", "missing");
  if (read_int(*version, "schema_version") != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  const json* model = find(root, "model");
  if (!model) throw ConfigError("model", "missing");

  RunConfig cfg(read_model(*model));
  const Index d = cfg.model.dim();
  const HermitianMatrix& K = cfg.model.K;

  if (const json* p = find(root, "state")) cfg.state = read_state(*p, d);

  auto read_z_list = [&](const json& j, const std::string& path) {
    auto zs = read_hermitians(j, path);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      check_dim(zs[i], d, at_index(path, i));
      check_commutes(zs[i], K, at_index(path, i));
    }
    return zs;
  };
  auto positive_list = [](std::vector<double> v, const std::string& path) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!(v[i] > 0.0)) throw ConfigError(at_index(path, i), "must be > 0");
    return v;
  };

  read_section(root, "grid", [&](const json& j, const std::string& path) {
    with(j, "t", path, [&](const json& v, const std::string& p) { cfg.grid.t = positive_list(read_numbers(v, p), p); });
    with(j, "z", path, [&](const json& v, const std::string& p) { cfg.grid.z = read_z_list(v, p); });
  });
  read_section(root, "ito_check", [&](const json& j, const std::string& path) {
    with(j, "dims", path, [&](const json& v, const std::string& p) {
      if (!v.is_array() || v.empty()) throw ConfigError(p, "expected a nonempty array of integers");
      cfg.ito_check.dims.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const int dim = read_int(v[i], at_index(p, i));
        if (dim < 1) throw ConfigError(at_index(p, i), "must be >= 1");
        cfg.ito_check.dims.push_back(dim);
      }
    });
    with(j, "k_max", path, [&](const json& v, const std::string& p) {
      cfg.ito_check.k_max = read_int(v, p);
      if (cfg.ito_check.k_max < 2) throw ConfigError(p, "must be >= 2");
    });
    with(j, "trials", path, [&](const json& v, const std::string& p) {
      cfg.ito_check.trials = read_int(v, p);
      if (cfg.ito_check.trials < 1) throw ConfigError(p, "must be >= 1");
    });
  });
  read_section(root, "terminal", [&](const json& j, const std::string& path) {
    with(j, "zT", path, [&](const json& v, const std::string& p) { cfg.terminal.zT = read_z_list(v, p); });
    with(j, "t_small", path, [&](const json& v, const std::string& p) {
      cfg.terminal.t_small = read_number(v, p);
      if (!(cfg.terminal.t_small > 0.0)) throw ConfigError(p, "must be > 0");
    });
    with(j, "gap", path, [&](const json& v, const std::string& p) {
      cfg.terminal.gap = read_number(v, p);
      if (!(cfg.terminal.gap > 0.0)) throw ConfigError(p, "must be > 0");
    });
  });
  read_section(root, "hedge", [&](const json& j, const std::string& path) {
    with(j, "times", path, [&](const json& v, const std::string& p) {
      cfg.hedge.times = read_numbers(v, p);
      for (std::size_t i = 0; i < cfg.hedge.times.size(); ++i) {
        const double t = cfg.hedge.times[i];
        if (!(t > 0.0 && t < cfg.model.T)) throw ConfigError(at_index(p, i), "must lie in (0, model.T)");
      }
    });
    with(j, "stock", path, [&](const json& v, const std::string& p) {
      cfg.hedge.stock = read_z_list(v, p);
      for (std::size_t i = 0; i < cfg.hedge.stock.size(); ++i) check_positive(cfg.hedge.stock[i], at_index(p, i));
    });
    with(j, "convention", path, [&](const json& v, const std::string& p) {
      if (v == "log_price") {
        cfg.hedge.convention = DeltaConvention::log_price;
      } else if (v == "classical") {
        cfg.hedge.convention = DeltaConvention::classical;
      } else {
        throw ConfigError(p, "expected \"log_price\" or \"classical\"");
      }
    });
  });
  read_section(root, "classical", [&](const json& j, const std::string& path) {
    auto& c = cfg.classical;
    with(j, "x", path, [&](const json& v, const std::string& p) { c.x = positive_list(read_numbers(v, p), p); });
    with(j, "t", path, [&](const json& v, const std::string& p) { c.t = positive_list(read_numbers(v, p), p); });
    with(j, "strike", path, [&](const json& v, const std::string& p) {
      c.strike = read_number(v, p);
      if (!(c.strike > 0.0)) throw ConfigError(p, "must be > 0");
    });
    with(j, "r", path, [&](const json& v, const std::string& p) {
      c.r = read_number(v, p);
      if (c.r < 0.0) throw ConfigError(p, "must be >= 0");
    });
    with(j, "sigma", path, [&](const json& v, const std::string& p) {
      c.sigma = read_number(v, p);
      if (!(c.sigma > 0.0)) throw ConfigError(p, "must be > 0");
    });
  });
  read_section(root, "lindblad", [&](const json& j, const std::string& path) {
    with(j, "times", path, [&](const json& v, const std::string& p) {
      cfg.lindblad.times = read_numbers(v, p);
      for (std::size_t i = 0; i < cfg.lindblad.times.size(); ++i)
        if (cfg.lindblad.times[i] < 0.0) throw ConfigError(at_index(p, i), "must be >= 0");
    });
    with(j, "steps", path, [&](const json& v, const std::string& p) {
      cfg.lindblad.steps = read_int(v, p);
      if (*cfg.lindblad.steps < 1) throw ConfigError(p, "must be >= 1");
    });
  });
  read_section(root, "replicate", [&](const json& j, const std::string& path) {
    auto& rp = cfg.replicate;
    auto pos = [&](const char* key, double& field) {
      with(j, key, path, [&](const json& v, const std::string& p) {
        field = read_number(v, p);
        if (!(field > 0.0)) throw ConfigError(p, "must be > 0");
      });
    };
    pos("x0", rp.x0);
    pos("strike", rp.strike);
    pos("T", rp.T);
    pos("sigma", rp.sigma);
    with(j, "r", path, [&](const json& v, const std::string& p) {
      rp.r = read_number(v, p);
      if (rp.r < 0.0) throw ConfigError(p, "must be >= 0");
    });
    with(j, "steps", path, [&](const json& v, const std::string& p) {
      rp.steps = read_int(v, p);
      if (rp.steps < 100) throw ConfigError(p, "must be >= 100");
    });
    with(j, "paths", path, [&](const json& v, const std::string& p) {
      rp.paths = read_int(v, p);
      if (rp.paths < 1000) throw ConfigError(p, "must be >= 1000");
    });
  });
  if (const json* p = find(root, "seed")) {
    if (!p->is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
    cfg.seed = p->get<std::uint64_t>();
  }
  read_section(root, "tolerances", [&](const json& j, const std::string& path) {
    for (const auto& [name, v] : j.items()) cfg.tolerances.set(name, read_number(v, join(path, name)));
  });
  if (const json* p = find(root, "output")) {
    if (*p == "json") {
      cfg.output = OutputFormat::json;
    } else if (*p == "csv") {
      cfg.output = OutputFormat::csv;
    } else {
      throw ConfigError("output", "expected \"json\" or \"csv\"");
    }
  }
  return cfg;
}

std::string serialize_config(const RunConfig& c) {
  Json root;
  root["schema_version"] = c.schema_version;
  const auto& m = c.model;
  root["model"] = {
      {"ops",
       {{"X", matrix_json(m.ops.X)},
        {"H", matrix_json(m.ops.H)},
        {"L", matrix_json(m.ops.L)},
        {"S", matrix_json(m.ops.S)}}},
      {"K", matrix_json(m.K)},
      {"r", m.r},
      {"T", m.T},
      {"beta0", m.beta0},
  };
  if (c.state) root["state"] = vector_json(*c.state);

  auto matrices = [](const std::vector<HermitianMatrix>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(matrix_json(x));
    return a;
  };
  Json grid = Json::object();
  if (!c.grid.t.empty()) grid["t"] = c.grid.t;
  if (!c.grid.z.empty()) grid["z"] = matrices(c.grid.z);
  root["grid"] = grid;
  root["ito_check"] = {{"dims", c.ito_check.dims}, {"k_max", c.ito_check.k_max}, {"trials", c.ito_check.trials}};
  Json terminal = {{"t_small", c.terminal.t_small}, {"gap", c.terminal.gap}};
  if (!c.terminal.zT.empty()) terminal["zT"] = matrices(c.terminal.zT);
  root["terminal"] = terminal;
  Json hedge = {{"convention", to_string(c.hedge.convention)}};
  if (!c.hedge.times.empty()) hedge["times"] = c.hedge.times;
  if (!c.hedge.stock.empty()) hedge["stock"] = matrices(c.hedge.stock);
  root["hedge"] = hedge;
  root["classical"] = {{"x", c.classical.x},         {"t", c.classical.t},
                       {"strike", c.classical.strike}, {"r", c.classical.r},
                       {"sigma", c.classical.sigma}};
  Json lindblad = {{"times", c.lindblad.times}};
  if (c.lindblad.steps) lindblad["steps"] = *c.lindblad.steps;
  root["lindblad"] = lindblad;
  const auto& rp = c.replicate;
  root["replicate"] = {{"x0", rp.x0},       {"strike", rp.strike}, {"r", rp.r},
                       {"T", rp.T},         {"steps", rp.steps},   {"paths", rp.paths},
                       {"sigma", rp.sigma}};
  if (c.seed) root["seed"] = *c.seed;
  root["tolerances"] = c.tolerances.values();
  root["output"] = c.output == OutputFormat::json ? "json" : "csv";
  return to_json_text(root);
}

}  // namespace qbs::cli
