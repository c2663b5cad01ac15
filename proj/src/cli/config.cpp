#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "nncomp/cli.hpp"

namespace nncomp::cli {

using nlohmann::json;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(where + ": missing field '" + key + "'");
  return j.at(key);
}

VectorXd vec(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(what + " must be an array of numbers");
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(what + " must be an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

MatrixXd mat(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw Error(what + " must be a nonempty 2-D array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const VectorXd row = vec(j[static_cast<std::size_t>(r)], what);
    if (row.size() != cols) throw DimensionError(what + " is ragged");
    m.row(r) = row.transpose();
  }
  return m;
}

space::Box box(const json& j, const std::string& what) {
  return space::Box(vec(field(j, "lo", what), what + ".lo"), vec(field(j, "hi", what), what + ".hi"));
}

sys::AffineStep affine(const json& j, const std::string& what) {
  sys::AffineStep s;
  s.A = mat(field(j, "A", what), what + ".A");
  s.B = mat(field(j, "B", what), what + ".B");
  s.c = j.contains("c") ? vec(j["c"], what + ".c") : VectorXd::Zero(s.A.rows());
  return s;
}

nn::ControlBounds bounds_of(const json& j, const std::string& what) {
  nn::ControlBounds b{vec(field(j, "lo", what), what + ".lo"), vec(field(j, "hi", what), what + ".hi")};
  return b;
}

void collect_positive(const ltl::Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case ltl::Op::Atom:
      out.insert(f.name());
      return;
    case ltl::Op::True:
    case ltl::Op::Not:
      return;
    case ltl::Op::Next:
    case ltl::Op::Eventually:
      collect_positive(f.operand(), out);
      return;
    case ltl::Op::And:
    case ltl::Op::Or:
    case ltl::Op::Until:
      collect_positive(f.lhs(), out);
      collect_positive(f.rhs(), out);
      return;
  }
}

}  // namespace

Eigen::VectorXd InitialSet::sample(std::mt19937_64& rng) const {
  return ellipsoid ? space::sample_ellipsoid(*ellipsoid, rng) : space::sample_box(box, rng);
}

Config config_from_json(const json& j, const std::string& base_dir) {
  Config cfg;
  try {
    if (!j.is_object()) throw Error("configuration must be a JSON object");
    if (j.value("version", 0) != 1) throw Error("unsupported or missing \"version\" (expected 1)");

    // System first: it fixes the dimensions everything else is checked against.
    const json& sj = field(j, "system", "config");
    if (sj.contains("lti")) {
      cfg.system = std::make_shared<sys::LtvSystem>(std::vector<sys::AffineStep>{affine(sj["lti"], "system.lti")});
    } else if (sj.contains("ltv")) {
      std::vector<sys::AffineStep> sched;
      const json& entries = field(sj["ltv"], "schedule", "system.ltv");
      for (std::size_t i = 0; i < entries.size(); ++i)
        sched.push_back(affine(entries[i], "system.ltv.schedule[" + std::to_string(i) + "]"));
      cfg.system = std::make_shared<sys::LtvSystem>(std::move(sched));
    } else {
      throw Error("system must contain \"lti\" or \"ltv\"");
    }
    const int d = cfg.system->state_dim();
    const int n = cfg.system->input_dim();

    cfg.regions.workspace = box(field(j, "workspace", "config"), "workspace");
    if (cfg.regions.workspace.dim() != d) throw DimensionError("workspace dimension differs from the state dimension");
    if (j.contains("label_dims")) {
      cfg.regions.label_dims = j["label_dims"].get<std::vector<int>>();
    } else {
      for (int i = 0; i < d; ++i) cfg.regions.label_dims.push_back(i);
    }
    for (const auto& r : field(j, "regions", "config")) {
      const std::string name = field(r, "name", "region").get<std::string>();
      if (!cfg.regions.regions.emplace(name, box(r, "region " + name)).second)
        throw Error("duplicate region '" + name + "'");
    }
    cfg.regions.validate();

    const json& ij = field(j, "initial", "config");
    if (ij.contains("box")) {
      cfg.initial.box = box(ij["box"], "initial.box");
    } else if (ij.contains("ellipsoid")) {
      const json& ej = ij["ellipsoid"];
      space::Ellipsoid e;
      e.center = vec(field(ej, "center", "initial.ellipsoid"), "initial.ellipsoid.center");
      if (ej.contains("shape")) {
        e.shape = mat(ej["shape"], "initial.ellipsoid.shape");
      } else {
        e.shape = vec(field(ej, "shape_diag", "initial.ellipsoid"), "initial.ellipsoid.shape_diag").asDiagonal();
      }
      cfg.initial.box = space::ellipsoid_to_box(e);
      cfg.initial.ellipsoid = std::move(e);
    } else {
      throw Error("initial must contain \"box\" or \"ellipsoid\"");
    }
    if (cfg.initial.box.dim() != d) throw DimensionError("initial set dimension differs from the state dimension");
    if (!cfg.regions.workspace.contains(cfg.initial.box)) throw Error("initial set is not inside the workspace");

    for (const auto& cj : field(j, "controllers", "config")) {
      const std::string name = field(cj, "name", "controller").get<std::string>();
      json net;
      if (cj.contains("weights")) {
        std::filesystem::path p = cj["weights"].get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        std::ifstream in(p);
        if (!in) throw Error("cannot open controller file '" + p.string() + "'");
        try {
          net = json::parse(in);
        } catch (const json::exception& e) {
          throw Error("malformed controller file '" + p.string() + "': " + e.what());
        }
      } else {
        net = field(cj, "network", "controller " + name);
      }
      if (net.contains("name") && net["name"] != name)
        throw Error("controller '" + name + "' refers to a network named " + net["name"].dump());
      net["name"] = name;
      nn::NnController c = nn::controller_from_json(net);
      if (c.input_dim() != d || c.output_dim() != n)
        throw DimensionError("controller '" + name + "' does not match the system dimensions");
      for (const auto& other : cfg.controllers)
        if (other.name() == name) throw Error("duplicate controller '" + name + "'");
      if (!cfg.regions.regions.count(name)) throw Error("controller '" + name + "' does not name a region");
      cfg.controllers.push_back(std::move(c));
    }

    const json& bj = field(j, "control_bounds", "config");
    if (bj.contains("schedule")) {
      for (const auto& e : bj["schedule"]) cfg.bounds.steps.push_back(bounds_of(e, "control_bounds.schedule"));
    } else {
      cfg.bounds.steps.push_back(bounds_of(bj, "control_bounds"));
    }
    cfg.bounds.validate(n);

    if (j.contains("reach")) {
      const json& r = j["reach"];
      cfg.reach.horizon = r.value("horizon", cfg.reach.horizon);
      cfg.reach.split_depth = r.value("split_depth", cfg.reach.split_depth);
      cfg.reach.merge = r.value("merge", cfg.reach.merge);
      cfg.reach.epsilon = r.value("epsilon", cfg.reach.epsilon);
      cfg.reach.divergence_cap = r.value("divergence_cap", cfg.reach.divergence_cap);
    }
    cfg.reach.validate();
    if (j.contains("search")) {
      cfg.search.try_all_controllers = j["search"].value("try_all_controllers", false);
      cfg.search.shuffle = j["search"].value("shuffle", false);
    }
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.search.seed = cfg.seed;
  } catch (const StageError&) {
    throw;
  } catch (const json::exception& e) {
    throw StageError("config", e.what());
  } catch (const Error& e) {
    throw StageError("config", e.what());
  }

  try {
    cfg.formula_text = field(j, "formula", "config").get<std::string>();
    cfg.formula = ltl::parse_formula(cfg.formula_text);
  } catch (const json::exception& e) {
    throw StageError("formula", e.what());
  } catch (const Error& e) {
    throw StageError("formula", e.what());
  }
  if (!ltl::check_cosafe(cfg.formula)) throw StageError("formula", "not co-safe: " + cfg.formula_text);
  for (const auto& a : cfg.formula.atoms())
    if (!cfg.regions.regions.count(a)) throw StageError("formula", "atom '" + a + "' has no region");

  // Regions that occur positively but have no controller only shrink the
  // candidate sets, so they are reported and tolerated.
  std::set<std::string> positive;
  collect_positive(*ltl::to_nnf(cfg.formula), positive);
  for (const auto& a : positive) {
    bool has = false;
    for (const auto& c : cfg.controllers) has = has || c.name() == a;
    if (!has) cfg.warnings.push_back("region '" + a + "' occurs positively but has no controller");
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StageError("config", "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw StageError("config", e.what());
  }
  const auto base = std::filesystem::path(path).parent_path().string();
  return config_from_json(j, base.empty() ? "." : base);
}

void init_logging() {
  auto logger = spdlog::get("nncomp");
  if (!logger) logger = spdlog::stderr_color_mt("nncomp");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("NNCOMP_LOG_LEVEL");
  spdlog::set_level(spdlog::level::from_str(env ? env : "warn"));
}

}  // namespace nncomp::cli
