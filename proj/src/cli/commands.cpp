#include <fstream>
#include <ostream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "nncomp/cli.hpp"

namespace nncomp::cli {

using nlohmann::json;

namespace {

json box_json(const space::Box& b) {
  json lo = json::array();
  json hi = json::array();
  for (int i = 0; i < b.dim(); ++i) {
    lo.push_back(b.lo()[i]);
    hi.push_back(b.hi()[i]);
  }
  return {{"lo", lo}, {"hi", hi}};
}

json boxes_json(const std::vector<space::Box>& bs) {
  json out = json::array();
  for (const auto& b : bs) out.push_back(box_json(b));
  return out;
}

json attempt_json(const verifier::EdgeAttempt& a) {
  json j;
  j["from"] = a.from;
  j["to"] = a.to;
  j["controller"] = a.controller.empty() ? json(nullptr) : json(a.controller);
  j["kind"] = verifier::to_string(a.kind);
  j["t"] = a.bad_t < 0 ? json(nullptr) : json(a.bad_t);
  j["reach"] = space::to_string(a.reach_verdict);
  j["avoid"] = a.avoid_verdict ? json(space::to_string(*a.avoid_verdict)) : json(nullptr);
  j["message"] = a.message;
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StageError("output", "cannot write '" + path + "'");
  out << text;
  if (!out) throw StageError("output", "failed writing '" + path + "'");
}

std::string word_string(const ltl::Word& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += "{";
    bool first = true;
    for (const auto& a : w[i]) {
      if (!first) s += ",";
      s += a;
      first = false;
    }
    s += "}";
  }
  return s + "]";
}

std::string vector_string(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << "]";
  return os.str();
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

void report_warnings(const Config& cfg) {
  for (const auto& w : cfg.warnings) spdlog::warn("{}", w);
}

}  // namespace

Automata build_automata(const Config& cfg) {
  try {
    Automata a;
    a.dfa = automata::to_dfa(cfg.formula, cfg.formula.atoms());
    automata::DisjointPairs disjoint;
    const auto atoms = cfg.formula.atoms();
    for (const auto& pr : space::disjoint_pairs(cfg.regions))
      if (atoms.count(pr.first) && atoms.count(pr.second)) disjoint.insert(pr);
    a.pruned = automata::prune_dfa(a.dfa, disjoint);
    a.preprocessed = automata::preprocess_unique_paths(a.pruned);
    spdlog::info("dfa: {} live states, {} after pruning, {} in the unfolded graph{}", a.dfa.live_state_count(),
                 a.pruned.live_state_count(), a.preprocessed.num_states(),
                 a.preprocessed.simple_path_mode ? " (simple-path mode)" : "");
    return a;
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError("automaton", e.what());
  }
}

VerifyReport run_verify(const Config& cfg) {
  const Automata a = build_automata(cfg);
  verifier::Problem p{*cfg.system, cfg.controllers, cfg.bounds, cfg.regions, cfg.reach};
  reach::ReachSet x0{{cfg.initial.box}, 0, ""};

  VerifyReport rep;
  try {
    rep.result = verifier::reach_dfs(a.preprocessed, p, x0, cfg.search);
  } catch (const Error& e) {
    throw StageError("verify", e.what());
  }
  const auto& r = rep.result;

  json steps = json::array();
  for (const auto& s : r.strategy.steps) steps.push_back({{"controller", s.controller}, {"horizon", s.horizon}});
  json certs = json::array();
  for (const auto& c : r.certificates)
    certs.push_back({{"from", c.from}, {"to", c.to}, {"controller", c.controller}, {"horizon", c.horizon}});
  json failures = json::array();
  for (const auto& att : r.log)
    if (!att.certified) failures.push_back(attempt_json(att));
  rep.strategy = {{"verified", r.verified},
                  {"formula", cfg.formula_text},
                  {"steps", steps},
                  {"certificates", certs},
                  {"failure_log", failures}};

  std::string trace;
  for (const auto& att : r.log) {
    for (const auto& s : att.steps) {
      json rec;
      rec["from"] = att.from;
      rec["to"] = att.to;
      rec["controller"] = att.controller;
      rec["t"] = s.t;
      rec["boxes"] = boxes_json(s.boxes);
      rec["verdicts"] = {{"reach", space::to_string(s.reach)},
                         {"avoid", s.avoid ? json(space::to_string(*s.avoid)) : json(nullptr)}};
      trace += rec.dump() + "\n";
    }
  }
  rep.trace_jsonl = std::move(trace);
  return rep;
}

std::string dump_strategy(const json& strategy) { return strategy.dump(2) + "\n"; }

sys::Strategy strategy_from_json(const json& j) {
  sys::Strategy s;
  try {
    for (const auto& step : j.at("steps")) {
      sys::StrategyStep st{step.at("controller").get<std::string>(), step.at("horizon").get<int>()};
      if (st.horizon < 0) throw Error("negative horizon for controller '" + st.controller + "'");
      s.steps.push_back(std::move(st));
    }
  } catch (const json::exception& e) {
    throw StageError("strategy", e.what());
  } catch (const Error& e) {
    throw StageError("strategy", e.what());
  }
  return s;
}

ValidateReport run_validate(const Config& cfg, const sys::Strategy& strategy, std::size_t samples,
                            std::uint64_t seed) {
  for (const auto& s : strategy.steps) nn::find_controller(cfg.controllers, s.controller);
  const auto dfa = automata::to_dfa(cfg.formula, cfg.formula.atoms());
  std::mt19937_64 rng(seed);
  ValidateReport rep;
  rep.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const Eigen::VectorXd x0 = cfg.initial.sample(rng);
    const auto trace = sys::simulate(*cfg.system, cfg.controllers, strategy, cfg.bounds, x0);
    ltl::Word w;
    for (const auto& x : trace.states) w.push_back(space::label_point(cfg.regions, x));
    const bool sat = ltl::eval_trace(cfg.formula, w);
    const bool acc = dfa.accepts(w);
    if (sat != acc) spdlog::error("sample {}: automaton and semantics disagree", i);
    if (sat && acc) {
      ++rep.satisfied;
    } else {
      rep.counterexamples.push_back(i);
      rep.details.push_back("sample " + std::to_string(i) + ": x0=" + vector_string(x0) + " word=" + word_string(w));
    }
  }
  return rep;
}

int cmd_verify(const std::string& config_path, const std::optional<std::string>& out_path,
               const std::optional<std::string>& trace_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Config cfg = load_config(config_path);
    report_warnings(cfg);
    const VerifyReport rep = run_verify(cfg);
    const std::string text = dump_strategy(rep.strategy);
    if (out_path) write_file(*out_path, text);
    else out << text;
    if (trace_path) write_file(*trace_path, rep.trace_jsonl);
    if (rep.result.verified) {
      spdlog::info("verified with {} step(s)", rep.result.strategy.steps.size());
      return kExitOk;
    }
    for (const auto& a : rep.result.log)
      if (!a.certified) spdlog::warn("rejected {} -> {} ({}): {}", a.from, a.to, a.controller, a.message);
    err << "not verified: no certified path to the accepting state\n";
    return kExitFailed;
  });
}

int cmd_dfa(const std::string& config_path, DfaFormat format, DfaVariant variant, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    const Config cfg = load_config(config_path);
    const Automata a = build_automata(cfg);
    if (variant == DfaVariant::Preprocessed) {
      out << (format == DfaFormat::Dot ? automata::to_dot(a.preprocessed) : automata::to_json(a.preprocessed));
    } else {
      const auto& d = variant == DfaVariant::Pruned ? a.pruned : a.dfa;
      out << (format == DfaFormat::Dot ? automata::to_dot(d) : automata::to_json(d));
    }
    return kExitOk;
  });
}

int cmd_validate(const std::string& config_path, const std::string& strategy_path, std::size_t samples,
                 std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Config cfg = load_config(config_path);
    std::ifstream in(strategy_path);
    if (!in) throw StageError("strategy", "cannot open '" + strategy_path + "'");
    json sj;
    try {
      sj = json::parse(in);
    } catch (const json::exception& e) {
      throw StageError("strategy", e.what());
    }
    if (!sj.value("verified", false)) throw StageError("strategy", "strategy file does not hold a verified strategy");
    const sys::Strategy strategy = strategy_from_json(sj);
    if (samples == 0) spdlog::warn("no samples requested; validation is vacuous");
    const ValidateReport rep = run_validate(cfg, strategy, samples, seed.value_or(cfg.seed));
    out << "samples: " << rep.samples << "\n";
    out << "satisfied: " << rep.satisfied << "/" << rep.samples << "\n";
    for (const auto& d : rep.details) out << "counterexample " << d << "\n";
    return rep.counterexamples.empty() ? kExitOk : kExitFailed;
  });
}

int cmd_reachdump(const std::string& config_path, const std::string& controller, std::optional<int> steps,
                  std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Config cfg = load_config(config_path);
    const auto& c = nn::find_controller(cfg.controllers, controller);
    const int h = steps.value_or(cfg.reach.horizon);
    if (h < 0) throw StageError("reachdump", "negative step count");
    reach::ReachSet x0{{cfg.initial.box}, 0, c.name()};
    const auto seq = reach::reach_sequence(*cfg.system, x0, c, cfg.bounds, cfg.reach, h);
    for (const auto& rs : seq) {
      json verdicts = json::object();
      for (const auto& [name, region] : cfg.regions.regions) {
        (void)region;
        verdicts[name] = space::to_string(
            space::guard_over_boxes(cfg.regions, ltl::Formula::atom(name), rs.boxes, cfg.reach.epsilon));
      }
      json rec{{"t", rs.t}, {"controller", c.name()}, {"boxes", boxes_json(rs.boxes)}, {"verdicts", verdicts}};
      out << rec.dump() << "\n";
    }
    return kExitOk;
  });
}

}  // namespace nncomp::cli
