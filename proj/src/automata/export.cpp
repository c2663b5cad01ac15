#include <sstream>

#include <json.hpp>

#include "nncomp/automata.hpp"

namespace nncomp::automata {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

struct View {
  const std::vector<std::string>& names;
  const std::vector<Edge>& edges;
  int initial;
  std::vector<bool> shown;
  std::vector<bool> accepting;
};

std::string dot(const View& v) {
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (std::size_t q = 0; q < v.names.size(); ++q) {
    if (!v.shown[q]) continue;
    os << "  " << quoted(v.names[q]) << " [shape=" << (v.accepting[q] ? "doublecircle" : "circle") << "];\n";
  }
  os << "  __start -> " << quoted(v.names[static_cast<std::size_t>(v.initial)]) << ";\n";
  for (const auto& e : v.edges) {
    if (!v.shown[static_cast<std::size_t>(e.from)] || !v.shown[static_cast<std::size_t>(e.to)]) continue;
    os << "  " << quoted(v.names[static_cast<std::size_t>(e.from)]) << " -> "
       << quoted(v.names[static_cast<std::size_t>(e.to)]) << " [label=" << quoted(ltl::to_string(e.guard))
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::json json_of(const View& v) {
  nlohmann::json states = nlohmann::json::array();
  nlohmann::json finals = nlohmann::json::array();
  for (std::size_t q = 0; q < v.names.size(); ++q) {
    if (!v.shown[q]) continue;
    states.push_back(v.names[q]);
    if (v.accepting[q]) finals.push_back(v.names[q]);
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : v.edges) {
    if (!v.shown[static_cast<std::size_t>(e.from)] || !v.shown[static_cast<std::size_t>(e.to)]) continue;
    edges.push_back({{"from", v.names[static_cast<std::size_t>(e.from)]},
                     {"to", v.names[static_cast<std::size_t>(e.to)]},
                     {"guard", ltl::to_string(e.guard)}});
  }
  nlohmann::json out;
  out["states"] = states;
  out["initial"] = v.names[static_cast<std::size_t>(v.initial)];
  out["final"] = finals.size() == 1 ? finals[0] : finals;
  out["edges"] = edges;
  return out;
}

View view_of(const Dfa& d) {
  View v{d.state_names, d.edges, d.initial, {}, {}};
  for (int q = 0; q < d.num_states(); ++q) {
    v.shown.push_back(d.is_live(q));
    v.accepting.push_back(q == d.final_state);
  }
  return v;
}

View view_of(const PreprocessedDfa& p) {
  View v{p.names, p.edges, p.initial, {}, {}};
  for (int r = 0; r < p.num_states(); ++r) {
    v.shown.push_back(true);
    v.accepting.push_back(p.is_final(r));
  }
  return v;
}

}  // namespace

std::string to_dot(const Dfa& d) { return dot(view_of(d)); }
std::string to_dot(const PreprocessedDfa& d) { return dot(view_of(d)); }
std::string to_json(const Dfa& d) { return json_of(view_of(d)).dump(2) + "\n"; }
std::string to_json(const PreprocessedDfa& d) { return json_of(view_of(d)).dump(2) + "\n"; }

}  // namespace nncomp::automata
