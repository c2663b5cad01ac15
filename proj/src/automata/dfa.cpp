#include <algorithm>
#include <deque>

#include "internal.hpp"

namespace nncomp::automata {

int Dfa::index_of(const std::string& name) const {
  auto it = std::find(state_names.begin(), state_names.end(), name);
  return it == state_names.end() ? -1 : static_cast<int>(it - state_names.begin());
}

int Dfa::step(int q, const Symbol& s) const {
  for (const auto& e : edges)
    if (e.from == q && ltl::eval_symbol(e.guard, s)) return e.to;
  return -1;
}

bool Dfa::accepts(const Word& w) const {
  int q = initial;
  for (const auto& s : w) {
    q = step(q, s);
    if (q < 0) return false;
  }
  return q == final_state;
}

const Edge* Dfa::find_edge(int from, int to) const {
  for (const auto& e : edges)
    if (e.from == from && e.to == to) return &e;
  return nullptr;
}

std::vector<const Edge*> Dfa::out_edges(int q) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges)
    if (e.from == q) out.push_back(&e);
  return out;
}

int Dfa::live_state_count() const { return num_states() - (trap ? 1 : 0); }

Dfa prune_dfa(const Dfa& d, const DisjointPairs& disjoint) {
  std::vector<Edge> kept;
  for (const auto& e : d.edges)
    if (satisfiable_under(e.guard, d.atoms, disjoint)) kept.push_back(e);

  std::vector<bool> reached(static_cast<std::size_t>(d.num_states()), false);
  std::deque<int> queue{d.initial};
  reached[static_cast<std::size_t>(d.initial)] = true;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (const auto& e : kept) {
      if (e.from == q && !reached[static_cast<std::size_t>(e.to)]) {
        reached[static_cast<std::size_t>(e.to)] = true;
        queue.push_back(e.to);
      }
    }
  }
  reached[static_cast<std::size_t>(d.final_state)] = true;

  std::vector<int> renum(reached.size(), -1);
  Dfa out;
  out.atoms = d.atoms;
  for (int q = 0; q < d.num_states(); ++q) {
    if (!reached[static_cast<std::size_t>(q)]) continue;
    renum[static_cast<std::size_t>(q)] = out.num_states();
    out.state_names.push_back(d.name(q));
  }
  out.initial = renum[static_cast<std::size_t>(d.initial)];
  out.final_state = renum[static_cast<std::size_t>(d.final_state)];
  if (d.trap && reached[static_cast<std::size_t>(*d.trap)]) out.trap = renum[static_cast<std::size_t>(*d.trap)];
  for (const auto& e : kept) {
    const int from = renum[static_cast<std::size_t>(e.from)];
    const int to = renum[static_cast<std::size_t>(e.to)];
    if (from >= 0 && to >= 0) out.edges.push_back({from, to, e.guard});
  }
  return out;
}

std::set<int> successors(const Dfa& d, int q) {
  if (q < 0 || q >= d.num_states()) throw Error("successors: no such state");
  std::set<int> out;
  for (const auto& e : d.edges)
    if (e.from == q && d.is_live(e.to)) out.insert(e.to);
  return out;
}

}  // namespace nncomp::automata
