#pragma once

// Guard-labeled DFAs for co-safe formulas: construction by progression,
// pruning under region disjointness, and the unique-path unfolding used by
// the search.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nncomp/ltl.hpp"

namespace nncomp::automata {

using ltl::Formula;
using ltl::Symbol;
using ltl::Word;

struct Edge {
  int from = 0;
  int to = 0;
  Formula guard;  // propositional
};

// States are indices into `state_names`. The accepting state is unique and
// absorbing. A rejecting sink ("trap") is kept so that the unpruned automaton
// is total; it never shows up in successor sets or exports.
struct Dfa {
  std::vector<std::string> atoms;  // sorted
  std::vector<std::string> state_names;
  int initial = 0;
  int final_state = 0;
  std::optional<int> trap;
  std::vector<Edge> edges;  // sorted by (from, to), at most one per pair

  int num_states() const { return static_cast<int>(state_names.size()); }
  int index_of(const std::string& name) const;  // -1 if absent
  const std::string& name(int q) const { return state_names.at(static_cast<std::size_t>(q)); }

  // Target of the unique enabled edge, or -1 if none (possible after pruning).
  int step(int q, const Symbol& s) const;
  bool accepts(const Word& w) const;

  const Edge* find_edge(int from, int to) const;
  const Edge* self_loop(int q) const { return find_edge(q, q); }
  std::vector<const Edge*> out_edges(int q) const;

  bool is_live(int q) const { return !trap || *trap != q; }
  int live_state_count() const;
};

// Throws Error if `f` is not co-safe or uses an atom outside `atoms`.
Dfa to_dfa(const Formula& f, const std::set<std::string>& atoms);

// Pairs of atoms that can never hold together. Order inside a pair is
// irrelevant.
using DisjointPairs = std::set<std::pair<std::string, std::string>>;

// True iff some symbol respecting `disjoint` satisfies `guard`.
bool satisfiable_under(const Formula& guard, const std::vector<std::string>& atoms,
                       const DisjointPairs& disjoint);

Dfa prune_dfa(const Dfa& d, const DisjointPairs& disjoint);

// Live targets of q (the trap is excluded), self-loop included.
std::set<int> successors(const Dfa& d, int q);

// All symbols (as atom sets) over d.atoms satisfying a propositional guard.
std::vector<Symbol> models(const Formula& guard, const std::vector<std::string>& atoms);

struct PreprocessedDfa {
  Dfa source;
  std::vector<std::string> names;
  std::vector<int> origin;  // replica -> source state
  int initial = 0;
  std::vector<Edge> edges;  // replica indices; guards copied from source
  std::vector<std::vector<int>> in_edges;   // non-self-loop edge indices
  std::vector<std::vector<int>> out_edges;  // non-self-loop edge indices
  std::vector<std::optional<int>> self_loop;
  // Set when the live graph has a cycle other than self-loops. The graph is
  // then the live part of `source` itself and the search must avoid states
  // already on its path.
  bool simple_path_mode = false;

  int num_states() const { return static_cast<int>(names.size()); }
  bool is_final(int r) const { return origin.at(static_cast<std::size_t>(r)) == source.final_state; }
};

// Replicas beyond this count also switch to simple-path mode.
inline constexpr std::size_t kMaxReplicas = 100000;

PreprocessedDfa preprocess_unique_paths(const Dfa& d);

std::string to_dot(const Dfa& d);
std::string to_dot(const PreprocessedDfa& d);
std::string to_json(const Dfa& d);
std::string to_json(const PreprocessedDfa& d);

}  // namespace nncomp::automata
