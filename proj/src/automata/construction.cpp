// Formula progression: a state is the residual obligation left after reading
// a prefix, kept as a canonical DNF over "leaf" subformulas (literals and
// temporal nodes). Reading a symbol rewrites every leaf; the residual `true`
// accepts, the residual `false` is the sink. The reachable residual graph is
// then minimized with Hopcroft's algorithm.

#include <algorithm>
#include <deque>
#include <map>

#include "internal.hpp"

namespace nncomp::automata {

namespace {

using detail::Mask;
using ltl::Op;

using Term = std::vector<int>;  // sorted leaf ids
using Dnf = std::set<Term>;     // {} is false, {{}} is true

const Dnf kTrue{Term{}};

struct Leaf {
  Formula f;
  int atom = -1;  // literal: index into atoms
  bool negated = false;
};

class Progressor {
 public:
  explicit Progressor(const std::vector<std::string>& atoms) : atoms_(atoms) {}

  Dnf dnf(const Formula& g) {
    switch (g.op()) {
      case Op::True:
        return kTrue;
      case Op::Not:
        if (g.operand().op() == Op::True) return {};
        return {{intern(g)}};
      case Op::Atom:
      case Op::Next:
      case Op::Until:
      case Op::Eventually:
        return {{intern(g)}};
      case Op::And:
        return conj(dnf(g.lhs()), dnf(g.rhs()));
      case Op::Or:
        return disj(dnf(g.lhs()), dnf(g.rhs()));
    }
    return {};
  }

  Dnf progress(const Dnf& state, Mask m) {
    Dnf out;
    for (const auto& term : state) {
      Dnf acc = kTrue;
      for (int leaf : term) {
        acc = conj(acc, progress_leaf(leaf, m));
        if (acc.empty()) break;
      }
      out = disj(out, acc);
    }
    return out;
  }

 private:
  int intern(const Formula& g) {
    const std::string key = ltl::to_string(g);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    Leaf leaf{g, -1, false};
    const Formula* a = nullptr;
    if (g.op() == Op::Atom) {
      a = &g;
    } else if (g.op() == Op::Not && g.operand().op() == Op::Atom) {
      a = &g.operand();
      leaf.negated = true;
    }
    if (a) {
      auto pos = std::lower_bound(atoms_.begin(), atoms_.end(), a->name());
      leaf.atom = static_cast<int>(pos - atoms_.begin());
    }
    const int id = static_cast<int>(leaves_.size());
    leaves_.push_back(std::move(leaf));
    ids_.emplace(key, id);
    return id;
  }

  bool contradictory(const Term& t) const {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Leaf& a = leaves_[static_cast<std::size_t>(t[i])];
      if (a.atom < 0) continue;
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        const Leaf& b = leaves_[static_cast<std::size_t>(t[j])];
        if (b.atom == a.atom && b.negated != a.negated) return true;
      }
    }
    return false;
  }

  static bool subset(const Term& a, const Term& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  // Drop every term that contains another term.
  static Dnf absorb(const Dnf& d) {
    std::vector<Term> terms(d.begin(), d.end());
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    Dnf out;
    for (const auto& t : terms) {
      bool absorbed = false;
      for (const auto& kept : out) {
        if (subset(kept, t)) {
          absorbed = true;
          break;
        }
      }
      if (!absorbed) out.insert(t);
    }
    return out;
  }

  Dnf disj(const Dnf& a, const Dnf& b) const {
    Dnf out = a;
    out.insert(b.begin(), b.end());
    return absorb(out);
  }

  Dnf conj(const Dnf& a, const Dnf& b) const {
    Dnf out;
    for (const auto& x : a) {
      for (const auto& y : b) {
        Term t;
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(t));
        if (!contradictory(t)) out.insert(std::move(t));
      }
    }
    return absorb(out);
  }

  // Progression of a formula that occurs below a leaf, or of the leaf itself.
  Dnf progress_formula(const Formula& g, Mask m) {
    switch (g.op()) {
      case Op::True:
        return kTrue;
      case Op::Atom:
      case Op::Not:
        if (g.op() == Op::Not && g.operand().op() == Op::True) return {};
        return progress_leaf(intern(g), m);
      case Op::And:
        return conj(progress_formula(g.lhs(), m), progress_formula(g.rhs(), m));
      case Op::Or:
        return disj(progress_formula(g.lhs(), m), progress_formula(g.rhs(), m));
      case Op::Next:
      case Op::Until:
      case Op::Eventually:
        return progress_leaf(intern(g), m);
    }
    return {};
  }

  Dnf progress_leaf(int id, Mask m) {
    const auto key = std::make_pair(id, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    // Copy: interning below may grow leaves_.
    const Leaf leaf = leaves_[static_cast<std::size_t>(id)];
    Dnf out;
    if (leaf.atom >= 0) {
      const bool present = (m >> leaf.atom) & 1U;
      out = (present != leaf.negated) ? kTrue : Dnf{};
    } else {
      const Formula& g = leaf.f;
      switch (g.op()) {
        case Op::Next:
          out = dnf(g.operand());
          break;
        case Op::Until:
          out = disj(progress_formula(g.rhs(), m), conj(progress_formula(g.lhs(), m), Dnf{{id}}));
          break;
        case Op::Eventually:
          out = disj(progress_formula(g.operand(), m), Dnf{{id}});
          break;
        default:
          throw Error("internal: unexpected leaf " + ltl::to_string(g));
      }
    }
    memo_.emplace(key, out);
    return out;
  }

  const std::vector<std::string>& atoms_;
  std::vector<Leaf> leaves_;
  std::map<std::string, int> ids_;
  std::map<std::pair<int, Mask>, Dnf> memo_;
};

// Hopcroft partition refinement. Returns the block index of every state.
std::vector<int> hopcroft(const std::vector<std::vector<int>>& delta, const std::vector<bool>& accepting,
                          std::size_t alphabet) {
  const std::size_t n = delta.size();
  std::vector<std::vector<std::vector<int>>> inverse(alphabet, std::vector<std::vector<int>>(n));
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t c = 0; c < alphabet; ++c)
      inverse[c][static_cast<std::size_t>(delta[q][c])].push_back(static_cast<int>(q));

  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n, -1);
  {
    std::vector<int> acc, rej;
    for (std::size_t q = 0; q < n; ++q) (accepting[q] ? acc : rej).push_back(static_cast<int>(q));
    for (auto* b : {&acc, &rej}) {
      if (b->empty()) continue;
      for (int q : *b) block_of[static_cast<std::size_t>(q)] = static_cast<int>(blocks.size());
      blocks.push_back(*b);
    }
  }

  std::deque<std::pair<int, std::size_t>> work;
  std::set<std::pair<int, std::size_t>> in_work;
  auto push = [&](int b, std::size_t c) {
    if (in_work.insert({b, c}).second) work.emplace_back(b, c);
  };
  if (blocks.size() == 2) {
    const int smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    for (std::size_t c = 0; c < alphabet; ++c) push(smaller, c);
  }

  while (!work.empty()) {
    const auto [a, c] = work.front();
    work.pop_front();
    in_work.erase({a, c});

    std::vector<bool> in_x(n, false);
    std::set<int> touched;
    for (int target : blocks[static_cast<std::size_t>(a)]) {
      for (int q : inverse[c][static_cast<std::size_t>(target)]) {
        in_x[static_cast<std::size_t>(q)] = true;
        touched.insert(block_of[static_cast<std::size_t>(q)]);
      }
    }
    for (int y : touched) {
      std::vector<int> inside, outside;
      for (int q : blocks[static_cast<std::size_t>(y)])
        (in_x[static_cast<std::size_t>(q)] ? inside : outside).push_back(q);
      if (inside.empty() || outside.empty()) continue;
      const int fresh = static_cast<int>(blocks.size());
      blocks[static_cast<std::size_t>(y)] = inside;
      blocks.push_back(outside);
      for (int q : outside) block_of[static_cast<std::size_t>(q)] = fresh;
      for (std::size_t s = 0; s < alphabet; ++s) {
        if (in_work.count({y, s})) {
          push(fresh, s);
        } else {
          push(inside.size() <= outside.size() ? y : fresh, s);
        }
      }
    }
  }
  return block_of;
}

}  // namespace

Dfa to_dfa(const Formula& f, const std::set<std::string>& atom_set) {
  for (const auto& a : f.atoms())
    if (!atom_set.count(a)) throw Error("atom '" + a + "' is not in the alphabet");
  if (atom_set.size() > detail::kMaxAtoms) throw Error("too many atoms for DFA construction");
  const auto nnf = ltl::to_nnf(f);
  if (!nnf) throw Error("formula is not co-safe: " + ltl::to_string(f));

  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  const std::size_t alphabet = std::size_t{1} << atoms.size();

  // Explore residuals breadth-first.
  Progressor prog(atoms);
  std::vector<Dnf> residuals;
  std::map<Dnf, int> index;
  std::vector<std::vector<int>> delta;
  auto add = [&](Dnf d) {
    auto it = index.find(d);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(residuals.size());
    index.emplace(d, id);
    residuals.push_back(std::move(d));
    return id;
  };
  add(prog.dnf(*nnf));
  for (std::size_t q = 0; q < residuals.size(); ++q) {
    std::vector<int> row(alphabet);
    for (std::size_t m = 0; m < alphabet; ++m) row[m] = add(prog.progress(residuals[q], static_cast<Mask>(m)));
    delta.push_back(std::move(row));
  }

  std::vector<bool> accepting(residuals.size());
  for (std::size_t q = 0; q < residuals.size(); ++q) accepting[q] = residuals[q] == kTrue;
  const auto block_of = hopcroft(delta, accepting, alphabet);

  // Quotient, renumbered breadth-first from the initial block.
  std::map<int, int> renum;
  std::vector<int> rep;  // new id -> a residual in the block
  std::deque<int> queue;
  auto visit = [&](int residual) {
    const int b = block_of[static_cast<std::size_t>(residual)];
    auto [it, fresh] = renum.emplace(b, static_cast<int>(rep.size()));
    if (fresh) {
      rep.push_back(residual);
      queue.push_back(residual);
    }
    return it->second;
  };
  visit(0);
  std::vector<std::vector<int>> qdelta;
  while (!queue.empty()) {
    const int r = queue.front();
    queue.pop_front();
    std::vector<int> row(alphabet);
    for (std::size_t m = 0; m < alphabet; ++m) row[m] = visit(delta[static_cast<std::size_t>(r)][m]);
    qdelta.push_back(std::move(row));
  }
  const int n = static_cast<int>(rep.size());

  Dfa d;
  d.atoms = atoms;
  d.initial = 0;
  int final_state = -1;
  for (int q = 0; q < n; ++q)
    if (accepting[static_cast<std::size_t>(rep[static_cast<std::size_t>(q)])]) final_state = q;

  // Dead states (no path to acceptance) collapse to at most one block.
  std::vector<bool> alive(static_cast<std::size_t>(n), false);
  if (final_state >= 0) {
    alive[static_cast<std::size_t>(final_state)] = true;
    for (bool changed = true; changed;) {
      changed = false;
      for (int q = 0; q < n; ++q) {
        if (alive[static_cast<std::size_t>(q)]) continue;
        for (std::size_t m = 0; m < alphabet; ++m) {
          if (alive[static_cast<std::size_t>(qdelta[static_cast<std::size_t>(q)][m])]) {
            alive[static_cast<std::size_t>(q)] = true;
            changed = true;
            break;
          }
        }
      }
    }
  }
  for (int q = 0; q < n; ++q)
    if (!alive[static_cast<std::size_t>(q)]) d.trap = q;

  int counter = 0;
  for (int q = 0; q < n; ++q) {
    if (q == final_state) d.state_names.push_back("qF");
    else if (d.trap && *d.trap == q) d.state_names.push_back("trap");
    else d.state_names.push_back("q" + std::to_string(counter++));
  }

  for (int q = 0; q < n; ++q) {
    std::map<int, std::vector<bool>> by_target;
    for (std::size_t m = 0; m < alphabet; ++m) {
      auto& on = by_target[qdelta[static_cast<std::size_t>(q)][m]];
      on.resize(alphabet, false);
      on[m] = true;
    }
    for (auto& [to, on] : by_target) d.edges.push_back({q, to, detail::guard_from_masks(on, atoms)});
  }

  if (final_state < 0) {
    // Unsatisfiable formula: keep a detached accepting state so that every
    // automaton has one.
    final_state = n;
    d.state_names.push_back("qF");
    d.edges.push_back({final_state, final_state, Formula::truth()});
  }
  d.final_state = final_state;
  return d;
}

}  // namespace nncomp::automata
