#include <algorithm>
#include <map>

#include "internal.hpp"

namespace nncomp::automata {

namespace detail {

Symbol symbol_of(Mask m, const std::vector<std::string>& atoms) {
  Symbol s;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (m & (Mask{1} << i)) s.insert(atoms[i]);
  return s;
}

bool eval_mask(const Formula& g, Mask m, const std::vector<std::string>& atoms) {
  return ltl::eval_symbol(g, symbol_of(m, atoms));
}

namespace {

// An implicant fixes the bits in `care` to the values in `value`.
struct Implicant {
  Mask value = 0;
  Mask care = 0;

  bool covers(Mask m) const { return (m & care) == value; }
  bool operator<(const Implicant& o) const {
    return care != o.care ? care < o.care : value < o.value;
  }
  bool operator==(const Implicant& o) const { return care == o.care && value == o.value; }
};

int popcount(Mask m) {
  int n = 0;
  for (; m; m &= m - 1) ++n;
  return n;
}

std::vector<Implicant> prime_implicants(const std::vector<Mask>& minterms, Mask full) {
  std::set<Implicant> current;
  for (Mask m : minterms) current.insert({m, full});
  std::vector<Implicant> primes;
  while (!current.empty()) {
    std::set<Implicant> next;
    std::set<Implicant> used;
    // Group by care mask; two implicants merge when they differ in one bit.
    std::map<Mask, std::vector<Implicant>> by_care;
    for (const auto& imp : current) by_care[imp.care].push_back(imp);
    for (auto& [care, group] : by_care) {
      for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) {
          const Mask diff = group[i].value ^ group[j].value;
          if (popcount(diff) != 1) continue;
          next.insert({group[i].value & ~diff, care & ~diff});
          used.insert(group[i]);
          used.insert(group[j]);
        }
      }
    }
    for (const auto& imp : current)
      if (!used.count(imp)) primes.push_back(imp);
    current = std::move(next);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

Formula term_formula(const Implicant& imp, const std::vector<std::string>& atoms) {
  std::optional<Formula> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Mask bit = Mask{1} << i;
    if (!(imp.care & bit)) continue;
    Formula lit = Formula::atom(atoms[i]);
    if (!(imp.value & bit)) lit = Formula::negation(lit);
    out = out ? Formula::conjunction(*out, lit) : lit;
  }
  return out ? *out : Formula::truth();
}

}  // namespace

Formula guard_from_masks(const std::vector<bool>& on, const std::vector<std::string>& atoms) {
  const Mask full = atoms.empty() ? 0 : static_cast<Mask>((std::size_t{1} << atoms.size()) - 1);
  std::vector<Mask> minterms;
  for (std::size_t m = 0; m < on.size(); ++m)
    if (on[m]) minterms.push_back(static_cast<Mask>(m));
  if (minterms.empty()) return Formula::falsity();
  if (minterms.size() == on.size()) return Formula::truth();

  const auto primes = prime_implicants(minterms, full);

  // Essential primes first, then greedily the prime covering the most
  // uncovered minterms (fewest literals, then lowest value on ties).
  std::set<Mask> uncovered(minterms.begin(), minterms.end());
  std::vector<Implicant> chosen;
  auto take = [&](const Implicant& p) {
    chosen.push_back(p);
    for (auto it = uncovered.begin(); it != uncovered.end();)
      it = p.covers(*it) ? uncovered.erase(it) : std::next(it);
  };
  for (Mask m : minterms) {
    const Implicant* only = nullptr;
    int count = 0;
    for (const auto& p : primes) {
      if (p.covers(m)) {
        ++count;
        only = &p;
      }
    }
    if (count == 1 && uncovered.count(m)) take(*only);
  }
  while (!uncovered.empty()) {
    const Implicant* best = nullptr;
    std::size_t best_gain = 0;
    for (const auto& p : primes) {
      std::size_t gain = 0;
      for (Mask m : uncovered) gain += p.covers(m) ? 1 : 0;
      if (gain == 0) continue;
      if (!best || gain > best_gain ||
          (gain == best_gain && popcount(p.care) < popcount(best->care))) {
        best = &p;
        best_gain = gain;
      }
    }
    take(*best);
  }

  std::sort(chosen.begin(), chosen.end(), [](const Implicant& a, const Implicant& b) {
    // Print terms in ascending order of their lowest covered mask.
    return a.value != b.value ? a.value < b.value : a.care < b.care;
  });
  std::optional<Formula> out;
  for (const auto& p : chosen) {
    Formula t = term_formula(p, atoms);
    out = out ? Formula::disjunction(*out, t) : t;
  }
  return *out;
}

}  // namespace detail

std::vector<Symbol> models(const Formula& guard, const std::vector<std::string>& atoms) {
  if (atoms.size() > detail::kMaxAtoms) throw Error("too many atoms to enumerate");
  std::vector<Symbol> out;
  const std::size_t n = std::size_t{1} << atoms.size();
  for (std::size_t m = 0; m < n; ++m) {
    auto s = detail::symbol_of(static_cast<detail::Mask>(m), atoms);
    if (ltl::eval_symbol(guard, s)) out.push_back(std::move(s));
  }
  return out;
}

bool satisfiable_under(const Formula& guard, const std::vector<std::string>& atoms,
                       const DisjointPairs& disjoint) {
  for (const auto& s : models(guard, atoms)) {
    bool ok = true;
    for (const auto& [a, b] : disjoint) {
      if (s.count(a) && s.count(b)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace nncomp::automata
