#include <vector>

#include "nncomp/ltl.hpp"

namespace nncomp::ltl {

namespace {

// Truth of `f` at every position of `w`, computed bottom-up.
std::vector<bool> positions(const Formula& f, const Word& w) {
  const std::size_t n = w.size();
  std::vector<bool> out(n, false);
  switch (f.op()) {
    case Op::True:
      out.assign(n, true);
      break;
    case Op::Atom:
      for (std::size_t t = 0; t < n; ++t) out[t] = w[t].count(f.name()) > 0;
      break;
    case Op::Not: {
      auto a = positions(f.operand(), w);
      for (std::size_t t = 0; t < n; ++t) out[t] = !a[t];
      break;
    }
    case Op::And:
    case Op::Or: {
      auto a = positions(f.lhs(), w);
      auto b = positions(f.rhs(), w);
      for (std::size_t t = 0; t < n; ++t) out[t] = f.op() == Op::And ? (a[t] && b[t]) : (a[t] || b[t]);
      break;
    }
    case Op::Next: {
      auto a = positions(f.operand(), w);
      for (std::size_t t = 0; t + 1 < n; ++t) out[t] = a[t + 1];
      break;
    }
    case Op::Eventually: {
      auto a = positions(f.operand(), w);
      bool seen = false;
      for (std::size_t t = n; t-- > 0;) {
        seen = seen || a[t];
        out[t] = seen;
      }
      break;
    }
    case Op::Until: {
      auto a = positions(f.lhs(), w);
      auto b = positions(f.rhs(), w);
      // a U b at t  <=>  b(t) || (a(t) && (a U b)(t+1))
      bool later = false;
      for (std::size_t t = n; t-- > 0;) {
        later = b[t] || (a[t] && later);
        out[t] = later;
      }
      break;
    }
  }
  return out;
}

}  // namespace

bool eval_trace(const Formula& f, const Word& w) {
  if (w.empty()) throw Error("eval_trace: empty word");
  return positions(f, w)[0];
}

bool eval_symbol(const Formula& f, const Symbol& s) {
  switch (f.op()) {
    case Op::True:
      return true;
    case Op::Atom:
      return s.count(f.name()) > 0;
    case Op::Not:
      return !eval_symbol(f.operand(), s);
    case Op::And:
      return eval_symbol(f.lhs(), s) && eval_symbol(f.rhs(), s);
    case Op::Or:
      return eval_symbol(f.lhs(), s) || eval_symbol(f.rhs(), s);
    case Op::Next:
    case Op::Until:
    case Op::Eventually:
      break;
  }
  throw Error("eval_symbol: temporal operator in propositional formula " + to_string(f));
}

}  // namespace nncomp::ltl
