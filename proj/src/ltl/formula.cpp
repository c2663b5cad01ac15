#include <ostream>
#include <sstream>

#include "nncomp/ltl.hpp"

namespace nncomp::ltl {

struct Formula::Node {
  Op op = Op::True;
  std::string name;
  Formula a;
  Formula b;
  SourcePos pos;
};

Formula::Formula() : node_(nullptr) {}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::truth(SourcePos pos) {
  auto n = std::make_shared<Node>();
  n->op = Op::True;
  n->pos = pos;
  return Formula(std::move(n));
}

Formula Formula::falsity(SourcePos pos) { return negation(truth(pos), pos); }

Formula Formula::atom(std::string name, SourcePos pos) {
  if (name.empty()) throw Error("atom name must be nonempty");
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->name = std::move(name);
  n->pos = pos;
  return Formula(std::move(n));
}

namespace {

template <typename NodeT>
std::shared_ptr<NodeT> make_node(Op op, SourcePos pos) {
  auto n = std::make_shared<NodeT>();
  n->op = op;
  n->pos = pos;
  return n;
}

}  // namespace

Formula Formula::negation(Formula f, SourcePos pos) {
  auto n = make_node<Node>(Op::Not, pos);
  n->a = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b, SourcePos pos) {
  auto n = make_node<Node>(Op::And, pos);
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::disjunction(Formula a, Formula b, SourcePos pos) {
  auto n = make_node<Node>(Op::Or, pos);
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::next(Formula f, SourcePos pos) {
  auto n = make_node<Node>(Op::Next, pos);
  n->a = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::until(Formula a, Formula b, SourcePos pos) {
  auto n = make_node<Node>(Op::Until, pos);
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::eventually(Formula f, SourcePos pos) {
  auto n = make_node<Node>(Op::Eventually, pos);
  n->a = std::move(f);
  return Formula(std::move(n));
}

// A default-constructed Formula has a null node and means `true`.
Op Formula::op() const noexcept { return node_ ? node_->op : Op::True; }

SourcePos Formula::pos() const noexcept { return node_ ? node_->pos : SourcePos{}; }

const std::string& Formula::name() const {
  if (op() != Op::Atom) throw Error("name() called on a non-atom formula");
  return node_->name;
}

const Formula& Formula::operand() const {
  switch (op()) {
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
      return node_->a;
    default:
      throw Error("operand() called on a formula that is not unary");
  }
}

const Formula& Formula::lhs() const {
  switch (op()) {
    case Op::And:
    case Op::Or:
    case Op::Until:
      return node_->a;
    default:
      throw Error("lhs() called on a formula that is not binary");
  }
}

const Formula& Formula::rhs() const {
  switch (op()) {
    case Op::And:
    case Op::Or:
    case Op::Until:
      return node_->b;
    default:
      throw Error("rhs() called on a formula that is not binary");
  }
}

bool Formula::is_false() const noexcept {
  return op() == Op::Not && node_->a.op() == Op::True;
}

bool Formula::is_propositional() const {
  switch (op()) {
    case Op::True:
    case Op::Atom:
      return true;
    case Op::Not:
      return operand().is_propositional();
    case Op::And:
    case Op::Or:
      return lhs().is_propositional() && rhs().is_propositional();
    case Op::Next:
    case Op::Until:
    case Op::Eventually:
      return false;
  }
  return false;
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::True:
      return;
    case Op::Atom:
      out.insert(f.name());
      return;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
      collect_atoms(f.operand(), out);
      return;
    case Op::And:
    case Op::Or:
    case Op::Until:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

}  // namespace

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  collect_atoms(*this, out);
  return out;
}

std::size_t Formula::size() const {
  switch (op()) {
    case Op::True:
    case Op::Atom:
      return 1;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
      return 1 + operand().size();
    case Op::And:
    case Op::Or:
    case Op::Until:
      return 1 + lhs().size() + rhs().size();
  }
  return 1;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::True:
      return true;
    case Op::Atom:
      return a.name() == b.name();
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
      return a.operand() == b.operand();
    case Op::And:
    case Op::Or:
    case Op::Until:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

namespace {

// Binding strength used by the printer; mirrors the parser.
int precedence(Op op) {
  switch (op) {
    case Op::Or:
      return 1;
    case Op::And:
      return 2;
    case Op::Until:
      return 3;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
      return 4;
    case Op::True:
    case Op::Atom:
      return 5;
  }
  return 5;
}

void print(const Formula& f, int min_prec, std::string& out) {
  const int prec = precedence(f.op());
  const bool wrap = prec < min_prec;
  if (wrap) out += '(';
  switch (f.op()) {
    case Op::True:
      out += "true";
      break;
    case Op::Atom:
      out += f.name();
      break;
    case Op::Not:
      out += '!';
      print(f.operand(), 4, out);
      break;
    case Op::Next:
      out += "X ";
      print(f.operand(), 4, out);
      break;
    case Op::Eventually:
      out += "F ";
      print(f.operand(), 4, out);
      break;
    case Op::And:
      print(f.lhs(), 2, out);
      out += " & ";
      print(f.rhs(), 3, out);
      break;
    case Op::Or:
      print(f.lhs(), 1, out);
      out += " | ";
      print(f.rhs(), 2, out);
      break;
    case Op::Until:
      print(f.lhs(), 4, out);
      out += " U ";
      print(f.rhs(), 3, out);
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

Formula desugar(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::Atom:
      return f;
    case Op::Not:
      return Formula::negation(desugar(f.operand()), f.pos());
    case Op::Next:
      return Formula::next(desugar(f.operand()), f.pos());
    case Op::Eventually:
      return Formula::until(Formula::truth(f.pos()), desugar(f.operand()), f.pos());
    case Op::And:
      return Formula::conjunction(desugar(f.lhs()), desugar(f.rhs()), f.pos());
    case Op::Or:
      return Formula::negation(
          Formula::conjunction(Formula::negation(desugar(f.lhs())),
                               Formula::negation(desugar(f.rhs())), f.pos()),
          f.pos());
    case Op::Until:
      return Formula::until(desugar(f.lhs()), desugar(f.rhs()), f.pos());
  }
  return f;
}

namespace {

std::optional<Formula> nnf(const Formula& f, bool negated) {
  switch (f.op()) {
    case Op::True:
    case Op::Atom:
      return negated ? Formula::negation(f, f.pos()) : f;
    case Op::Not:
      return nnf(f.operand(), !negated);
    case Op::And:
    case Op::Or: {
      auto a = nnf(f.lhs(), negated);
      auto b = nnf(f.rhs(), negated);
      if (!a || !b) return std::nullopt;
      const bool conj = (f.op() == Op::And) != negated;
      return conj ? Formula::conjunction(*a, *b, f.pos()) : Formula::disjunction(*a, *b, f.pos());
    }
    case Op::Next:
    case Op::Eventually: {
      if (negated) return std::nullopt;
      auto a = nnf(f.operand(), false);
      if (!a) return std::nullopt;
      return f.op() == Op::Next ? Formula::next(*a, f.pos()) : Formula::eventually(*a, f.pos());
    }
    case Op::Until: {
      if (negated) return std::nullopt;
      auto a = nnf(f.lhs(), false);
      auto b = nnf(f.rhs(), false);
      if (!a || !b) return std::nullopt;
      return Formula::until(*a, *b, f.pos());
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Formula> to_nnf(const Formula& f) { return nnf(f, false); }

bool check_cosafe(const Formula& f) { return to_nnf(f).has_value(); }

}  // namespace nncomp::ltl
