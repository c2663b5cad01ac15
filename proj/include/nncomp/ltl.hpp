#pragma once

// Co-safe LTL over region atoms: AST, concrete syntax, and finite-trace
// semantics.
//
// Concrete grammar (loosest to tightest binding):
//
//   f ::= f -> f        right associative, rewritten to !f | f
//       | f | f
//       | f & f
//       | f U f         right associative
//       | !f | X f | F f
//       | true | false | atom | ( f )
//
// `false` is read as `!true`.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nncomp/error.hpp"

namespace nncomp::ltl {

struct SourcePos {
  int line = 0;
  int column = 0;
};

enum class Op { True, Atom, Not, And, Or, Next, Until, Eventually };

// Immutable formula tree. Copies share structure.
class Formula {
 public:
  Formula();  // `true`

  static Formula truth(SourcePos pos = {});
  static Formula falsity(SourcePos pos = {});
  static Formula atom(std::string name, SourcePos pos = {});
  static Formula negation(Formula f, SourcePos pos = {});
  static Formula conjunction(Formula a, Formula b, SourcePos pos = {});
  static Formula disjunction(Formula a, Formula b, SourcePos pos = {});
  static Formula next(Formula f, SourcePos pos = {});
  static Formula until(Formula a, Formula b, SourcePos pos = {});
  static Formula eventually(Formula f, SourcePos pos = {});

  Op op() const noexcept;
  SourcePos pos() const noexcept;

  // Atom name; throws for non-atoms.
  const std::string& name() const;
  // Operand of Not/Next/Eventually.
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_false() const noexcept;
  // No Next/Until/Eventually anywhere in the tree.
  bool is_propositional() const;
  std::set<std::string> atoms() const;
  std::size_t size() const;

  // Structural equality; source positions are ignored.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Prints with the minimal parenthesization that parses back to an equal tree.
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

Formula parse_formula(std::string_view text);

// Rewrites Or and Eventually into the base grammar (true, atom, !, &, X, U).
Formula desugar(const Formula& f);

// Negation normal form. Returns nullopt when a negation would have to pass
// through a temporal operator, which has no co-safe dual in the grammar.
std::optional<Formula> to_nnf(const Formula& f);

// Syntactic co-safety: the NNF exists, so every negation sits on an atom
// (or on `true`).
bool check_cosafe(const Formula& f);

using Symbol = std::set<std::string>;
using Word = std::vector<Symbol>;

// Finite-trace satisfaction at position 0. Next is strong: false at the last
// position. Throws on an empty word.
bool eval_trace(const Formula& f, const Word& w);

// Truth of a propositional formula under one symbol. Throws if `f` contains a
// temporal operator.
bool eval_symbol(const Formula& f, const Symbol& s);

}  // namespace nncomp::ltl
