#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cgeom/core_sets.hpp"

namespace cgeom {

// Terms and formulas over the language {v, ^} with equality. Nodes are
// immutable and shared; build them with the free functions below.

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { kVar, kJoin, kMeet };
  Kind kind;
  std::string name;  // kVar only
  Term lhs, rhs;     // kJoin / kMeet
};

Term var(std::string name);
Term join(Term a, Term b);
Term meet(Term a, Term b);

enum class FormulaKind { kEq, kNot, kAnd, kOr, kImplies, kForall, kExists };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind;
  Term lhs, rhs;                  // kEq
  std::vector<Formula> children;  // kNot: 1, kAnd/kOr: >= 2, kImplies: 2, quantifiers: 1
  std::string var;                // quantifiers
};

Formula eq(Term a, Term b);
Formula neg(Formula f);
Formula conj(std::vector<Formula> parts);  // a single part is returned as is
Formula disj(std::vector<Formula> parts);
Formula implies(Formula a, Formula b);
Formula forall(std::string v, Formula body);
Formula exists(std::string v, Formula body);

bool same_term(const Term& a, const Term& b);
bool same_formula(const Formula& a, const Formula& b);

/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: `forall x.` / `exists x.` bind as far right as possible;
/// `->` (right-assoc) < `|` < `&` < `!`; terms use `v` (join) and `^`
/// (meet, binds tighter), both left-assoc; identifiers are variables.
Formula parse_formula(std::string_view text);

/// Equivalent prenex form. Bound variables are renamed apart, keeping the
/// original name where it is still free and adding `_1`, `_2`, ... otherwise.
/// Quantifiers pulled out of sibling subformulas are merged universal-first.
Formula prenex(const Formula& f);

/// The leading quantifier word of a formula, e.g. "∀∀∃".
std::string prefix_word(const Formula& f);

struct PrefixClass {
  enum class Kind { kQuantifierFree, kUniversal, kForallExists, kOther };
  Kind kind;
  std::string word;  // of the prenex form
  std::string name() const;
};

PrefixClass classify_prefix(const Formula& f);

}  // namespace cgeom
