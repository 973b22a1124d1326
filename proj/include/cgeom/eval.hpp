#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cgeom/formula.hpp"
#include "cgeom/lattice.hpp"

namespace cgeom {

/// Variable name -> element index of the lattice being evaluated over.
using Assignment = std::map<std::string, int>;

struct EvalOptions {
  /// Cache quantified subformulas on the values of their free variables.
  bool memoize = true;
  /// Split the range of an outermost quantifier across threads.
  bool parallel = true;
};

/// Brute-force satisfaction: quantifiers range over every element.
/// Throws InputError when a free variable is missing from `assignment`.
bool eval(const Formula& f, const TableLattice& l, const Assignment& assignment = {},
          const EvalOptions& options = {});
bool eval(const Formula& f, const ClosedSetLattice& l, const Assignment& assignment = {},
          const EvalOptions& options = {});

/// Compiled form of a formula, reusable across many assignments of the same
/// free variables (witness searches evaluate one body many times).
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, std::vector<std::string> free_order);
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  const std::vector<std::string>& free_order() const;

  /// `values[i]` is the element bound to free_order()[i].
  bool eval(const TableLattice& l, const std::vector<int>& values, const EvalOptions& options = {}) const;

  struct Program;

 private:
  std::unique_ptr<Program> program_;
};

}  // namespace cgeom
