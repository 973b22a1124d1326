#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgeom/eval.hpp"
#include "cgeom/formula.hpp"
#include "cgeom/lattice.hpp"

namespace cgeom {

/// Name of the variable standing for element i in diagram formulas.
std::string element_variable(int i);

/// Conjunction of every join atom, then every meet atom, over ordered pairs
/// of elements in canonical order: `v_i v v_j = v_k`, `v_i ^ v_j = v_l`.
Formula diagram(const TableLattice& l);

/// `x v y = x & !(x = y)`
Formula strictly_above(const Term& x, const Term& y);

/// The body of psi: diagram(l) & (x > v_g for every g).
Formula tv_phi(const TableLattice& l, const std::string& witness = "x");

/// exists x. tv_phi(l)
Formula tv_psi(const TableLattice& l, const std::string& witness = "x");

struct TvFailure {
  std::string name;         // "psi" or "exists x. x > v<i>"
  Formula formula;
  Assignment assignment;    // element variables -> elements of the larger lattice
  int big_witness = -1;     // first witness in the larger lattice
};

struct TvReport {
  int formulas_checked = 0;
  std::optional<TvFailure> failure;
  bool passed() const { return !failure.has_value(); }
};

/// Runs the Tarski-Vaught condition for psi and the single-element
/// instances `exists x. x > v_g`. A pass means only that this family found
/// no violation. Throws InputError when `map` is not a lattice embedding.
TvReport tarski_vaught_check(const TableLattice& small, const TableLattice& big,
                             const std::vector<int>& map);
TvReport tarski_vaught_check(const ClosedSetLattice& small, const ClosedSetLattice& big,
                             const std::vector<int>& map);

}  // namespace cgeom
