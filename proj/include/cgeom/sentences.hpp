#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgeom/formula.hpp"
#include "cgeom/lattice.hpp"

namespace cgeom {

/// Source text of lattice axiom 1..8 (idempotence, commutativity,
/// absorption, associativity for join and meet).
std::string lattice_axiom_text(int number);
Formula lattice_axiom(int number);

std::string jsd_text();
Formula jsd_sentence();

/// x <= y written as `x v y = y`.
Formula leq_formula(const Term& x, const Term& y);

/// x covered by y: `!(x = y) & x <= y & forall z. (x <= z & z <= y) -> (z = x | y = z)`,
/// with <= spelled out as a join equation.
Formula cover_formula(const Term& x, const Term& y, const std::string& bound);

/// forall x. forall y. cover(x, x v y) -> cover(x ^ y, y), covers expanded.
Formula lsm_sentence();

struct LsmRewrite {
  Formula expanded;  // covering and order eliminated, not yet prenex
  Formula prenex;
  PrefixClass prefix;
};

LsmRewrite rewrite_lsm();

}  // namespace cgeom
