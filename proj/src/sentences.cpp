#include "cgeom/sentences.hpp"

namespace cgeom {

std::string lattice_axiom_text(int number) {
  switch (number) {
    case 1: return "forall x. x v x = x";
    case 2: return "forall x. x ^ x = x";
    case 3: return "forall x. forall y. x v y = y v x";
    case 4: return "forall x. forall y. x ^ y = y ^ x";
    case 5: return "forall x. forall y. (x v y) ^ y = y";
    case 6: return "forall x. forall y. (x ^ y) v y = y";
    case 7: return "forall x. forall y. forall z. (x v y) v z = x v (y v z)";
    case 8: return "forall x. forall y. forall z. (x ^ y) ^ z = x ^ (y ^ z)";
    default: throw InputError("lattice axioms are numbered 1 to 8");
  }
}

Formula lattice_axiom(int number) { return parse_formula(lattice_axiom_text(number)); }

std::string jsd_text() {
  return "forall x. forall y. forall z. x v y = x v z -> x v (y ^ z) = (x v y) ^ (x v z)";
}

Formula jsd_sentence() { return parse_formula(jsd_text()); }

Formula leq_formula(const Term& x, const Term& y) { return eq(join(x, y), y); }

Formula cover_formula(const Term& x, const Term& y, const std::string& bound) {
  const Term z = var(bound);
  Formula between = conj({leq_formula(x, z), leq_formula(z, y)});
  Formula endpoint = disj({eq(z, x), eq(y, z)});
  return conj({neg(eq(x, y)), leq_formula(x, y), forall(bound, implies(between, endpoint))});
}

Formula lsm_sentence() {
  const Term x = var("x"), y = var("y");
  return forall("x", forall("y", implies(cover_formula(x, join(x, y), "z"),
                                         cover_formula(meet(x, y), y, "r"))));
}

LsmRewrite rewrite_lsm() {
  Formula expanded = lsm_sentence();
  Formula p = prenex(expanded);
  return LsmRewrite{expanded, p, classify_prefix(p)};
}

}  // namespace cgeom
