#include <gtest/gtest.h>

#include <random>

#include "cgeom/eval.hpp"
#include "cgeom/formula.hpp"
#include "cgeom/sentences.hpp"
#include "fixtures.hpp"

using namespace cgeom;

TEST(Parse, PrecedenceAndAssociativity) {
  const Formula f = parse_formula("a = b -> c = d -> e = f");
  ASSERT_EQ(f->kind, FormulaKind::kImplies);
  EXPECT_EQ(f->children[1]->kind, FormulaKind::kImplies);

  const Formula g = parse_formula("a = b | c = d & e = f");
  ASSERT_EQ(g->kind, FormulaKind::kOr);
  EXPECT_EQ(g->children[1]->kind, FormulaKind::kAnd);

  const Formula h = parse_formula("x v y ^ z = x");
  ASSERT_EQ(h->lhs->kind, TermNode::Kind::kJoin);
  EXPECT_EQ(h->lhs->rhs->kind, TermNode::Kind::kMeet);

  const Formula q = parse_formula("forall x. x = y -> exists z. z = x");
  ASSERT_EQ(q->kind, FormulaKind::kForall);
  EXPECT_EQ(q->children[0]->kind, FormulaKind::kImplies);

  const Formula n = parse_formula("!x = y & y = y");
  ASSERT_EQ(n->kind, FormulaKind::kAnd);
  EXPECT_EQ(n->children[0]->kind, FormulaKind::kNot);

  const Formula p = parse_formula("(x = y | y = x) & x = x");
  EXPECT_EQ(p->kind, FormulaKind::kAnd);
  const Formula t = parse_formula("(x v y) ^ z = z");
  EXPECT_EQ(t->lhs->kind, TermNode::Kind::kMeet);
}

TEST(Parse, Errors) {
  for (const char* bad : {"", "x =", "x = y &", "forall . x = x", "forall v. v = v", "x = (y", "x y = z",
                          "x = y)", "v = x", "exists x x = x", "x ~ y"}) {
    EXPECT_THROW(parse_formula(bad), ParseError) << bad;
  }
  try {
    parse_formula("x = y &");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
}

TEST(Print, Parenthesisation) {
  EXPECT_EQ(print_formula(parse_formula("forall x. x v x = x")), "forall x. x v x = x");
  EXPECT_EQ(print_formula(parse_formula("(x v y) ^ z = z")), "(x v y) ^ z = z");
  EXPECT_EQ(print_formula(parse_formula("x v y ^ z = z")), "x v (y ^ z) = z");
  EXPECT_EQ(print_formula(parse_formula("(a = b -> c = d) -> e = f")), "(a = b -> c = d) -> e = f");
  EXPECT_EQ(print_formula(parse_formula("!(a = b & c = d)")), "!(a = b & c = d)");
  EXPECT_EQ(print_formula(parse_formula("(forall x. x = x) & y = y")), "(forall x. x = x) & y = y");
}

namespace {

Term random_term(std::mt19937_64& rng, int depth) {
  static const std::vector<std::string> names{"x", "y", "z", "w"};
  if (depth == 0 || rng() % 3 == 0) return var(names[rng() % names.size()]);
  Term a = random_term(rng, depth - 1), b = random_term(rng, depth - 1);
  return rng() % 2 ? join(a, b) : meet(a, b);
}

Formula random_formula(std::mt19937_64& rng, int depth) {
  static const std::vector<std::string> names{"x", "y", "z", "w"};
  if (depth == 0) return eq(random_term(rng, 2), random_term(rng, 2));
  switch (rng() % 7) {
    case 0: return neg(random_formula(rng, depth - 1));
    case 1: return conj({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
    case 2: return disj({random_formula(rng, depth - 1), random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
    case 3: return implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4: return forall(names[rng() % 4], random_formula(rng, depth - 1));
    case 5: return exists(names[rng() % 4], random_formula(rng, depth - 1));
    default: return eq(random_term(rng, 3), random_term(rng, 3));
  }
}

std::vector<TableLattice> small_lattices() {
  return {fixtures::chain_lattice(1), fixtures::chain_lattice(3),
          TableLattice::from_lattice(ClosedSetLattice(fixtures::m3())),
          TableLattice::from_lattice(ClosedSetLattice(fixtures::n5()))};
}

}  // namespace

TEST(Print, RoundTripsRandomFormulas) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const Formula f = random_formula(rng, 4);
    const std::string text = print_formula(f);
    const Formula back = parse_formula(text);
    ASSERT_TRUE(same_formula(f, back)) << text;
    EXPECT_EQ(print_formula(back), text);
  }
}

TEST(FreeVariables, OrderOfFirstOccurrence) {
  EXPECT_EQ(free_variables(parse_formula("forall x. y v x = z & x = w")),
            (std::vector<std::string>{"y", "z", "w"}));
  EXPECT_TRUE(free_variables(parse_formula("forall x. x = x")).empty());
}

TEST(Prenex, SimpleShapes) {
  EXPECT_EQ(print_formula(prenex(parse_formula("(forall x. x = x) & (exists y. y = y)"))),
            "forall x. exists y. x = x & y = y");
  EXPECT_EQ(print_formula(prenex(parse_formula("(forall x. x = y) -> y = y"))), "exists x. x = y -> y = y");
  EXPECT_EQ(print_formula(prenex(parse_formula("!(exists x. x = y)"))), "forall x. !x = y");
  // The bound x clashes with the free x of the other conjunct.
  EXPECT_EQ(print_formula(prenex(parse_formula("x = x & (forall x. x v x = x)"))),
            "forall x_1. x = x & x_1 v x_1 = x_1");
}

TEST(Prenex, PreservesTruthOnSmallLattices) {
  std::mt19937_64 rng(42);
  const auto lattices = small_lattices();
  for (int trial = 0; trial < 400; ++trial) {
    const Formula f = random_formula(rng, 3);
    const Formula p = prenex(f);
    ASSERT_TRUE(same_formula(parse_formula(print_formula(p)), p));
    ASSERT_EQ(free_variables(p).size(), free_variables(f).size());
    for (const auto& l : lattices) {
      Assignment a;
      for (const auto& v : free_variables(f)) a[v] = static_cast<int>(rng() % l.size());
      ASSERT_EQ(eval(f, l, a), eval(p, l, a)) << print_formula(f) << "\n" << print_formula(p);
    }
  }
}

TEST(Classify, Classes) {
  EXPECT_EQ(classify_prefix(parse_formula("x = y")).name(), "QuantifierFree");
  EXPECT_EQ(classify_prefix(lattice_axiom(1)).name(), "Universal");
  EXPECT_EQ(classify_prefix(jsd_sentence()).word, "∀∀∀");
  EXPECT_EQ(classify_prefix(parse_formula("forall x. exists y. x = y")).name(), "ForallExists");
  EXPECT_EQ(classify_prefix(parse_formula("exists y. y = y")).name(), "ForallExists");
  const PrefixClass other = classify_prefix(parse_formula("exists x. forall y. x v y = y"));
  EXPECT_EQ(other.kind, PrefixClass::Kind::kOther);
  EXPECT_EQ(other.name(), "Other(∃∀)");
  EXPECT_EQ(prefix_word(parse_formula("forall x. forall y. x = y")), "∀∀");
}

TEST(Sentences, LatticeAxiomsAreUniversal) {
  for (int i = 1; i <= 8; ++i) {
    EXPECT_EQ(classify_prefix(lattice_axiom(i)).kind, PrefixClass::Kind::kUniversal) << i;
    EXPECT_TRUE(free_variables(lattice_axiom(i)).empty());
  }
  EXPECT_THROW(lattice_axiom(9), InputError);
}

TEST(Sentences, LsmRewriteShape) {
  const LsmRewrite r = rewrite_lsm();
  EXPECT_EQ(r.prefix.word, "∀∀∀∃");
  EXPECT_EQ(r.prefix.kind, PrefixClass::Kind::kForallExists);
  EXPECT_TRUE(free_variables(r.expanded).empty());
  EXPECT_TRUE(free_variables(r.prenex).empty());
}
