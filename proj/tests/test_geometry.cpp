#include <gtest/gtest.h>

#include <random>

#include "cgeom/geometry.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cgeom;

TEST(Chain, ValidatesPermutation) {
  auto g = make_ground({"a", "b", "c"});
  EXPECT_THROW(Chain(g, {0, 1}), InputError);
  EXPECT_THROW(Chain(g, {0, 1, 1}), InputError);
  EXPECT_THROW(Chain::from_names(g, {"a", "b", "z"}), InputError);
  EXPECT_EQ(Chain::from_names(g, {"b", "a", "c"}).str(), "b < a < c");
}

TEST(Presentation, RejectsEmptyAndForeignChains) {
  auto g = make_ground({"a", "b"});
  EXPECT_THROW(MultiChainPresentation(g, {}), InputError);
  auto h = make_ground({"x", "y"});
  EXPECT_THROW(MultiChainPresentation(g, {Chain(h, {0, 1})}), InputError);
}

TEST(Downsets, ArePrefixes) {
  auto g = make_ground({"a", "b", "c", "d"});
  const SetFamily d = downsets(Chain::from_names(g, {"d", "a", "b", "c"}));
  EXPECT_EQ(oracle::to_names(d), oracle::family({"", "d", "ad", "abd", "abcd"}));
  auto one = make_ground({"a"});
  EXPECT_EQ(downsets(Chain(one, {0})).size(), 2);
}

TEST(Generate, WorkedExampleFamilies) {
  EXPECT_EQ(oracle::to_names(generate(fixtures::g1()).closed()),
            oracle::family({"", "a", "b", "ab", "abc"}));
  EXPECT_EQ(oracle::to_names(generate(fixtures::g2()).closed()),
            oracle::family({"", "a", "b", "d", "ab", "ad", "abc", "abd", "abcd"}));
  EXPECT_EQ(oracle::to_names(generate(fixtures::g3()).closed()),
            oracle::family({"", "a", "b", "d", "e", "ab", "ad", "ae", "abc", "abd", "abe", "abcd",
                            "abce", "abcde"}));
}

TEST(Generate, MatchesOracleOnRandomPresentations) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto chains = oracle::random_chains(rng, 7, 4);
    const ClosureSystem s = generate(oracle::presentation(chains));
    EXPECT_EQ(oracle::to_names(s.closed()), oracle::generate(chains));
    EXPECT_TRUE(s.contains_empty_and_top());
    EXPECT_TRUE(s.is_intersection_closed());
  }
}

TEST(Closure, ExamplesAndOracle) {
  const ClosureSystem g1 = generate(fixtures::g1());
  auto g = g1.ground();
  EXPECT_EQ(closure(g1, ESet::parse(g, "{a,b}")).str(), "{a,b}");
  EXPECT_EQ(closure(g1, ESet::parse(g, "{c}")).str(), "{a,b,c}");
  EXPECT_EQ(closure(g1, ESet::parse(g, "{}")).str(), "{}");

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto chains = oracle::random_chains(rng, 6, 3);
    const ClosureSystem s = generate(oracle::presentation(chains));
    const auto names = oracle::to_names(s.closed());
    const auto ground_names = oracle::letters(s.ground_size());
    const oracle::NSet ground(ground_names.begin(), ground_names.end());
    for (Mask m = 0; m <= s.ground()->full(); ++m) {
      oracle::NSet a;
      for (int i : members_of(m)) a.insert(s.ground()->name(i));
      oracle::NFamily got = oracle::to_names(SetFamily(s.ground(), {s.closure(m)}));
      EXPECT_EQ(*got.begin(), oracle::closure(names, ground, a));
    }
  }
}

TEST(Closure, NoClosedSupersetGivesGround) {
  const ClosureSystem s = fixtures::system_of("abc", oracle::family({"", "a"}));
  EXPECT_EQ(s.closure(0b010), 0b111u);
}

TEST(ClosureAxioms, ExhaustiveForSmallGround) {
  const auto r = check_closure_axioms(generate(fixtures::g3()));
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.subsets_checked, 32u);
  EXPECT_TRUE(r.ok());
}

TEST(ClosureAxioms, EmptyViolationDetected) {
  // alpha(empty) = {a} because the empty set is not closed.
  const ClosureSystem s = fixtures::system_of("ab", oracle::family({"a", "ab"}));
  const auto r = check_closure_axioms(s);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violation->axiom, "empty");
}

TEST(ClosureAxioms, SampledAboveSixteen) {
  std::vector<std::string> names;
  for (int i = 0; i < 20; ++i) names.push_back("e" + std::to_string(i));
  auto g = make_ground(names);
  std::vector<int> order(20);
  for (int i = 0; i < 20; ++i) order[i] = i;
  const ClosureSystem s = generate(MultiChainPresentation(g, {Chain(g, order)}));
  const auto r = check_closure_axioms(s, 99);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.subsets_checked, kClosureSampleCount);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(closure_axiom_subsets(20, 99), closure_axiom_subsets(20, 99));
  EXPECT_NE(closure_axiom_subsets(20, 99), closure_axiom_subsets(20, 100));
}

TEST(AntiExchange, PaperExamplesPass) {
  for (const auto& p : {fixtures::g1(), fixtures::g2(), fixtures::g3()}) {
    const ClosureSystem s = generate(p);
    EXPECT_FALSE(check_ae_operator(s));
    EXPECT_FALSE(check_ae_separation(s));
  }
}

TEST(AntiExchange, NegativeControls) {
  const ClosureSystem broken = fixtures::system_of("abc", oracle::family({"", "ab", "abc"}));
  const auto op = check_ae_operator(broken);
  ASSERT_TRUE(op);
  EXPECT_EQ(op->k, 0u);
  EXPECT_EQ(op->p, 0);
  EXPECT_EQ(op->q, 1);

  const ClosureSystem trivial = fixtures::system_of("ab", oracle::family({"", "ab"}));
  const auto sep = check_ae_separation(trivial);
  ASSERT_TRUE(sep);
  EXPECT_EQ(sep->a, 0u);
  EXPECT_TRUE(check_ae_operator(trivial));

  EXPECT_TRUE(check_ae_operator(fixtures::m3()));
}

TEST(AntiExchange, FormsAgreeOnEveryClosureSystemUpToFourElements) {
  int systems = 0;
  for (int n = 1; n <= 4; ++n) {
    auto g = make_ground(oracle::letters(n));
    const Mask full = g->full();
    const int inner = (1 << n) - 2;  // subsets other than empty and full
    std::vector<Mask> middle;
    for (Mask m = 1; m < full; ++m) middle.push_back(m);
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << inner); ++pick) {
      std::vector<Mask> sets{0, full};
      for (int i = 0; i < inner; ++i)
        if (pick >> i & 1) sets.push_back(middle[i]);
      const ClosureSystem s{SetFamily(g, sets)};
      if (!s.is_intersection_closed()) continue;
      ++systems;
      const bool op = !check_ae_operator(s);
      const bool sep = !check_ae_separation(s);
      ASSERT_EQ(op, sep) << s.closed().str();
      const auto names = oracle::to_names(s.closed());
      const auto gl = oracle::letters(n);
      ASSERT_EQ(op, oracle::anti_exchange(names, oracle::NSet(gl.begin(), gl.end())));
    }
  }
  EXPECT_GT(systems, 100);
}

TEST(AntiExchange, RandomPresentationsAreConvexGeometries) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const ClosureSystem s = generate(oracle::presentation(oracle::random_chains(rng, 7, 4)));
    EXPECT_FALSE(check_ae_operator(s));
    EXPECT_FALSE(check_ae_separation(s));
  }
}
