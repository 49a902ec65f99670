#include "g2/liealg.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

namespace g2 {
namespace {

RForm rf(const char* text, int dim = 7) { return parse_form<Rational>(text, dim); }

const LieAlgebra& row1() {
  static const LieAlgebra a = parse_salamon("(0,0,e^{12},e^{13},e^{23},e^{15}+e^{24},e^{16}+e^{34})", "row1");
  return a;
}

std::vector<LieAlgebra> constructed_algebras() {
  std::vector<LieAlgebra> out;
  for (const auto& name : builtin_algebra_names()) out.push_back(builtin_algebra(name));
  out.push_back(parse_salamon("(0,0,e^{12})"));
  out.push_back(parse_salamon("(0,e^{12})"));
  out.push_back(parse_salamon("(0,0,0,0,e^{12},e^{13},e^{14}+e^{23})"));
  return out;
}

TEST(Salamon, ParsesTableRows) {
  const LieAlgebra& a = row1();
  EXPECT_EQ(a.dim(), 7);
  EXPECT_EQ(a.dcoframe()[5], rf("e^{15}+e^{24}"));
  EXPECT_TRUE(is_nilpotent(a));
  const LieAlgebra ab = parse_salamon("(0,0,0,0,0,0,0)");
  EXPECT_TRUE(ab.is_abelian());
  EXPECT_EQ(parse_salamon(to_salamon(a)).dcoframe(), a.dcoframe());
}

TEST(Salamon, Errors) {
  try {
    parse_salamon("(0,e^{11})");
    FAIL() << "repeated index accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_THROW(parse_salamon("0,0,e^{12}"), ParseError);
  EXPECT_THROW(parse_salamon("(0,0,e^{12}"), ParseError);
  EXPECT_THROW(parse_salamon("(0,0,e^{14})"), ParseError);
  EXPECT_THROW(parse_salamon("(0,0,e^{123})"), ParseError);
  EXPECT_THROW(parse_salamon("(0,0,0,0,0,0,0,0)"), ParseError);
}

TEST(Salamon, JacobiFailureNamesTheIndex) {
  try {
    parse_salamon("(0,0,e^{12},e^{13},e^{14}+e^{23},e^{34},e^{15})");
    FAIL() << "Jacobi violation accepted";
  } catch (const JacobiError& e) {
    EXPECT_EQ(e.index(), 6);
  }
  EXPECT_NO_THROW(parse_salamon_unchecked("(0,0,e^{12},e^{13},e^{14}+e^{23},e^{34},e^{15})"));
}

TEST(CeD, Examples) {
  EXPECT_EQ(ce_d(row1(), rf("e^3")), rf("e^{12}"));
  EXPECT_EQ(ce_d(row1(), rf("e^{34}")), rf("e^{124}"));
  const LieAlgebra ab = builtin_algebra("abelian7");
  std::mt19937_64 rng = test::make_rng(5);
  for (int k = 0; k <= 7; ++k) EXPECT_TRUE(ce_d(ab, test::random_rform(rng, 7, k)).is_zero());
  EXPECT_THROW(ce_d(row1(), rf("e^1", 6)), DimensionError);
}

TEST(Bracket, Examples) {
  const RVector e1 = RVector::unit(7, 1), e2 = RVector::unit(7, 2);
  RVector minus_e3(7);
  minus_e3[2] = -1;
  EXPECT_EQ(bracket(row1(), e1, e2), minus_e3);
  std::mt19937_64 rng = test::make_rng(6);
  const RVector x = test::random_rvector(rng, 7);
  EXPECT_TRUE(bracket(row1(), x, x).is_zero());
  const LieAlgebra ab = builtin_algebra("abelian7");
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j) EXPECT_TRUE(bracket(ab, RVector::unit(7, i), RVector::unit(7, j)).is_zero());
}

TEST(DMatrix, Examples) {
  const LieAlgebra ab = builtin_algebra("abelian7");
  for (int k = 0; k <= 7; ++k) EXPECT_TRUE(d_matrix(ab, k).is_zero());
  const RMatrix d1 = d_matrix(row1(), 1);
  EXPECT_EQ(d1.rows(), 21);
  EXPECT_EQ(d1.cols(), 7);
  EXPECT_EQ(rank(d1), 5);
  for (int r = 0; r < 21; ++r) {
    EXPECT_EQ(d1(r, 0), 0);
    EXPECT_EQ(d1(r, 1), 0);
  }
  const RMatrix d7 = d_matrix(row1(), 7);
  EXPECT_EQ(d7.rows(), 0);
  EXPECT_EQ(d7.cols(), 1);
  EXPECT_THROW(d_matrix(row1(), 8), DimensionError);
}

TEST(Betti, TableRows) {
  const int expected[] = {3, 3, 5, 6};
  const char* names[] = {"row1", "row2", "row3", "row4"};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(betti(builtin_algebra(names[i]))[2], expected[i]) << names[i];
  EXPECT_EQ(betti(row1())[1], 2);
  const BettiVector ab = betti(builtin_algebra("abelian7"));
  for (int k = 0; k <= 7; ++k) EXPECT_EQ(ab[k], binomial(7, k));
}

TEST(Betti, Json) {
  nlohmann::json j = betti(builtin_algebra("row4"));
  EXPECT_EQ(j.dump(), R"({"betti":[1,3,6,8,8,6,3,1]})");
}

TEST(Unimodular, Examples) {
  for (const char* name : {"row1", "row2", "row3", "row4", "abelian7"}) EXPECT_TRUE(is_unimodular(builtin_algebra(name))) << name;
  EXPECT_FALSE(is_unimodular(parse_salamon("(0,e^{12})")));
  EXPECT_FALSE(is_nilpotent(parse_salamon("(0,e^{12})")));
}

TEST(LoadAlgebras, NamedAndBareLines) {
  std::istringstream in("# survey\nfirst: (0,0,e^{12})\n\n(0,0,0)\n");
  const auto list = load_algebras(in);
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0].name, "first");
  EXPECT_EQ(list[1].name, "line4");
  EXPECT_TRUE(list[1].algebra.is_abelian());
  std::istringstream bad("x: (0,e^{11})\n");
  EXPECT_THROW(load_algebras(bad), ParseError);
  EXPECT_THROW(builtin_algebra("row9"), std::invalid_argument);
}

// --- properties -------------------------------------------------------------

TEST(LieProperties, DSquaredIsZeroOnEveryBlade) {
  for (const auto& a : constructed_algebras())
    for (int k = 0; k <= a.dim(); ++k)
      for (Blade b : basis_enumerate(a.dim(), k))
        ASSERT_TRUE(ce_d(a, ce_d(a, RForm::basis(a.dim(), b))).is_zero()) << to_salamon(a) << " blade degree " << k;
}

TEST(LieProperties, DIsAnAntiderivation) {
  std::mt19937_64 rng = test::make_rng(11);
  const LieAlgebra a = builtin_algebra("row4");
  for (int trial = 0; trial < 200; ++trial) {
    const int p = test::uniform_int(rng, 0, 3);
    const RForm x = test::random_rform(rng, 7, p), y = test::random_rform(rng, 7, test::uniform_int(rng, 0, 3));
    RForm rhs = wedge(ce_d(a, x), y);
    const RForm second = wedge(x, ce_d(a, y));
    rhs += p % 2 ? -second : second;
    ASSERT_EQ(ce_d(a, wedge(x, y)), rhs);
  }
}

TEST(LieProperties, CartanFormulaOnOneForms) {
  for (const auto& a : constructed_algebras()) {
    const int n = a.dim();
    for (int k = 1; k <= n; ++k) {
      const RForm alpha = RForm::basis(n, Blade::single(k));
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          const RVector x = RVector::unit(n, i), y = RVector::unit(n, j);
          EXPECT_EQ(evaluate2(ce_d(a, alpha), x, y), -bracket(a, x, y)[k - 1]);
        }
    }
  }
}

TEST(LieProperties, BracketSatisfiesJacobi) {
  std::mt19937_64 rng = test::make_rng(12);
  for (const char* name : {"row1", "row2", "row3", "row4"}) {
    const LieAlgebra a = builtin_algebra(name);
    for (int trial = 0; trial < 20; ++trial) {
      const RVector x = test::random_rvector(rng, 7), y = test::random_rvector(rng, 7), z = test::random_rvector(rng, 7);
      RVector sum(7);
      const RVector t1 = bracket(a, x, bracket(a, y, z)), t2 = bracket(a, y, bracket(a, z, x)), t3 = bracket(a, z, bracket(a, x, y));
      for (int i = 0; i < 7; ++i) sum[i] = t1[i] + t2[i] + t3[i];
      EXPECT_TRUE(sum.is_zero());
      const RVector xy = bracket(a, x, y), yx = bracket(a, y, x);
      for (int i = 0; i < 7; ++i) EXPECT_EQ(xy[i], -yx[i]);
    }
  }
}

TEST(LieProperties, PoincareDualityAndEuler) {
  for (const char* name : {"row1", "row2", "row3", "row4", "abelian7"}) {
    const BettiVector b = betti(builtin_algebra(name));
    for (int k = 0; k <= 7; ++k) EXPECT_EQ(b[k], b[7 - k]) << name;
    EXPECT_EQ(b.euler_characteristic(), 0) << name;
  }
}

// Relabelling the coframe by a permutation gives an isomorphic algebra.
TEST(LieProperties, BettiInvariantUnderRelabelling) {
  std::mt19937_64 rng = test::make_rng(13);
  for (const char* name : {"row1", "row2", "row3", "row4"}) {
    const LieAlgebra a = builtin_algebra(name);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> perm(7);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      // e^i -> e^{perm(i)}; new de^{perm(k)} = substituted de^k.
      std::vector<Rational> m(49, Rational(0));
      for (int i = 0; i < 7; ++i) m[static_cast<std::size_t>(i * 7 + perm[static_cast<std::size_t>(i)])] = 1;
      std::vector<RForm> dco(7);
      for (int k = 0; k < 7; ++k) dco[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = substitute(a.dcoframe()[static_cast<std::size_t>(k)], m);
      const LieAlgebra b = LieAlgebra::from_differentials(dco);
      EXPECT_EQ(betti(b), betti(a)) << name;
    }
  }
}

}  // namespace
}  // namespace g2
