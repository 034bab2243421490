#include <gtest/gtest.h>

#include "revpeb/formula.hpp"
#include "revpeb/polynomial.hpp"

using namespace revpeb;

namespace {

template <Field F>
Polynomial<F> poly(const F& f, std::initializer_list<std::pair<long long, std::vector<VertexIndex>>> terms) {
  Polynomial<F> p(f);
  for (const auto& [c, vars] : terms) p.add_term(Monomial(vars), f.from_int(c));
  return p;
}

}  // namespace

TEST(FieldSpec, Parse) {
  EXPECT_EQ(FieldSpec::parse("2"), FieldSpec::prime_field(2));
  EXPECT_EQ(FieldSpec::parse("F5"), FieldSpec::prime_field(5));
  EXPECT_EQ(FieldSpec::parse("GF(7)"), FieldSpec::prime_field(7));
  EXPECT_EQ(FieldSpec::parse("Q"), FieldSpec::rationals());
  EXPECT_EQ(FieldSpec::parse("rationals"), FieldSpec::rationals());
  EXPECT_EQ(FieldSpec::prime_field(3).name(), "F3");
  EXPECT_THROW(FieldSpec::parse("reals"), Error);
  EXPECT_THROW(FieldSpec::parse("F5x"), Error);
}

TEST(PrimeField, Arithmetic) {
  PrimeField f(5);
  EXPECT_EQ(f.add(3, 4), 2u);
  EXPECT_EQ(f.sub(1, 3), 3u);
  EXPECT_EQ(f.mul(4, 4), 1u);
  EXPECT_EQ(f.neg(0), 0u);
  EXPECT_EQ(f.from_int(-1), 4u);
  for (std::uint64_t a = 1; a < 5; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.parse("7"), 2u);
  EXPECT_EQ(f.parse("-1"), 4u);
  EXPECT_EQ(f.parse("1/2"), 3u);
  EXPECT_THROW(f.parse("1/5"), Error);
  EXPECT_THROW(f.parse("x"), Error);
  EXPECT_THROW(PrimeField(4), Error);
  PrimeField big(2305843009213693951ULL);
  EXPECT_EQ(big.mul(big.from_int(-1), big.from_int(-1)), 1u);
}

TEST(RationalField, Arithmetic) {
  RationalField q;
  EXPECT_EQ(q.parse("2/4"), mpq_class(1, 2));
  EXPECT_EQ(q.parse("-3"), -3);
  EXPECT_EQ(q.format(q.parse("6/-4")), "-3/2");
  EXPECT_THROW(q.parse("1/0"), Error);
  EXPECT_EQ(q.inv(mpq_class(2, 3)), mpq_class(3, 2));
}

TEST(Monomial, Products) {
  Monomial a({2, 0}), b({0, 1});
  EXPECT_EQ(a.vars(), (std::vector<VertexIndex>{0, 2}));
  EXPECT_EQ(a.times(b).vars(), (std::vector<VertexIndex>{0, 0, 1, 2}));
  EXPECT_EQ(a.multilinear_times(b).vars(), (std::vector<VertexIndex>{0, 1, 2}));
  EXPECT_FALSE(a.times(b).is_square_free());
  EXPECT_EQ(a.times(b).multilinearized(), a.multilinear_times(b));
}

TEST(Polynomial, MultilinearProductExamples) {
  PrimeField f(3);
  auto xa = Polynomial<PrimeField>::variable(f, 0);
  EXPECT_EQ(multilinear_product(xa, xa), xa);
  auto one_minus = poly(f, {{1, {}}, {-1, {0}}});
  EXPECT_TRUE(multilinear_product(one_minus, xa).is_zero());

  // ((1 - x_u) x_p x_q) * x_v with p, q, u, v = 0, 1, 2, 3
  auto au = poly(f, {{1, {0, 1}}, {-1, {0, 1, 2}}});
  auto expected = poly(f, {{1, {0, 1, 3}}, {-1, {0, 1, 2, 3}}});
  EXPECT_EQ(multilinear_product(au, Polynomial<PrimeField>::variable(f, 3)), expected);
}

TEST(Polynomial, OrdinaryProductKeepsExponents) {
  RationalField q;
  auto x = Polynomial<RationalField>::variable(q, 0);
  auto sq = product(x, x);
  EXPECT_EQ(sq.degree(), 2u);
  EXPECT_FALSE(sq.is_multilinear());
  EXPECT_EQ(multilinearize(sq), x);
}

TEST(Polynomial, ZeroCoefficientsArePruned) {
  PrimeField f(2);
  Polynomial<PrimeField> p(f);
  p.add_term(Monomial({1}), 1);
  p.add_term(Monomial({1}), 1);
  EXPECT_TRUE(p.is_zero());
  p.add_term(Monomial(), 0);
  EXPECT_EQ(p.size(), 0u);
}

TEST(Polynomial, FieldMismatch) {
  auto a = Polynomial<PrimeField>::one(PrimeField(3));
  auto b = Polynomial<PrimeField>::one(PrimeField(5));
  try {
    a += b;
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
  }
  EXPECT_THROW(multilinear_product(a, b), Error);
}

TEST(Polynomial, Rendering) {
  Dag g = pyramid(1);
  RationalField q;
  auto p = poly(q, {{1, {0, 1}}, {-1, {0, 1, 2}}});
  EXPECT_EQ(to_string(p, g), "x_v0_1*x_v0_2 - x_v0_1*x_v0_2*x_v1_1");
  EXPECT_EQ(to_string(Polynomial<RationalField>(q), g), "0");
}

TEST(Formula, SingleVertex) {
  Dag g = line(1);
  auto f = pebbling_formula(g, PrimeField(2));
  EXPECT_EQ(f.vertex_axioms().size(), 1u);
  EXPECT_EQ(f.vertex_axioms()[0], poly(PrimeField(2), {{1, {}}, {-1, {0}}}));
  EXPECT_EQ(f.sink_axiom(), Polynomial<PrimeField>::variable(PrimeField(2), 0));
}

TEST(Formula, PyramidAxiomsAndClauses) {
  Dag g = pyramid(2);
  RationalField q;
  auto f = pebbling_formula(g, q);
  ASSERT_EQ(f.vertex_axioms().size(), 6u);
  for (const auto& a : f.vertex_axioms()) EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(f.sink_axiom().size(), 1u);
  // A_u = x_p x_q (1 - x_u)
  EXPECT_EQ(f.vertex_axioms()[3], poly(q, {{1, {0, 1}}, {-1, {0, 1, 3}}}));
  std::vector<Clause> expected{{1}, {2}, {3}, {-1, -2, 4}, {-2, -3, 5}, {-4, -5, 6}, {-6}};
  EXPECT_EQ(f.clauses(), expected);
}

TEST(Formula, ClauseAndPolynomialViewsAgree) {
  // A clause (not p1 or ... or not pk or v) is falsified exactly where its
  // polynomial evaluates to 1 on 0/1 points.
  for (const Dag& g : {pyramid(2), bit_reversal(4)}) {
    PrimeField f(2);
    auto formula = pebbling_formula(g, f);
    for (std::uint32_t mask = 0; mask < (1u << g.size()); ++mask) {
      auto eval = [&](const Polynomial<PrimeField>& p) {
        std::uint64_t s = 0;
        for (const auto& [m, c] : p.terms()) {
          bool on = true;
          for (VertexIndex v : m.vars()) on = on && ((mask >> v) & 1);
          if (on) s = f.add(s, c);
        }
        return s;
      };
      for (VertexIndex v = 0; v < g.size(); ++v) {
        bool satisfied = false;
        for (int lit : formula.clauses()[v]) {
          const bool val = (mask >> (std::abs(lit) - 1)) & 1;
          satisfied = satisfied || (lit > 0 ? val : !val);
        }
        EXPECT_EQ(eval(formula.vertex_axioms()[v]), satisfied ? 0u : 1u);
      }
      const bool sink_true = (mask >> g.sink()) & 1;
      EXPECT_EQ(eval(formula.sink_axiom()), sink_true ? 1u : 0u);
    }
  }
}

TEST(Formula, Dimacs) {
  EXPECT_EQ(to_dimacs(pyramid(2)), "p cnf 6 7\n1 0\n2 0\n3 0\n-1 -2 4 0\n-2 -3 5 0\n-4 -5 6 0\n-6 0\n");
  EXPECT_THROW(to_dimacs(carlson_savage(2, 1)), Error);
}

TEST(Formula, AxiomNames) {
  Dag g = line(2);
  EXPECT_EQ(axiom_name(AxiomId::of_vertex(1), g), "vertex:v2");
  EXPECT_EQ(axiom_name(AxiomId::sink(), g), "sink");
  EXPECT_EQ(parse_axiom("vertex:v1", g), AxiomId::of_vertex(0));
  EXPECT_EQ(parse_axiom("sink", g), AxiomId::sink());
  EXPECT_THROW(parse_axiom("vertex:zz", g), Error);
  EXPECT_THROW(parse_axiom("v1", g), Error);
  EXPECT_LT(AxiomId::of_vertex(5), AxiomId::sink());
}
