#include <doctest.h>

#include <algorithm>
#include <random>

#include "affmb/appendix.hpp"
#include "affmb/errors.hpp"
#include "affmb/polycalc.hpp"
#include "affmb/symmetry.hpp"
#include "support.hpp"

using namespace affmb;
using affmb::testing::P;
using affmb::testing::R;

namespace {

const MultiPoly X = MultiPoly::x();
const MultiPoly Y = MultiPoly::y();
const MultiPoly Z = MultiPoly::z();

MultiPoly h_poly() {
  return -X.pow(3) * Z - X.pow(2) * Z.pow(2) + X * Z.pow(2) + X.pow(2) + 3 * X * Z + Z.pow(2) + 2 * X + 2 * Z + 1;
}

MultiPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> e(0, 3);
  MultiPoly p;
  for (int i = 0; i < 5; ++i)
    p += MultiPoly::term(affmb::testing::random_rational(rng, -9, 9, 3), {e(rng), e(rng), e(rng)});
  return p;
}

UniPoly U(std::initializer_list<int> ascending) {
  std::vector<Rational> c;
  for (int v : ascending) c.emplace_back(v);
  return UniPoly(c);
}

bool has_positive(const std::vector<Rational>& roots) {
  return std::any_of(roots.begin(), roots.end(), [](const Rational& r) { return r.sign() > 0; });
}

}  // namespace

TEST_CASE("multivariate arithmetic") {
  CHECK((X + Y) * (X - Y) == X.pow(2) - Y.pow(2));
  CHECK(((X + Y) * (X - Y)).str() == "x^2 - y^2");
  CHECK((X - X).is_zero());
  CHECK(h_poly().eval(1, 0, 1) == Rational(9));
  CHECK(h_poly().total_degree() == 4);
  CHECK(h_poly().degree_in(2) == 2);
  CHECK((X * Y).substitute(Z, X + 1, Y) == Z * X + Z);
  const auto q = exact_divide(X.pow(2) - Y.pow(2), X - Y);
  REQUIRE(q);
  CHECK(*q == X + Y);
  CHECK_FALSE(exact_divide(X.pow(2) + 1, X - 1));
}

TEST_CASE("phi") {
  CHECK(phi(X.pow(2) * Z) == X * Z.pow(2));
  CHECK(phi(h_poly()) - h_poly() == X * Z * (1 + X + Z) * (X - Z));
  CHECK(phi(relation(2)).eval(3, 1, 2) == Rational(0));
  CHECK(relation(1).eval(3, 1, 2) == Rational(0));

  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const MultiPoly p = random_poly(rng);
    const MultiPoly q = random_poly(rng);
    CHECK(phi(phi(p)) == p);
    CHECK(phi(p * q) == phi(p) * phi(q));
    CHECK(phi(p + q) == phi(p) + phi(q));
  }
}

TEST_CASE("vertex formulas") {
  CHECK(vertex_formulas().size() == 12);
  CHECK(vertex_formulas().front().first == "0");
  CHECK(vertex_formulas().back().first == "f111");
  const RationalFunction& f01 = vertex_formula("f01");
  CHECK(f01.num == -X * Y - Y.pow(2) - Y * Z);
  CHECK(f01.den == X * Z);
  CHECK(vertex_formula("f11").eval(3, 1, 2) == R("1/2"));
  CHECK(vertex_formula("f011").eval(3, 1, 2) == R("1/2"));
  CHECK(vertex_formula("f0").eval(1, 1, 1) == Rational(3));

  CHECK(diff_numerator("f0", "f00") == Z);
  CHECK(uniform_sign(diff_numerator("f0", "f00")) == SignClass::all_positive);
  CHECK(diff_numerator("f11", "f011") == relation(1));
  CHECK(diff_numerator("f110", "f01") == relation(2));
  CHECK(uniform_sign(relation(1)) == SignClass::mixed);

  // A difference numerator has the sign of the difference on the positive orthant.
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Rational x = affmb::testing::random_positive(rng), y = affmb::testing::random_positive(rng),
                   z = affmb::testing::random_positive(rng);
    const Rational d = vertex_formula("f110").eval(x, y, z) - vertex_formula("f01").eval(x, y, z);
    CHECK(d.sign() == relation(2).eval(x, y, z).sign());
  }
}

TEST_CASE("uniform_sign") {
  CHECK(uniform_sign(X.pow(2) + 3 * X * Y + 2) == SignClass::all_positive);
  CHECK(uniform_sign(-X - 1) == SignClass::all_negative);
  CHECK_THROWS_AS(uniform_sign(MultiPoly()), DomainError);

  std::mt19937_64 rng(23);
  for (const auto& [p, fp] : vertex_formulas())
    for (const auto& [q, fq] : vertex_formulas()) {
      if (p >= q) continue;
      const MultiPoly n = diff_numerator(p, q);
      if (uniform_sign(n) != SignClass::all_positive) continue;
      for (int i = 0; i < 20; ++i)
        CHECK(n.eval(affmb::testing::random_positive(rng), affmb::testing::random_positive(rng),
                     affmb::testing::random_positive(rng))
                  .sign() > 0);
    }
}

TEST_CASE("univariate polynomials") {
  const UniPoly f = U({1, -3, 2});
  CHECK(f.degree() == 2);
  CHECK(f.str() == "2*x^2 - 3*x + 1");
  CHECK(rational_roots(f) == std::vector<Rational>{R("1/2"), Rational(1)});
  CHECK_FALSE(has_positive(rational_roots(U({-1, -4, -6, -4, 0, 1}))));
  const UniPoly p22 = U({1, 4, 5, 1, -2});
  CHECK_FALSE(has_positive(rational_roots(p22)));
  CHECK(p22.eval(R("1/2")) != Rational(0));
  CHECK(rational_roots(U({0, 0, -3, 1})) == std::vector<Rational>{Rational(0), Rational(3)});
  CHECK_THROWS_AS(rational_roots(UniPoly()), DomainError);

  const auto d = divide(U({-1, 0, 1}), U({1, 1}));
  CHECK(d.quotient == U({-1, 1}));
  CHECK(d.remainder.is_zero());
  CHECK(gcd(U({-1, 0, 1}), U({1, 2, 1})) == U({1, 1}));
  CHECK(pow(U({1, 1}), 3) == U({1, 3, 3, 1}));

  // Every integer-lattice candidate that evaluates to zero is reported.
  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    const Rational a = affmb::testing::random_rational(rng, -6, 6, 4);
    const Rational b = affmb::testing::random_rational(rng, -6, 6, 4);
    const UniPoly p = UniPoly({-a, 1}) * UniPoly({-b, 1}) * U({1, 0, 1});
    const auto roots = rational_roots(p);
    CHECK(std::find(roots.begin(), roots.end(), a) != roots.end());
    CHECK(std::find(roots.begin(), roots.end(), b) != roots.end());
    for (const Rational& r : roots) CHECK(p.eval(r).is_zero());
  }
}

TEST_CASE("resultants") {
  const UniPoly r = resultant_z(Z - X, Z - X.pow(2));
  CHECK((r == U({0, -1, 1}) || r == U({0, 1, -1})));
  CHECK(resultant_z(Z.pow(2) + X, Z.pow(2) + X).is_zero());
  CHECK(resultant_z(X + 1, Z.pow(2) - X) == U({1, 2, 1}));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Rational c = affmb::testing::random_rational(rng, -5, 5, 3);
    const MultiPoly shared = Z - X - MultiPoly(c);
    const MultiPoly p = shared * (Z + X * X + 2);
    const MultiPoly q = (Z - 2 * X + 1) * (Z * Z - 3);
    const UniPoly pq = resultant_z(p, q);
    const UniPoly qp = resultant_z(q, p);
    CHECK((pq == qp || pq == -qp));
    CHECK(resultant_z(p, shared * (Z + 5)).is_zero());
    // The shared-root curve z = x + c meets z = 2x - 1 at x = c + 1.
    CHECK(pq.eval(c + 1).is_zero());
  }
}

TEST_CASE("appendix cases") {
  const AppendixCase c12 = appendix_pair(1, 2);
  CHECK(c12.pass);
  CHECK(c12.positive_x == std::vector<Rational>{Rational(3)});
  REQUIRE(c12.solutions.size() == 1);
  CHECK(c12.solutions[0] == Triple{Rational(3), Rational(1), Rational(2)});
  REQUIRE(c12.table_row);
  CHECK(c12.table_row->divides_eliminant);

  const AppendixCase c22 = appendix_pair(2, 2);
  CHECK(c22.pass);
  CHECK(c22.shortcut_used);
  CHECK(c22.shortcut_identity_holds);
  REQUIRE(c22.shortcut_polynomial);
  CHECK(*c22.shortcut_polynomial == U({1, 4, 5, 1, -2}));
  CHECK(c22.solutions.empty());

  const AppendixCase c33 = appendix_pair(3, 3);
  CHECK(c33.pass);
  CHECK(c33.solutions.empty());
  REQUIRE(c33.table_row);
  CHECK(c33.table_row->divides_eliminant);
  CHECK(c33.table_row->positive_rational_roots.empty());

  const UniPoly row13 = table_rows().at({1, 3});
  CHECK(row13 == U({1, 5, 11, 10, -4, -12, -4, 1}));
  CHECK_FALSE(has_positive(rational_roots(row13)));
}

TEST_CASE("verify_appendix and its mutation check") {
  AppendixOptions opts;
  opts.chain_samples = 500;
  const AppendixReport ok = verify_appendix(opts);
  CHECK(ok.pass);
  CHECK(ok.discrepancies.empty());
  CHECK(ok.pairs.size() == 66);

  opts.relation_override[1] = relation(1) + 1;
  const AppendixReport bad = verify_appendix(opts);
  CHECK_FALSE(bad.pass);
  REQUIRE_FALSE(bad.discrepancies.empty());
  CHECK(std::any_of(bad.discrepancies.begin(), bad.discrepancies.end(),
                    [](const std::string& d) { return d.find("g1") != std::string::npos; }));
}

TEST_CASE("degeneracies match symmetric sets") {
  // f00 = f1 at S = {0, x, kx, k^2 x}: a geometric set of type (2,n).
  for (int k = 2; k <= 5; ++k) {
    const Rational x = 1, y = Rational(k - 1), z = Rational(k * k - k);
    CHECK(diff_numerator("f00", "f1").eval(x, y, z).is_zero());
    CHECK(classify(P(("0,1," + std::to_string(k) + "," + std::to_string(k * k)).c_str())).kind ==
          SymmetryKind::geometric_2n);
  }
  const auto v = vanishing_relations(3, 1, 2);
  CHECK(std::find(v.begin(), v.end(), std::pair<std::string, std::string>{"f11", "f011"}) != v.end());
}
