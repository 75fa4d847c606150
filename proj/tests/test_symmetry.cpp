#include <doctest.h>

#include "affmb/errors.hpp"
#include "affmb/symmetry.hpp"
#include "support.hpp"

using namespace affmb;
using affmb::testing::P;
using affmb::testing::R;

namespace {

std::vector<SymmetryType> types(const char* s) { return symmetry_types(P(s)); }

}  // namespace

TEST_CASE("symmetry_types") {
  CHECK(types("1,2,3,5") == std::vector<SymmetryType>{{2, 4}});
  CHECK(types("1,2,3,4") == std::vector<SymmetryType>{{1, 4}});
  CHECK(types("0,1,5") == std::vector<SymmetryType>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(types("0,2,3,6").empty());
  CHECK_THROWS_AS(types("1,2"), ContractViolation);
}

TEST_CASE("classify") {
  auto c = classify(P("1,2,4,8"));
  CHECK(c.kind == SymmetryKind::geometric_1n);
  CHECK(c.k == Rational(2));

  c = classify(P("1,2,3,5"));
  CHECK(c.kind == SymmetryKind::geometric_2n);
  CHECK(c.k == Rational(2));
  REQUIRE(c.witness);
  CHECK(*c.witness == AffineMap(1, 1));
  CHECK(apply_map(*c.witness, canonical_pattern(CanonicalForm::c2, 4, 2)) == P("1,2,3,5"));

  CHECK(classify(P("0,1,2,5")).kind == SymmetryKind::non_symmetric);
  CHECK(classify(P("5,8,11,14")).kind == SymmetryKind::arithmetic);

  c = classify(P("0,3,4,5"));  // -{0,1,2,5} + 5
  CHECK(c.kind == SymmetryKind::non_symmetric);

  c = classify(P("0,2,3,4"));  // reflect = {-4,-3,-2,0}, a copy of C2(4,2) = {0,1,2,4}
  CHECK(c.kind == SymmetryKind::geometric_1n1);
  CHECK(c.k == Rational(2));
  REQUIRE(c.witness);
  CHECK(apply_map(*c.witness, canonical_pattern(CanonicalForm::c2, 4, 2)) == reflect(P("0,2,3,4")));

  CHECK_THROWS_AS(classify(P("1,2")), ContractViolation);
}

TEST_CASE("n = 3 prefers arithmetic, then geometric") {
  CHECK(classify(P("1,2,3")).kind == SymmetryKind::arithmetic);
  auto c = classify(P("0,1,5"));
  CHECK(c.kind == SymmetryKind::geometric_1n);
  CHECK(c.k == Rational(4));
  c = classify(P("0,4,5"));
  CHECK(c.kind == SymmetryKind::geometric_1n);
  CHECK(c.k == Rational(4));
  REQUIRE(c.witness);
  CHECK(apply_map(*c.witness, canonical_pattern(CanonicalForm::c1, 3, 4)) == P("0,4,5"));
}

TEST_CASE("canonical_pattern and reflect") {
  CHECK(canonical_pattern(CanonicalForm::c1, 4, 2) == P("1,2,4,8"));
  CHECK(canonical_pattern(CanonicalForm::c2, 4, 3) == P("0,1,3,9"));
  CHECK(canonical_pattern(CanonicalForm::c1, 5, R("3/2")) == P("1,3/2,9/4,27/8,81/16"));
  CHECK_THROWS_AS(canonical_pattern(CanonicalForm::c1, 4, 1), DomainError);
  CHECK_THROWS_AS(canonical_pattern(CanonicalForm::c2, 4, R("1/2")), DomainError);

  CHECK(reflect(P("0,2,3,6")) == P("-6,-3,-2,0"));
  CHECK(reflect(P("1")) == P("-1"));
  CHECK(find_affine_map(P("0,2,3,6"), reflect(P("0,3,4,6")), Orientation::increasing));
}

TEST_CASE("symmetry laws on random and constructed patterns") {
  std::mt19937_64 rng(3);
  const auto check_laws = [](const Pattern& s) {
    const std::size_t n = s.size();
    const auto t = symmetry_types(s);
    CHECK(t.size() <= 1);
    for (const auto& ty : t) {
      const bool allowed = (ty.i == 1 && ty.j == n) || (ty.i == 2 && ty.j == n) || (ty.i == 1 && ty.j == n - 1);
      CHECK(allowed);
    }
    CHECK((classify(s).kind == SymmetryKind::non_symmetric) == t.empty());
  };
  for (int iter = 0; iter < 400; ++iter) {
    const std::size_t n = 4 + iter % 5;
    check_laws(affmb::testing::random_pattern(rng, n));
    const Rational k = Rational(1) + affmb::testing::random_positive(rng, 5, 3);
    const AffineMap f = affmb::testing::random_increasing_map(rng);
    check_laws(apply_map(f, canonical_pattern(CanonicalForm::c1, n, k)));
    check_laws(apply_map(f, canonical_pattern(CanonicalForm::c2, n, k)));
    check_laws(reflect(apply_map(f, canonical_pattern(CanonicalForm::c2, n, k))));
  }
  for (int iter = 0; iter < 100; ++iter) {
    CHECK(symmetry_types(affmb::testing::random_pattern(rng, 3)).size() == 3);
  }
}

TEST_CASE("canonical round-trips") {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 4 + iter % 4;
    const Rational k = Rational(1) + affmb::testing::random_positive(rng, 5, 4);
    const AffineMap f = affmb::testing::random_increasing_map(rng);

    const Pattern s1 = apply_map(f, canonical_pattern(CanonicalForm::c1, n, k));
    auto c = classify(s1);
    CHECK(c.kind == SymmetryKind::geometric_1n);
    CHECK(c.k == k);
    REQUIRE(c.witness);
    CHECK(apply_map(*c.witness, canonical_pattern(CanonicalForm::c1, n, k)) == s1);

    // The decreasing image of C1 is again a C1 copy with the same k.
    const Pattern s1r = reflect(s1);
    c = classify(s1r);
    CHECK(c.kind == SymmetryKind::geometric_1n);
    CHECK(c.k == k);
    CHECK(apply_map(*c.witness, canonical_pattern(CanonicalForm::c1, n, k)) == s1r);

    const Pattern s2 = apply_map(f, canonical_pattern(CanonicalForm::c2, n, k));
    c = classify(s2);
    CHECK(c.kind == SymmetryKind::geometric_2n);
    CHECK(c.k == k);
    CHECK(apply_map(*c.witness, canonical_pattern(CanonicalForm::c2, n, k)) == s2);

    const Pattern s3 = reflect(s2);
    c = classify(s3);
    CHECK(c.kind == SymmetryKind::geometric_1n1);
    CHECK(c.k == k);
    CHECK(apply_map(*c.witness, canonical_pattern(CanonicalForm::c2, n, k)) == reflect(s3));

    if (n >= 5) {
      for (const Pattern& s : {s1, s2}) {
        const auto k0 = classify(s).k;
        for (const Pattern& sub : {s.without(0), s.without(n - 1)}) {
          const auto cs = classify(sub);
          CHECK(cs.symmetric());
          CHECK(cs.k == k0);
        }
      }
    }
  }
}

TEST_CASE("arithmetic witness maps 0..n-1 onto s") {
  const auto c = classify(P("5,8,11,14"));
  REQUIRE(c.witness);
  CHECK(*c.witness == AffineMap(3, 5));
  CHECK_FALSE(c.k);
}
