#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affmb/rational.hpp"

namespace affmb {

// Exponents of x, y, z.
using Exponent = std::array<unsigned, 3>;

// Graded lexicographic, largest first.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// Polynomial in x, y, z over Q. Zero coefficients are never stored.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Rational, GrlexGreater>;

  MultiPoly() = default;
  MultiPoly(Rational c);  // NOLINT: constants convert implicitly
  MultiPoly(int c) : MultiPoly(Rational(c)) {}
  static MultiPoly term(Rational c, Exponent e);
  static MultiPoly x();
  static MultiPoly y();
  static MultiPoly z();

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  Rational coefficient(const Exponent& e) const;

  Rational eval(const Rational& x, const Rational& y, const Rational& z) const;
  // Replaces x, y, z by the given polynomials.
  MultiPoly substitute(const MultiPoly& x, const MultiPoly& y, const MultiPoly& z) const;
  MultiPoly pow(unsigned e) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  std::string str() const;

 private:
  void add_term(const Exponent& e, const Rational& c);
  Terms terms_;
};

// Swaps x and z.
MultiPoly phi(const MultiPoly& p);

// f / g when g divides f exactly, else nullopt. g must be nonzero.
std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g);

// Polynomial in one variable; coefficients ascending, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> ascending);
  UniPoly(Rational c);  // NOLINT
  UniPoly(int c) : UniPoly(Rational(c)) {}
  static UniPoly monomial(Rational c, unsigned e);

  // Reads a polynomial in the single variable var (0 = x, 1 = y, 2 = z).
  static UniPoly from_multi(const MultiPoly& p, std::size_t var);

  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const;
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational eval(const Rational& x) const;
  UniPoly monic() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly operator-() const;
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::string str(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct UniDivision {
  UniPoly quotient;
  UniPoly remainder;
};
UniDivision divide(const UniPoly& f, const UniPoly& g);
UniPoly gcd(UniPoly a, UniPoly b);  // monic, or zero when both are zero
UniPoly pow(const UniPoly& p, unsigned e);

enum class SignClass { all_positive, all_negative, mixed };
std::string_view to_string(SignClass s);

// Coefficient sign pattern. Uniform signs rule out zeros on the open positive orthant.
SignClass uniform_sign(const MultiPoly& p);

// All rational roots, ascending, each checked by exact evaluation.
std::vector<Rational> rational_roots(const UniPoly& p);

// Resultant in z of two polynomials in x and z, as a polynomial in x.
UniPoly resultant_z(const MultiPoly& p, const MultiPoly& q);

struct RationalFunction {
  MultiPoly num;
  MultiPoly den;
  Rational eval(const Rational& x, const Rational& y, const Rational& z) const;
};

// The twelve tree vertices of the generic size-4 strategy as functions of
// S = {0, x, x+y, x+y+z}, in the order 0, 1, f0, f1, f00, f01, f10, f11,
// f010, f011, f110, f111.
const std::vector<std::pair<std::string, RationalFunction>>& vertex_formulas();
const RationalFunction& vertex_formula(std::string_view name);

// Numerator of p - q over the product of the denominators, with common
// factors among x, y, z, x+y, y+z cancelled. Denominators are positive on
// the open positive orthant, so the sign of p - q is the sign of this.
MultiPoly diff_numerator(std::string_view p, std::string_view q);

// Numerators of g1 = f11 - f011, g2 = f110 - f01, g3 = f110 - f011.
MultiPoly relation(int index);

}  // namespace affmb
