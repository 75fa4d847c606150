#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "affmb/rational.hpp"

namespace affmb {

// x -> a*x + b with a != 0.
class AffineMap {
 public:
  AffineMap(Rational a, Rational b);

  static AffineMap identity() { return AffineMap(Rational(1), Rational(0)); }

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  bool increasing() const { return a_.sign() > 0; }

  Rational operator()(const Rational& x) const { return a_ * x + b_; }

  // (this o inner)(x) = this(inner(x))
  AffineMap compose(const AffineMap& inner) const;
  AffineMap inverse() const;

  // a is a positive integer and b an integer: the copy rule of strict integer play.
  bool is_integer_copy_map() const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  Rational a_;
  Rational b_;
};

// Finite strictly increasing sequence of rationals. May be empty when used for
// holdings; targets are always non-empty.
class Pattern {
 public:
  Pattern() = default;
  // Throws ContractViolation unless strictly increasing.
  explicit Pattern(std::vector<Rational> ascending);
  Pattern(std::initializer_list<Rational> ascending)
      : Pattern(std::vector<Rational>(ascending)) {}

  // Sorts; duplicates are a DomainError.
  static Pattern from_unsorted(std::vector<Rational> values);
  // Comma-separated rationals, e.g. "0,2,3,6" or "-1/2,0,1".
  static Pattern parse(std::string_view text);

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const Rational& operator[](std::size_t i) const { return elements_[i]; }
  const Rational& front() const { return elements_.front(); }
  const Rational& back() const { return elements_.back(); }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }
  const std::vector<Rational>& elements() const noexcept { return elements_; }

  bool contains(const Rational& x) const;
  Pattern without(std::size_t index) const;
  Pattern with(const Rational& x) const;
  std::vector<Rational> differences() const;
  Pattern negated() const;

  std::string str() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern& a, const Pattern& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  std::vector<Rational> elements_;
};

enum class Orientation { increasing, decreasing, either };

// Rational copies allow a in Q+, integer copies require a in N\{0} and b in Z.
enum class CopyMode { rational, integer };

struct CopyWitness {
  Pattern subset;
  AffineMap map;  // map(s) == subset
};

// The map of the requested orientation taking source onto target, if any.
// Sizes must agree and be at least 1 (ContractViolation otherwise).
std::optional<AffineMap> find_affine_map(const Pattern& source, const Pattern& target,
                                         Orientation orientation);

Pattern apply_map(const AffineMap& f, const Pattern& p);

// All x not in partial such that partial + {x} is an increasing copy of s.
// Requires |partial| = |s| - 1 and |s| >= 2. Sorted, deduplicated.
std::vector<Rational> completions(const Pattern& partial, const Pattern& s);

// Lexicographically smallest subset of holdings that is a copy of s.
std::optional<CopyWitness> contains_copy(const Pattern& holdings, const Pattern& s,
                                         CopyMode mode);

// Visits every size-k subset of [0, n) in lexicographic order. Stops early
// when the visitor returns false.
template <typename Visitor>
void for_each_combination(std::size_t n, std::size_t k, Visitor&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(std::span<const std::size_t>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace affmb
