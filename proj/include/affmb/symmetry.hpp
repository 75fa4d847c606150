#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "affmb/pattern.hpp"

namespace affmb {

// 1-based positions (i, j), i < j: s without s_i is a copy of s without s_j.
struct SymmetryType {
  std::size_t i;
  std::size_t j;
  friend auto operator<=>(const SymmetryType&, const SymmetryType&) = default;
};

enum class SymmetryKind { non_symmetric, arithmetic, geometric_1n, geometric_2n, geometric_1n1 };

std::string_view to_string(SymmetryKind kind);
SymmetryKind symmetry_kind_from_string(std::string_view name);

struct Classification {
  SymmetryKind kind = SymmetryKind::non_symmetric;
  std::optional<Rational> k;  // > 1 for the geometric kinds
  // geometric_1n: witness(C1(n,k)) == s; geometric_2n: witness(C2(n,k)) == s;
  // geometric_1n1: witness(C2(n,k)) == reflect(s);
  // arithmetic: witness({0, 1, ..., n-1}) == s.
  std::optional<AffineMap> witness;

  bool symmetric() const { return kind != SymmetryKind::non_symmetric; }
};

enum class CanonicalForm { c1, c2 };

// Requires |s| >= 3.
std::vector<SymmetryType> symmetry_types(const Pattern& s);

// Requires |s| >= 3. For n = 3 the preference is arithmetic, then geometric_1n.
Classification classify(const Pattern& s);

// C1(n,k) = {1, k, ..., k^(n-1)}, C2(n,k) = {0, 1, k, ..., k^(n-2)}. k > 1.
Pattern canonical_pattern(CanonicalForm form, std::size_t n, const Rational& k);

Pattern reflect(const Pattern& s);

}  // namespace affmb
