#include "affmb/symmetry.hpp"

#include <algorithm>

#include "affmb/errors.hpp"

namespace affmb {

std::string_view to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::non_symmetric: return "non_symmetric";
    case SymmetryKind::arithmetic: return "arithmetic";
    case SymmetryKind::geometric_1n: return "geometric_1n";
    case SymmetryKind::geometric_2n: return "geometric_2n";
    case SymmetryKind::geometric_1n1: return "geometric_1n1";
  }
  return "unknown";
}

SymmetryKind symmetry_kind_from_string(std::string_view name) {
  for (auto k : {SymmetryKind::non_symmetric, SymmetryKind::arithmetic, SymmetryKind::geometric_1n,
                 SymmetryKind::geometric_2n, SymmetryKind::geometric_1n1}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown symmetry kind: " + std::string(name));
}

std::vector<SymmetryType> symmetry_types(const Pattern& s) {
  if (s.size() < 3) throw ContractViolation("symmetry_types requires at least 3 elements");
  std::vector<SymmetryType> out;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (find_affine_map(s.without(j), s.without(i), Orientation::increasing)) {
        out.push_back({i + 1, j + 1});
      }
    }
  }
  return out;
}

Pattern canonical_pattern(CanonicalForm form, std::size_t n, const Rational& k) {
  if (!(k > Rational(1))) throw DomainError("canonical pattern needs k > 1, got " + k.str());
  if (n < 2) throw DomainError("canonical pattern needs n >= 2");
  std::vector<Rational> out;
  if (form == CanonicalForm::c1) {
    Rational p(1);
    for (std::size_t i = 0; i < n; ++i, p *= k) out.push_back(p);
  } else {
    out.push_back(Rational(0));
    Rational p(1);
    for (std::size_t i = 0; i + 1 < n; ++i, p *= k) out.push_back(p);
  }
  return Pattern(std::move(out));
}

Pattern reflect(const Pattern& s) { return s.negated(); }

namespace {

// k for a set whose consecutive differences grow by a constant ratio.
std::optional<Rational> geometric_ratio(const std::vector<Rational>& d) {
  if (d.size() < 2) return std::nullopt;
  const Rational k = d[1] / d[0];
  for (std::size_t i = 2; i < d.size(); ++i) {
    if (d[i] != d[i - 1] * k) return std::nullopt;
  }
  return k;
}

// The orientation of the witness records whether s reads the canonical form backwards.
AffineMap verified_witness(CanonicalForm form, std::size_t n, const Rational& k,
                           const Pattern& target) {
  const Pattern canon = canonical_pattern(form, n, k);
  auto f = find_affine_map(canon, target, Orientation::either);
  if (!f || apply_map(*f, canon) != target) {
    throw InternalInconsistency("canonical form does not reproduce " + target.str());
  }
  return *f;
}

// k > 1 such that C2(n,k) is a copy of s, assuming s has type (2,n).
Rational c2_ratio(const Pattern& s) {
  const auto d = s.differences();
  // C2 differences: 1, k-1, k(k-1), ... so d2/d1 = k-1 and later ratios are k.
  Rational k = d[1] / d[0] + Rational(1);
  if (d.size() >= 3) k = d[2] / d[1];
  return k;
}

Classification classify_type_1n(const Pattern& s) {
  const std::size_t n = s.size();
  const auto k = geometric_ratio(s.differences());
  if (!k) throw InternalInconsistency("(1,n) symmetric set without a constant ratio: " + s.str());
  if (*k == Rational(1)) {
    const Rational d = s[1] - s[0];
    return {SymmetryKind::arithmetic, std::nullopt, AffineMap(d, s[0])};
  }
  // A ratio below 1 describes the same set read from the other end.
  const Rational kk = *k > Rational(1) ? *k : k->reciprocal();
  return {SymmetryKind::geometric_1n, kk, verified_witness(CanonicalForm::c1, n, kk, s)};
}

Classification classify_type_2n(const Pattern& s, SymmetryKind kind, const Pattern& original) {
  const Rational k = c2_ratio(s);
  if (!(k > Rational(1))) {
    throw InternalInconsistency("(2,n) symmetric set with ratio <= 1: " + original.str());
  }
  return {kind, k, verified_witness(CanonicalForm::c2, s.size(), k, s)};
}

}  // namespace

Classification classify(const Pattern& s) {
  if (s.size() < 3) throw ContractViolation("classify requires at least 3 elements");
  const std::size_t n = s.size();

  if (n == 3) {
    // Every 3-set carries every type; arithmetic first, then (1,n).
    return classify_type_1n(s);
  }

  const auto types = symmetry_types(s);
  if (types.empty()) return {SymmetryKind::non_symmetric, std::nullopt, std::nullopt};
  if (types.size() > 1) {
    throw InternalInconsistency("set with several symmetry types: " + s.str());
  }
  const SymmetryType t = types.front();
  if (t.i == 1 && t.j == n) return classify_type_1n(s);
  if (t.i == 2 && t.j == n) return classify_type_2n(s, SymmetryKind::geometric_2n, s);
  if (t.i == 1 && t.j == n - 1) {
    return classify_type_2n(reflect(s), SymmetryKind::geometric_1n1, s);
  }
  throw InternalInconsistency("impossible symmetry type for " + s.str());
}

}  // namespace affmb
