#include "affmb/pattern.hpp"

#include <algorithm>
#include <sstream>

#include "affmb/errors.hpp"

namespace affmb {

AffineMap::AffineMap(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.is_zero()) throw ContractViolation("affine map with zero slope");
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  return AffineMap(a_ * inner.a_, a_ * inner.b_ + b_);
}

AffineMap AffineMap::inverse() const {
  const Rational inv = a_.reciprocal();
  return AffineMap(inv, -(b_ * inv));
}

bool AffineMap::is_integer_copy_map() const {
  return a_.is_integer() && a_.sign() > 0 && b_.is_integer();
}

Pattern::Pattern(std::vector<Rational> ascending) : elements_(std::move(ascending)) {
  for (std::size_t i = 1; i < elements_.size(); ++i) {
    if (!(elements_[i - 1] < elements_[i])) {
      throw ContractViolation("pattern elements must be strictly increasing");
    }
  }
}

Pattern Pattern::from_unsorted(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw DomainError("duplicate element in set");
  }
  return Pattern(std::move(values));
}

Pattern Pattern::parse(std::string_view text) {
  std::vector<Rational> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    values.push_back(Rational::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_unsorted(std::move(values));
}

bool Pattern::contains(const Rational& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

Pattern Pattern::without(std::size_t index) const {
  std::vector<Rational> out;
  out.reserve(elements_.size() - 1);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i != index) out.push_back(elements_[i]);
  }
  return Pattern(std::move(out));
}

Pattern Pattern::with(const Rational& x) const {
  if (contains(x)) throw ContractViolation("pattern already contains " + x.str());
  std::vector<Rational> out = elements_;
  out.insert(std::upper_bound(out.begin(), out.end(), x), x);
  return Pattern(std::move(out));
}

std::vector<Rational> Pattern::differences() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < elements_.size(); ++i) d.push_back(elements_[i] - elements_[i - 1]);
  return d;
}

Pattern Pattern::negated() const {
  std::vector<Rational> out;
  out.reserve(elements_.size());
  for (auto it = elements_.rbegin(); it != elements_.rend(); ++it) out.push_back(-*it);
  return Pattern(std::move(out));
}

std::string Pattern::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) os << ',';
    os << elements_[i];
  }
  return os.str();
}

namespace {

std::optional<AffineMap> increasing_map(const Pattern& source, const Pattern& target) {
  const std::size_t n = source.size();
  if (n == 1) return AffineMap(Rational(1), target[0] - source[0]);
  const Rational a = (target[n - 1] - target[0]) / (source[n - 1] - source[0]);
  const Rational b = target[0] - a * source[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (a * source[i] + b != target[i]) return std::nullopt;
  }
  return AffineMap(a, b);
}

std::optional<AffineMap> decreasing_map(const Pattern& source, const Pattern& target) {
  const std::size_t n = source.size();
  if (n == 1) return AffineMap(Rational(-1), target[0] + source[0]);
  const Rational a = (target[0] - target[n - 1]) / (source[n - 1] - source[0]);
  const Rational b = target[n - 1] - a * source[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (a * source[i] + b != target[n - 1 - i]) return std::nullopt;
  }
  return AffineMap(a, b);
}

}  // namespace

std::optional<AffineMap> find_affine_map(const Pattern& source, const Pattern& target,
                                         Orientation orientation) {
  if (source.size() != target.size()) {
    throw ContractViolation("find_affine_map: size mismatch (" + std::to_string(source.size()) +
                            " vs " + std::to_string(target.size()) + ")");
  }
  if (source.empty()) throw ContractViolation("find_affine_map: empty patterns");
  switch (orientation) {
    case Orientation::increasing:
      return increasing_map(source, target);
    case Orientation::decreasing:
      return decreasing_map(source, target);
    case Orientation::either:
      if (auto f = increasing_map(source, target)) return f;
      return decreasing_map(source, target);
  }
  return std::nullopt;
}

Pattern apply_map(const AffineMap& f, const Pattern& p) {
  std::vector<Rational> out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(f(x));
  if (!f.increasing()) std::reverse(out.begin(), out.end());
  return Pattern(std::move(out));
}

std::vector<Rational> completions(const Pattern& partial, const Pattern& s) {
  if (s.size() < 2) throw ContractViolation("completions: target needs at least 2 elements");
  if (partial.size() + 1 != s.size()) {
    throw ContractViolation("completions: partial must have exactly |s| - 1 elements");
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto g = find_affine_map(s.without(i), partial, Orientation::increasing);
    if (!g) continue;
    Rational x = (*g)(s[i]);
    if (!partial.contains(x)) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<CopyWitness> contains_copy(const Pattern& holdings, const Pattern& s,
                                         CopyMode mode) {
  const std::size_t n = s.size();
  const std::size_t h = holdings.size();
  if (n == 0 || h < n) return std::nullopt;
  const bool integer = mode == CopyMode::integer;

  if (n == 1) {
    for (const auto& x : holdings) {
      AffineMap f(Rational(1), x - s[0]);
      if (!integer || f.is_integer_copy_map()) return CopyWitness{Pattern{x}, f};
    }
    return std::nullopt;
  }

  // The first two points of a witness fix the map, and iterating them in
  // ascending order visits witnesses in lexicographic order.
  const Rational span = s[1] - s[0];
  for (std::size_t i = 0; i + n <= h; ++i) {
    for (std::size_t j = i + 1; j + (n - 2) < h; ++j) {
      const Rational a = (holdings[j] - holdings[i]) / span;
      const Rational b = holdings[i] - a * s[0];
      if (integer && !(a.is_integer() && b.is_integer())) continue;
      std::vector<Rational> subset{holdings[i], holdings[j]};
      bool ok = true;
      for (std::size_t k = 2; k < n; ++k) {
        Rational y = a * s[k] + b;
        if (!holdings.contains(y)) {
          ok = false;
          break;
        }
        subset.push_back(std::move(y));
      }
      if (ok) return CopyWitness{Pattern(std::move(subset)), AffineMap(a, b)};
    }
  }
  return std::nullopt;
}

}  // namespace affmb
