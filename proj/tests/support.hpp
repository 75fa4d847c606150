#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "affmb/pattern.hpp"
#include "affmb/rational.hpp"

namespace affmb::testing {

inline Rational R(const char* text) { return Rational::parse(text); }
inline Pattern P(const char* text) { return Pattern::parse(text); }

// Nonzero-free rational with numerator in [lo, hi] and denominator in [1, den].
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> n(lo, hi);
  std::uniform_int_distribution<long> d(1, den);
  return Rational(mpz_class(n(rng)), mpz_class(d(rng)));
}

inline Rational random_positive(std::mt19937_64& rng, long hi = 20, long den = 6) {
  return random_rational(rng, 1, hi, den);
}

// Distinct sorted rationals; retries until the size is reached.
inline Pattern random_pattern(std::mt19937_64& rng, std::size_t n, long hi = 40, long den = 4) {
  std::vector<Rational> v;
  while (v.size() < n) {
    Rational x = random_rational(rng, -hi, hi, den);
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(std::move(x));
  }
  return Pattern::from_unsorted(std::move(v));
}

inline Pattern random_naturals(std::mt19937_64& rng, std::size_t n, long hi = 30) {
  std::vector<Rational> v;
  std::uniform_int_distribution<long> d(0, hi);
  while (v.size() < n) {
    Rational x(d(rng));
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(std::move(x));
  }
  return Pattern::from_unsorted(std::move(v));
}

inline AffineMap random_increasing_map(std::mt19937_64& rng) {
  return AffineMap(random_positive(rng, 12, 5), random_rational(rng, -20, 20, 5));
}

}  // namespace affmb::testing
