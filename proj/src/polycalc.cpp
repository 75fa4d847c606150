#include "affmb/polycalc.hpp"

#include <algorithm>
#include <sstream>

#include "affmb/errors.hpp"

namespace affmb {

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  const unsigned da = a[0] + a[1] + a[2];
  const unsigned db = b[0] + b[1] + b[2];
  if (da != db) return da > db;
  return a > b;
}

MultiPoly::MultiPoly(Rational c) {
  if (!c.is_zero()) terms_.emplace(Exponent{0, 0, 0}, std::move(c));
}

MultiPoly MultiPoly::term(Rational c, Exponent e) {
  MultiPoly p;
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::x() { return term(1, {1, 0, 0}); }
MultiPoly MultiPoly::y() { return term(1, {0, 1, 0}); }
MultiPoly MultiPoly::z() { return term(1, {0, 0, 1}); }

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

unsigned MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first[0] + terms_.begin()->first[1] + terms_.begin()->first[2];
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

Rational MultiPoly::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::eval(const Rational& x, const Rational& y, const Rational& z) const {
  Rational total;
  for (const auto& [e, c] : terms_) total += c * x.pow(e[0]) * y.pow(e[1]) * z.pow(e[2]);
  return total;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  for (; e; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::substitute(const MultiPoly& x, const MultiPoly& y, const MultiPoly& z) const {
  MultiPoly out;
  for (const auto& [e, c] : terms_) out += MultiPoly(c) * x.pow(e[0]) * y.pow(e[1]) * z.pow(e[2]);
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool constant = e[0] + e[1] + e[2] == 0;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (constant || mag != Rational(1)) {
      os << mag.str();
      need_star = true;
    }
    static constexpr char names[] = {'x', 'y', 'z'};
    for (std::size_t v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (need_star) os << '*';
      os << names[v];
      if (e[v] > 1) os << '^' << e[v];
      need_star = true;
    }
  }
  return os.str();
}

MultiPoly phi(const MultiPoly& p) {
  MultiPoly out;
  for (const auto& [e, c] : p.terms()) out += MultiPoly::term(c, {e[2], e[1], e[0]});
  return out;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw ContractViolation("exact_divide by the zero polynomial");
  const auto& [lg, lc] = *g.terms().begin();
  MultiPoly rest = f;
  MultiPoly quotient;
  while (!rest.is_zero()) {
    const auto [lr, rc] = *rest.terms().begin();
    if (lr[0] < lg[0] || lr[1] < lg[1] || lr[2] < lg[2]) return std::nullopt;
    const MultiPoly t = MultiPoly::term(rc / lc, {lr[0] - lg[0], lr[1] - lg[1], lr[2] - lg[2]});
    quotient += t;
    rest -= t * g;
  }
  return quotient;
}

// ---- UniPoly

UniPoly::UniPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

UniPoly::UniPoly(Rational c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

UniPoly UniPoly::monomial(Rational c, unsigned e) {
  std::vector<Rational> v(e + 1);
  v[e] = std::move(c);
  return UniPoly(std::move(v));
}

UniPoly UniPoly::from_multi(const MultiPoly& p, std::size_t var) {
  UniPoly out;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t v = 0; v < 3; ++v) {
      if (v != var && e[v] != 0) {
        throw ContractViolation("polynomial " + p.str() + " is not univariate");
      }
    }
    out += monomial(c, e[var]);
  }
  return out;
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rational& UniPoly::leading() const {
  if (c_.empty()) throw ContractViolation("leading coefficient of the zero polynomial");
  return c_.back();
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  UniPoly out = *this;
  const Rational l = leading();
  for (auto& c : out.c_) c /= l;
  return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(out));
}

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

std::string UniPoly::str(char var) const {
  if (c_.empty()) return "0";
  MultiPoly m;
  const std::size_t slot = var == 'y' ? 1 : var == 'z' ? 2 : 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Exponent e{0, 0, 0};
    e[slot] = static_cast<unsigned>(i);
    m += MultiPoly::term(c_[i], e);
  }
  return m.str();
}

UniDivision divide(const UniPoly& f, const UniPoly& g) {
  if (g.is_zero()) throw DomainError("polynomial division by zero");
  UniDivision out{UniPoly(), f};
  while (!out.remainder.is_zero() && out.remainder.degree() >= g.degree()) {
    const UniPoly t = UniPoly::monomial(out.remainder.leading() / g.leading(),
                                        static_cast<unsigned>(out.remainder.degree() - g.degree()));
    out.quotient += t;
    out.remainder -= t * g;
  }
  return out;
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly pow(const UniPoly& p, unsigned e) {
  UniPoly out(1);
  for (unsigned i = 0; i < e; ++i) out = out * p;
  return out;
}

std::string_view to_string(SignClass s) {
  switch (s) {
    case SignClass::all_positive: return "all_positive";
    case SignClass::all_negative: return "all_negative";
    case SignClass::mixed: return "mixed";
  }
  return "?";
}

SignClass uniform_sign(const MultiPoly& p) {
  if (p.is_zero()) throw DomainError("sign pattern of the zero polynomial");
  bool pos = false;
  bool neg = false;
  for (const auto& [e, c] : p.terms()) (c.sign() > 0 ? pos : neg) = true;
  if (pos && neg) return SignClass::mixed;
  return pos ? SignClass::all_positive : SignClass::all_negative;
}

namespace {

// Positive divisors of |n| (n != 0).
std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> primes;
  for (mpz_class p = 2; p * p <= n; ++p) {
    if (p > 10000000) {
      if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
        throw ResourceError("constant term too large to enumerate its divisors");
      }
      break;
    }
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) primes.emplace_back(p, k);
  }
  if (n > 1) primes.emplace_back(n, 1);
  std::vector<mpz_class> out{1};
  for (const auto& [p, k] : primes) {
    const std::size_t base = out.size();
    mpz_class pk = 1;
    for (unsigned i = 1; i <= k; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("roots of the zero polynomial");
  mpz_class common = 1;
  for (const auto& c : p.coefficients()) common = lcm(common, c.denominator());
  std::vector<mpz_class> ints;
  for (const auto& c : p.coefficients()) ints.push_back((c * Rational(common)).numerator());

  std::vector<Rational> roots;
  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (low + 1 < ints.size()) {
    const auto num = divisors(ints[low]);
    const auto den = divisors(ints.back());
    for (const auto& a : num) {
      for (const auto& b : den) {
        for (int sgn : {1, -1}) {
          const Rational cand(mpz_class(sgn * a), b);
          if (p.eval(cand).is_zero()) roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

namespace {

// Coefficients in z, each a polynomial in x.
std::vector<UniPoly> coefficients_in_z(const MultiPoly& p) {
  std::vector<UniPoly> out(p.degree_in(2) + 1);
  for (const auto& [e, c] : p.terms()) {
    if (e[1] != 0) throw ContractViolation("resultant_z expects polynomials in x and z only");
    out[e[2]] += UniPoly::monomial(c, e[0]);
  }
  return out;
}

UniPoly exact_quotient(const UniPoly& f, const UniPoly& g) {
  auto d = divide(f, g);
  if (!d.remainder.is_zero()) throw InternalInconsistency("Bareiss step left a remainder");
  return d.quotient;
}

// Fraction-free determinant over Q[x].
UniPoly bareiss(std::vector<std::vector<UniPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return UniPoly(1);
  UniPoly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = exact_quotient(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      }
      m[i][k] = UniPoly();
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace

UniPoly resultant_z(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() || q.is_zero()) throw ContractViolation("resultant of the zero polynomial");
  const auto a = coefficients_in_z(p);
  const auto b = coefficients_in_z(q);
  const std::size_t m = a.size() - 1;
  const std::size_t n = b.size() - 1;
  if (m == 0) return pow(a[0], static_cast<unsigned>(n));
  if (n == 0) return pow(b[0], static_cast<unsigned>(m));
  const std::size_t size = m + n;
  std::vector<std::vector<UniPoly>> sylvester(size, std::vector<UniPoly>(size));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) sylvester[r][r + i] = a[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i <= n; ++i) sylvester[n + r][r + i] = b[n - i];
  }
  return bareiss(std::move(sylvester));
}

// ---- vertex formulas

Rational RationalFunction::eval(const Rational& x, const Rational& y, const Rational& z) const {
  return num.eval(x, y, z) / den.eval(x, y, z);
}

const std::vector<std::pair<std::string, RationalFunction>>& vertex_formulas() {
  static const std::vector<std::pair<std::string, RationalFunction>> table = [] {
    const MultiPoly x = MultiPoly::x();
    const MultiPoly y = MultiPoly::y();
    const MultiPoly z = MultiPoly::z();
    const MultiPoly d = x * y + y * y + x * z + y * z;
    return std::vector<std::pair<std::string, RationalFunction>>{
        {"0", {MultiPoly(0), MultiPoly(1)}},
        {"1", {MultiPoly(1), MultiPoly(1)}},
        {"f0", {x + y + z, x}},
        {"f1", {x + y + z, x + y}},
        {"f00", {x + y, x}},
        {"f01", {-(x * y) - y * y - y * z, x * z}},
        {"f10", {x, x + y}},
        {"f11", {y * z + x * y + y * y, d}},
        {"f010", {-(x * x) - MultiPoly(2) * x * y - y * y - y * z - x * z, x * z}},
        {"f011", {-(y * y) + x * z - y * z, x * z}},
        {"f110", {-(x * x) - x * y - x * z, d}},
        {"f111", {MultiPoly(2) * y * z + x * y + y * y + x * z, d}},
    };
  }();
  return table;
}

const RationalFunction& vertex_formula(std::string_view name) {
  for (const auto& [n, f] : vertex_formulas()) {
    if (n == name) return f;
  }
  throw DomainError("unknown vertex " + std::string(name));
}

MultiPoly diff_numerator(std::string_view p, std::string_view q) {
  if (p == q) throw ContractViolation("diff_numerator needs two distinct vertices");
  const auto& fp = vertex_formula(p);
  const auto& fq = vertex_formula(q);
  MultiPoly num = fp.num * fq.den - fq.num * fp.den;
  MultiPoly den = fp.den * fq.den;
  const MultiPoly x = MultiPoly::x();
  const MultiPoly y = MultiPoly::y();
  const MultiPoly z = MultiPoly::z();
  for (const MultiPoly& factor : {x, y, z, x + y, y + z}) {
    while (!num.is_zero()) {
      auto n = exact_divide(num, factor);
      auto d = exact_divide(den, factor);
      if (!n || !d) break;
      num = std::move(*n);
      den = std::move(*d);
    }
  }
  return num;
}

MultiPoly relation(int index) {
  switch (index) {
    case 1: return diff_numerator("f11", "f011");
    case 2: return diff_numerator("f110", "f01");
    case 3: return diff_numerator("f110", "f011");
    default: throw DomainError("relations are numbered 1..3");
  }
}

}  // namespace affmb
