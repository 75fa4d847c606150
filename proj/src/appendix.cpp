#include "affmb/appendix.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "affmb/errors.hpp"

namespace affmb {

std::string_view to_string(PairCategory c) {
  switch (c) {
    case PairCategory::symmetry_relation: return "symmetry_relation";
    case PairCategory::remaining_relation: return "remaining_relation";
    case PairCategory::uniform_sign: return "uniform_sign";
    case PairCategory::mixed_no_root_found: return "mixed_no_root_found";
  }
  return "?";
}

namespace {

const MultiPoly X = MultiPoly::x();
const MultiPoly Z = MultiPoly::z();

std::string triple_str(const Triple& t) {
  return "(" + t[0].str() + "," + t[1].str() + "," + t[2].str() + ")";
}

std::vector<std::string> split_chain(const std::string& chain) {
  std::vector<std::string> out;
  std::istringstream in(chain);
  std::string tok;
  while (in >> tok) {
    if (tok != "<") out.push_back(tok);
  }
  return out;
}

bool chain_holds(const std::vector<std::string>& names, const Triple& t) {
  std::optional<Rational> prev;
  for (const auto& n : names) {
    Rational v = vertex_formula(n).eval(t[0], t[1], t[2]);
    if (prev && !(*prev < v)) return false;
    prev = std::move(v);
  }
  return true;
}

std::vector<ChainCheck> check_chains(const AppendixOptions& options) {
  struct Spec {
    const char* chain;
    bool required;
    const char* note;
  };
  static const Spec specs[] = {
      {"f010 < f01 < 0 < 1 < f00 < f0", true, ""},
      {"f01 < f011 < 1", true, ""},
      {"f110 < 0 < f11 < 1 < f111 < f1", true,
       "printed as f110 < f0 < f11 < ...; f0 > 1 > f11 always, read as f110 < 0 < f11"},
      {"0 < f10 < 1", true, ""},
      {"f110 < f0 < f11 < 1 < f111 < f1", false, "literal reading of the printed chain"},
  };

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> pick(1, 1000);
  std::vector<Triple> samples{{Rational(1), Rational(1), Rational(1)}};
  while (samples.size() < options.chain_samples) {
    Triple t;
    for (auto& v : t) v = Rational(pick(rng), pick(rng));
    samples.push_back(std::move(t));
  }

  std::vector<ChainCheck> out;
  for (const auto& spec : specs) {
    ChainCheck c;
    c.chain = spec.chain;
    c.required = spec.required;
    c.note = spec.note;
    const auto names = split_chain(c.chain);
    c.holds = true;
    for (const auto& t : samples) {
      ++c.samples;
      if (!chain_holds(names, t)) {
        c.holds = false;
        c.counterexample = t;
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

using NamePair = std::pair<std::string, std::string>;

NamePair unordered(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

const std::set<NamePair>& symmetry_pairs() {
  static const std::set<NamePair> s{unordered("f00", "f1"), unordered("f10", "f11"),
                                    unordered("0", "f011")};
  return s;
}

const std::set<NamePair>& remaining_pairs() {
  static const std::set<NamePair> s{unordered("f11", "f011"), unordered("f110", "f01"),
                                    unordered("f110", "f011")};
  return s;
}

std::optional<Triple> small_root(const MultiPoly& p, int bound) {
  std::vector<Rational> values;
  for (int a = 1; a <= bound; ++a) {
    for (int b = 1; b <= bound; ++b) values.emplace_back(a, b);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (const auto& x : values) {
    for (const auto& y : values) {
      for (const auto& z : values) {
        if (p.eval(x, y, z).is_zero()) return Triple{x, y, z};
      }
    }
  }
  return std::nullopt;
}

bool grid_sign_change(const MultiPoly& p, int grid) {
  mpz_class common = 1;
  for (const auto& [e, c] : p.terms()) common = lcm(common, c.denominator());
  struct Term {
    Exponent e;
    __int128 c;
  };
  std::vector<Term> terms;
  for (const auto& [e, c] : p.terms()) {
    const mpz_class v = (c * Rational(common)).numerator();
    if (!v.fits_slong_p()) throw ResourceError("coefficient too large for the grid check");
    terms.push_back({e, static_cast<__int128>(v.get_si())});
  }
  unsigned top = 0;
  for (const auto& t : terms) top = std::max({top, t.e[0], t.e[1], t.e[2]});
  std::vector<std::vector<__int128>> powers(grid + 1, std::vector<__int128>(top + 1, 1));
  for (int v = 1; v <= grid; ++v) {
    for (unsigned k = 1; k <= top; ++k) powers[v][k] = powers[v][k - 1] * v;
  }
  bool pos = false;
  bool neg = false;
  for (int x = 1; x <= grid; ++x) {
    for (int y = 1; y <= grid; ++y) {
      for (int z = 1; z <= grid; ++z) {
        __int128 acc = 0;
        for (const auto& t : terms) acc += t.c * powers[x][t.e[0]] * powers[y][t.e[1]] * powers[z][t.e[2]];
        if (acc >= 0) pos = pos || acc > 0;
        if (acc <= 0) neg = neg || acc < 0;
        if (acc == 0 || (pos && neg)) return true;
      }
    }
  }
  return false;
}

std::vector<PairAnalysis> analyse_pairs(const AppendixOptions& options,
                                        std::vector<std::string>& discrepancies) {
  std::vector<PairAnalysis> out;
  const auto& f = vertex_formulas();
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      PairAnalysis pa;
      pa.p = f[a].first;
      pa.q = f[b].first;
      pa.numerator = diff_numerator(pa.p, pa.q);
      pa.sign = uniform_sign(pa.numerator);
      const NamePair key = unordered(pa.p, pa.q);
      const bool symmetric = symmetry_pairs().count(key) > 0;
      const bool remaining = remaining_pairs().count(key) > 0;
      const std::string label = pa.p + " - " + pa.q;
      if (pa.sign != SignClass::mixed) {
        pa.category = PairCategory::uniform_sign;
        if (symmetric || remaining) {
          discrepancies.push_back(label + ": expected zeros on the positive orthant, but the numerator is sign-uniform");
        }
        out.push_back(std::move(pa));
        continue;
      }
      pa.positive_root = small_root(pa.numerator, options.search_bound);
      pa.grid_sign_change = grid_sign_change(pa.numerator, options.grid);
      const bool has_zero = pa.positive_root || pa.grid_sign_change;
      if (symmetric) {
        pa.category = PairCategory::symmetry_relation;
      } else if (remaining) {
        pa.category = PairCategory::remaining_relation;
      } else {
        pa.category = PairCategory::mixed_no_root_found;
        if (has_zero) discrepancies.push_back(label + ": has positive zeros but is not among g1, g2, g3");
      }
      if ((symmetric || remaining) && !has_zero) {
        discrepancies.push_back(label + ": no evidence of positive zeros");
      }
      out.push_back(std::move(pa));
    }
  }
  return out;
}

MultiPoly relation_or_override(int index, const AppendixOptions& options) {
  const auto it = options.relation_override.find(index);
  return it != options.relation_override.end() ? it->second : relation(index);
}

MultiPoly at_y_one(const MultiPoly& p) { return p.substitute(X, MultiPoly(1), Z); }

UniPoly in_z_at(const MultiPoly& p, const Rational& x0) {
  return UniPoly::from_multi(p.substitute(MultiPoly(x0), MultiPoly(1), Z), 2);
}

std::vector<Rational> positive(std::vector<Rational> roots) {
  std::erase_if(roots, [](const Rational& r) { return r.sign() <= 0; });
  return roots;
}

const MultiPoly& printed_h() {
  static const MultiPoly h = -(X.pow(3) * Z) - X.pow(2) * Z.pow(2) + X * Z.pow(2) + X.pow(2) +
                             MultiPoly(3) * X * Z + Z.pow(2) + MultiPoly(2) * X + MultiPoly(2) * Z +
                             MultiPoly(1);
  return h;
}

std::string case_name(int i, int j) {
  return "case (" + std::to_string(i) + "," + std::to_string(j) + ") [g" + std::to_string(i) +
         " = 0, phi(g" + std::to_string(j) + ") = 0]";
}

}  // namespace

const std::map<std::pair<int, int>, UniPoly>& table_rows() {
  static const std::map<std::pair<int, int>, UniPoly> rows{
      {{1, 1}, UniPoly({-1, -4, -6, -4, 0, 1})},
      {{1, 2}, UniPoly({-3, -5, -1, 1})},
      {{1, 3}, UniPoly({1, 5, 11, 10, -4, -12, -4, 1})},
      {{2, 3}, UniPoly({2, 11, 23, 19, -3, -15, -7, 1, 1})},
      {{3, 3}, UniPoly({2, 7, 2, -22, -34, -6, 23, 17, 3})},
  };
  return rows;
}

AppendixCase appendix_pair(int i, int j, const AppendixOptions& options) {
  if (i < 1 || j > 3 || i > j) throw DomainError("appendix pairs satisfy 1 <= i <= j <= 3");
  AppendixCase c;
  c.i = i;
  c.j = j;
  c.first = at_y_one(relation_or_override(i, options));
  c.second = at_y_one(phi(relation_or_override(j, options)));
  if (i == 1 && j == 2) c.expected.push_back({Rational(3), Rational(1), Rational(2)});

  c.eliminant = resultant_z(c.first, c.second);
  if (c.eliminant.is_zero()) {
    // A shared factor; only the symmetric case i = j has a shortcut.
    if (i != j) {
      c.notes.push_back("eliminant vanishes identically");
      c.pass = false;
      return c;
    }
    c.shortcut_used = true;
    const MultiPoly& h = c.first;
    if (i == 2) c.notes.push_back(h == printed_h() ? "numerator matches the printed h" : "numerator differs from the printed h");
    const MultiPoly identity = X * Z * (MultiPoly(1) + X + Z) * (X - Z);
    c.shortcut_identity_holds = phi(h) - h == identity;
    if (!c.shortcut_identity_holds) {
      c.notes.push_back("phi(h) - h is not xz(1+x+z)(x-z)");
      c.pass = false;
      return c;
    }
    // x, z > 0 and x = z on the common zero set.
    c.shortcut_polynomial = UniPoly::from_multi(h.substitute(X, MultiPoly(1), X), 0);
    for (const auto& r : positive(rational_roots(*c.shortcut_polynomial))) {
      c.positive_x.push_back(r);
      c.solutions.push_back({r, Rational(1), r});
    }
    if (c.shortcut_polynomial->eval(Rational(1, 2)).is_zero()) c.notes.push_back("1/2 is a root");
  } else {
    c.positive_x = positive(rational_roots(c.eliminant));
    for (const auto& x0 : c.positive_x) {
      const UniPoly common = gcd(in_z_at(c.first, x0), in_z_at(c.second, x0));
      if (common.is_zero()) {
        c.notes.push_back("both equations vanish identically at x = " + x0.str());
        continue;
      }
      if (common.degree() == 0) continue;
      for (const auto& z0 : positive(rational_roots(common))) c.solutions.push_back({x0, Rational(1), z0});
    }
  }

  bool ok = c.solutions == c.expected;
  if (!ok) {
    std::string got;
    for (const auto& t : c.solutions) got += (got.empty() ? "" : " ") + triple_str(t);
    c.notes.push_back("positive rational solutions {" + got + "} differ from the expected set");
  }
  if (const auto it = table_rows().find({i, j}); it != table_rows().end()) {
    TableRowCheck row;
    row.i = i;
    row.j = j;
    row.row = it->second;
    row.positive_rational_roots = positive(rational_roots(row.row));
    row.divides_eliminant = !c.eliminant.is_zero() && divide(c.eliminant, row.row).remainder.is_zero();
    std::vector<Rational> expected_x;
    for (const auto& t : c.expected) expected_x.push_back(t[0]);
    if (!row.divides_eliminant) {
      c.notes.push_back("table row " + row.row.str() + " does not divide the eliminant");
      ok = false;
    }
    if (row.positive_rational_roots != expected_x) {
      c.notes.push_back("table row " + row.row.str() + " has unexpected positive rational roots");
      ok = false;
    }
    c.table_row = std::move(row);
  }
  c.pass = ok;
  return c;
}

AppendixReport verify_appendix(const AppendixOptions& options) {
  AppendixReport r;
  r.chains = check_chains(options);
  for (const auto& c : r.chains) {
    if (c.required && !c.holds) {
      r.discrepancies.push_back("chain " + c.chain + " fails at " + triple_str(*c.counterexample));
    }
  }
  r.pairs = analyse_pairs(options, r.discrepancies);
  for (int i = 1; i <= 3; ++i) {
    for (int j = i; j <= 3; ++j) {
      AppendixCase c = appendix_pair(i, j, options);
      if (!c.pass) {
        std::string why;
        for (const auto& n : c.notes) why += "; " + n;
        r.discrepancies.push_back(case_name(i, j) + why);
      }
      if (c.table_row) r.table_rows.push_back(*c.table_row);
      r.cases.push_back(std::move(c));
    }
  }
  r.pass = r.discrepancies.empty();
  return r;
}

std::vector<std::pair<std::string, std::string>> vanishing_relations(const Rational& x,
                                                                      const Rational& y,
                                                                      const Rational& z) {
  if (x.sign() <= 0 || y.sign() <= 0 || z.sign() <= 0) {
    throw DomainError("vanishing_relations expects positive x, y, z");
  }
  const auto& f = vertex_formulas();
  std::vector<Rational> values;
  for (const auto& [name, fn] : f) values.push_back(fn.eval(x, y, z));
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      if (values[a] == values[b]) out.emplace_back(f[a].first, f[b].first);
    }
  }
  return out;
}

}  // namespace affmb
