#include "affmb/strategy.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "affmb/errors.hpp"

namespace affmb {

StrategyTree::StrategyTree(std::vector<Rational> labels,
                           std::vector<std::vector<std::size_t>> children, std::size_t root)
    : labels_(std::move(labels)), children_(std::move(children)), root_(root) {
  const std::size_t n = labels_.size();
  if (n == 0) throw ContractViolation("strategy tree needs at least one vertex");
  if (children_.size() != n) throw ContractViolation("children list does not match vertex count");
  if (root_ >= n) throw ContractViolation("root index out of range");
  parent_.assign(n, std::nullopt);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t c : children_[v]) {
      if (c >= n) throw ContractViolation("child index out of range");
      if (c == root_ || parent_[c]) throw ContractViolation("vertex with two parents or cycle");
      parent_[c] = v;
    }
  }
  // Everything must hang off the root.
  std::size_t seen = 0;
  std::vector<std::size_t> stack{root_};
  std::vector<bool> visited(n, false);
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (visited[v]) throw ContractViolation("cycle in strategy tree");
    visited[v] = true;
    ++seen;
    for (std::size_t c : children_[v]) stack.push_back(c);
  }
  if (seen != n) throw ContractViolation("strategy tree has vertices unreachable from the root");
}

std::optional<std::size_t> StrategyTree::parent(std::size_t v) const { return parent_.at(v); }

std::size_t StrategyTree::depth(std::size_t v) const {
  std::size_t d = 0;
  for (auto p = parent_.at(v); p; p = parent_[*p]) ++d;
  return d;
}

std::size_t StrategyTree::height() const {
  std::size_t h = 0;
  for (std::size_t v = 0; v < size(); ++v) {
    if (is_leaf(v)) h = std::max(h, depth(v));
  }
  return h;
}

std::vector<std::vector<std::size_t>> StrategyTree::branches() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  auto walk = [&](auto&& self, std::size_t v) -> void {
    path.push_back(v);
    if (children_[v].empty()) out.push_back(path);
    for (std::size_t c : children_[v]) self(self, c);
    path.pop_back();
  };
  walk(walk, root_);
  return out;
}

Pattern StrategyTree::branch_pattern(const std::vector<std::size_t>& path) const {
  std::vector<Rational> values;
  for (std::size_t v : path) values.push_back(labels_.at(v));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return Pattern(std::move(values));
}

std::vector<std::size_t> StrategyTree::subtree(std::size_t v) const {
  std::vector<std::size_t> out{v};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t c : children_[out[i]]) out.push_back(c);
  }
  return out;
}

std::optional<std::size_t> StrategyTree::find_label(const Rational& x) const {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == x) return v;
  }
  return std::nullopt;
}

StrategyTree StrategyTree::mapped(const AffineMap& f) const {
  std::vector<Rational> out;
  out.reserve(labels_.size());
  for (const auto& x : labels_) out.push_back(f(x));
  StrategyTree t(std::move(out), children_, root_);
  std::vector<Pattern> copies;
  for (const auto& p : fixture_copies_) copies.push_back(apply_map(f, p));
  t.set_fixture_copies(std::move(copies));
  return t;
}

std::string_view to_string(TreeCondition c) {
  switch (c) {
    case TreeCondition::distinct: return "distinct";
    case TreeCondition::branch_copy: return "branch_copy";
    case TreeCondition::outdegree: return "outdegree";
    case TreeCondition::depth: return "depth";
  }
  return "unknown";
}

bool ValidationReport::has(TreeCondition c) const {
  return std::any_of(failures.begin(), failures.end(),
                     [c](const TreeFailure& f) { return f.condition == c; });
}

ValidationReport validate_tree(const StrategyTree& t, const Pattern& s, std::size_t moves) {
  ValidationReport report;
  report.move_bound = moves;

  std::map<Rational, std::vector<std::size_t>> by_label;
  for (std::size_t v = 0; v < t.size(); ++v) by_label[t.label(v)].push_back(v);
  for (const auto& [label, vs] : by_label) {
    if (vs.size() > 1) {
      report.failures.push_back(
          {TreeCondition::distinct, "label " + label.str() + " repeated", vs});
    }
  }

  for (const auto& path : t.branches()) {
    const Pattern branch = t.branch_pattern(path);
    if (!contains_copy(branch, s, CopyMode::rational)) {
      report.failures.push_back({TreeCondition::branch_copy,
                                 "branch {" + branch.str() + "} holds no copy of {" + s.str() + "}",
                                 path});
    }
  }

  for (std::size_t v = 0; v < t.size(); ++v) {
    if (v == t.root() || t.is_leaf(v)) continue;
    if (t.children(v).size() < 2) {
      report.failures.push_back({TreeCondition::outdegree,
                                 "vertex " + t.label(v).str() + " has a single child",
                                 {v}});
    }
  }

  for (std::size_t v = 0; v < t.size(); ++v) {
    if (!t.is_leaf(v)) continue;
    const std::size_t d = t.depth(v);
    if (moves == 0 || d > moves - 1) {
      report.failures.push_back({TreeCondition::depth,
                                 "leaf " + t.label(v).str() + " at depth " + std::to_string(d) +
                                     " exceeds " + std::to_string(moves == 0 ? 0 : moves - 1),
                                 {v}});
    }
  }

  report.valid = report.failures.empty();
  return report;
}

StrategyTree fix_root_outdegree(const StrategyTree& t) {
  const std::size_t root = t.root();
  if (t.children(root).size() != 1) return t;

  const Rational shift = t.label(root);
  std::vector<Rational> labels;
  for (const auto& x : t.labels()) labels.push_back(x - shift);

  Rational c(0);
  std::optional<Rational> smallest;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const Rational m = labels[v].abs();
    c = std::max(c, m);
    if (v != root && !m.is_zero() && (!smallest || m < *smallest)) smallest = m;
  }
  if (!smallest) return t;
  const Rational k(mpz_class((c / *smallest).floor() + 1));

  const std::size_t n = t.size();
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t v = 0; v < n; ++v) children[v] = t.children(v);

  // Scaled duplicate of every non-root vertex, keeping the same shape.
  std::vector<std::size_t> copy_of(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    if (v == root) continue;
    copy_of[v] = labels.size();
    labels.push_back(k * labels[v]);
    children.emplace_back();
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (v == root) continue;
    for (std::size_t ch : t.children(v)) children[copy_of[v]].push_back(copy_of[ch]);
  }
  for (std::size_t ch : t.children(root)) children[root].push_back(copy_of[ch]);

  for (auto& x : labels) x += shift;
  return StrategyTree(std::move(labels), std::move(children), root);
}

RealizationRejected::RealizationRejected(ValidationReport report)
    : DomainError([&] {
        std::string msg = "tree cannot be realized:";
        for (const auto& f : report.failures) msg += " [" + std::string(to_string(f.condition)) + "] " + f.detail;
        return msg;
      }()),
      report_(std::move(report)) {}

RealizedTree realize(const StrategyTree& t, const Pattern& s) {
  ValidationReport report = validate_tree(t, s, t.height() + 1);
  std::erase_if(report.failures, [](const TreeFailure& f) {
    return f.condition != TreeCondition::distinct && f.condition != TreeCondition::branch_copy;
  });
  report.valid = report.failures.empty();
  if (!report.valid) throw RealizationRejected(std::move(report));

  mpz_class scale = 1;
  for (const auto& x : t.labels()) scale = lcm(scale, x.denominator());
  for (const auto& path : t.branches()) {
    const auto w = contains_copy(t.branch_pattern(path), s, CopyMode::rational);
    scale = lcm(scale, w->map.a().denominator());
  }
  const Rational c(scale);
  Rational lowest = c * t.labels().front();
  for (const auto& x : t.labels()) lowest = std::min(lowest, c * x);
  const Rational d = lowest.sign() < 0 ? -lowest : Rational(0);

  const AffineMap f(c, d);
  RealizedTree out{t.mapped(f), f, true};
  for (const auto& path : out.tree.branches()) {
    if (!contains_copy(out.tree.branch_pattern(path), s, CopyMode::integer)) {
      out.integer_copy_certified = false;
    }
  }
  // Integral targets always keep integer copies; fractional ones may not.
  const bool integral = std::all_of(s.begin(), s.end(), [](const Rational& x) { return x.is_integer(); });
  if (integral && !out.integer_copy_certified) {
    throw InternalInconsistency("realized tree lost an integer copy of {" + s.str() + "}");
  }
  return out;
}

StrategyTree build_size3(const Pattern& s) {
  if (s.size() != 3) throw ContractViolation("build_size3 needs exactly 3 elements");
  const Rational b = s[1] - s[0];
  const Rational c = s[2] - s[1];
  return StrategyTree({Rational(0), Rational(1), (b + c) / b, b / (b + c)}, {{1}, {2, 3}, {}, {}});
}

StrategyTree build_sym4(const Classification& c, const Pattern& s) {
  if (s.size() != 4) throw ContractViolation("build_sym4 needs exactly 4 elements");
  const Rational one(1);
  // Both trees share the shape 0 -> 1 -> {v2, v3}, v2 -> {v6, v7}, v3 -> {v4, v5}.
  const std::vector<std::vector<std::size_t>> shape{{1}, {2, 3}, {6, 7}, {4, 5}, {}, {}, {}, {}};
  switch (c.kind) {
    case SymmetryKind::arithmetic:
    case SymmetryKind::geometric_1n: {
      const Rational k = c.kind == SymmetryKind::arithmetic ? one : *c.k;
      const Rational k2 = k * k;
      return StrategyTree({Rational(0), one, one + k, one / (one + k), (one + k + k2) / (one + k),
                           -(one / (k + k2)), one + k + k2, -(one / k)},
                          shape);
    }
    case SymmetryKind::geometric_2n:
    case SymmetryKind::geometric_1n1: {
      const Rational& k = *c.k;
      StrategyTree t({Rational(0), one, -(one / (k - one)), one / k, one / (k * k), k, one + k,
                      -(one / k)},
                     shape);
      // (1,n-1) sets are reflections of C2 copies: build for reflect(s), then flip.
      return c.kind == SymmetryKind::geometric_1n1 ? t.negated() : t;
    }
    case SymmetryKind::non_symmetric:
      break;
  }
  throw DomainError("{" + s.str() + "} is not symmetric; use build_generic4");
}

StrategyTree build_generic4(const Rational& x, const Rational& y, const Rational& z) {
  if (x.sign() <= 0 || y.sign() <= 0 || z.sign() <= 0) {
    throw ContractViolation("build_generic4 needs positive x, y, z");
  }
  const Rational x2 = x * x, y2 = y * y, xy = x * y, xz = x * z, yz = y * z;
  const Rational d = xy + y2 + xz + yz;
  const std::array<std::pair<const char*, Rational>, 12> v{{
      {"0", Rational(0)},
      {"1", Rational(1)},
      {"f0", (x + y + z) / x},
      {"f1", (x + y + z) / (x + y)},
      {"f00", (x + y) / x},
      {"f01", (-xy - y2 - yz) / xz},
      {"f10", x / (x + y)},
      {"f11", (yz + xy + y2) / d},
      {"f010", (-x2 - Rational(2) * xy - y2 - yz - xz) / xz},
      {"f011", (-y2 + xz - yz) / xz},
      {"f110", (-x2 - xy - xz) / d},
      {"f111", (Rational(2) * yz + xy + y2 + xz) / d},
  }};
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i].second == v[j].second) {
        throw DegeneracyError(v[i].first, v[j].first,
                              std::string("generic tree degenerates at (") + x.str() + "," +
                                  y.str() + "," + z.str() + "): " + v[i].first + " = " +
                                  v[j].first + " = " + v[i].second.str());
      }
    }
  }
  std::vector<Rational> labels;
  for (const auto& [name, value] : v) labels.push_back(value);
  return StrategyTree(std::move(labels),
                      {{1}, {2, 3}, {5, 4}, {7, 6}, {}, {8, 9}, {}, {10, 11}, {}, {}, {}, {}});
}

StrategyTree example_tree(ExampleName name) {
  if (name == ExampleName::ex1234) {
    return StrategyTree({0, 1, 2, Rational(1, 2), Rational(-1, 2), Rational(3, 2), -1, 3},
                        {{1}, {2, 3}, {6, 7}, {4, 5}, {}, {}, {}, {}});
  }
  StrategyTree t({0, 48, 16, 12, 24, -24, -6, 64, -32, 112, 21, 3},
                 {{1}, {2, 3}, {7, 4}, {6, 5}, {}, {}, {10, 11}, {8, 9}, {}, {}, {}, {}});
  t.set_fixture_copies({Pattern{0, 16, 24, 48}, Pattern{-32, 0, 16, 64}, Pattern{16, 48, 64, 112},
                        Pattern{-6, 0, 3, 12}, Pattern{-24, 0, 12, 48}, Pattern{-6, 12, 21, 48}});
  return t;
}

StrategyTree example_tree(std::string_view name) {
  if (name == "ex1234") return example_tree(ExampleName::ex1234);
  if (name == "ex0236") return example_tree(ExampleName::ex0236);
  throw DomainError("unknown example tree: " + std::string(name));
}

namespace {

StrategyTree generic_or_fallback(const Pattern& s) {
  const auto d = s.differences();
  try {
    return build_generic4(d[0], d[1], d[2]);
  } catch (const DegeneracyError&) {
  }
  try {
    // Tree for the reflection {0, z, z+y, z+y+x}, flipped back.
    return build_generic4(d[2], d[1], d[0]).negated();
  } catch (const DegeneracyError&) {
  }
  const Pattern base{0, 2, 3, 6};
  if (find_affine_map(base, s, Orientation::increasing)) return example_tree(ExampleName::ex0236);
  if (find_affine_map(base, s, Orientation::decreasing)) {
    return example_tree(ExampleName::ex0236).negated();
  }
  throw InternalInconsistency("both generic trees degenerate for {" + s.str() +
                              "} but it is not a copy or reflection of {0,2,3,6}");
}

}  // namespace

Strategy build_strategy(const Pattern& s) {
  const std::size_t n = s.size();
  if (n == 0) throw ContractViolation("build_strategy needs a non-empty set");
  if (n >= 5) {
    throw UnsupportedError("no strategy builder for |S| = " + std::to_string(n) +
                           ": Maker does not have an n-move strategy when n >= 5, and no "
                           "constructive move bound is known");
  }

  Strategy out{StrategyTree({Rational(0)}, {{}}), n};
  if (n == 2) {
    out.tree = StrategyTree({Rational(0), Rational(1)}, {{1}, {}});
  } else if (n == 3) {
    out.tree = build_size3(s);
  } else if (n == 4) {
    const Classification c = classify(s);
    if (c.symmetric()) {
      out.tree = build_sym4(c, s);
    } else {
      out.tree = generic_or_fallback(s);
      out.claimed_moves = 5;
    }
  }

  // Pull the tree onto s itself via the copy found on its first branch.
  const auto first = out.tree.branch_pattern(out.tree.branches().front());
  const auto w = contains_copy(first, s, CopyMode::rational);
  if (!w) throw InternalInconsistency("first branch holds no copy of {" + s.str() + "}");
  out.tree = out.tree.mapped(w->map.inverse());

  const auto report = validate_tree(out.tree, s, out.claimed_moves);
  if (!report.valid) {
    throw InternalInconsistency("built tree for {" + s.str() + "} fails validation: " +
                                report.failures.front().detail);
  }
  return out;
}

RealizedTree prepare_for_play(const StrategyTree& t, const Pattern& s) {
  return realize(fix_root_outdegree(t), s);
}

}  // namespace affmb
