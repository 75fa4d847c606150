#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affmb/errors.hpp"
#include "affmb/pattern.hpp"
#include "affmb/symmetry.hpp"

namespace affmb {

// Rooted tree of rational labels. Each root-to-leaf branch of a valid tree
// holds a copy of the target set; Maker walks it from the root down.
class StrategyTree {
 public:
  // Structure is checked (single root, every vertex reachable, no cycles);
  // label distinctness is left to validate_tree.
  StrategyTree(std::vector<Rational> labels, std::vector<std::vector<std::size_t>> children,
               std::size_t root = 0);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t root() const noexcept { return root_; }
  const Rational& label(std::size_t v) const { return labels_.at(v); }
  const std::vector<Rational>& labels() const noexcept { return labels_; }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_.at(v); }
  std::optional<std::size_t> parent(std::size_t v) const;
  bool is_leaf(std::size_t v) const { return children_.at(v).empty(); }

  std::size_t depth(std::size_t v) const;
  std::size_t height() const;
  // Root-to-leaf vertex paths, leaves in depth-first order.
  std::vector<std::vector<std::size_t>> branches() const;
  Pattern branch_pattern(const std::vector<std::size_t>& path) const;
  // Vertex v and all of its descendants.
  std::vector<std::size_t> subtree(std::size_t v) const;
  std::optional<std::size_t> find_label(const Rational& x) const;

  StrategyTree mapped(const AffineMap& f) const;
  StrategyTree negated() const { return mapped(AffineMap(Rational(-1), Rational(0))); }

  // Known copies of the target carried along with a fixture (informational).
  const std::vector<Pattern>& fixture_copies() const noexcept { return fixture_copies_; }
  void set_fixture_copies(std::vector<Pattern> copies) { fixture_copies_ = std::move(copies); }

  friend bool operator==(const StrategyTree& a, const StrategyTree& b) {
    return a.root_ == b.root_ && a.labels_ == b.labels_ && a.children_ == b.children_;
  }

 private:
  std::vector<Rational> labels_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::optional<std::size_t>> parent_;
  std::size_t root_;
  std::vector<Pattern> fixture_copies_;
};

enum class TreeCondition { distinct, branch_copy, outdegree, depth };
std::string_view to_string(TreeCondition c);

struct TreeFailure {
  TreeCondition condition;
  std::string detail;
  std::vector<std::size_t> vertices;
};

struct ValidationReport {
  bool valid = true;
  std::size_t move_bound = 0;
  std::vector<TreeFailure> failures;

  bool has(TreeCondition c) const;
};

// Checks label distinctness, a rational copy of s on every branch, out-degree
// >= 2 at internal non-root vertices and leaf depth <= moves - 1.
ValidationReport validate_tree(const StrategyTree& t, const Pattern& s, std::size_t moves);

// Grafts k * (V \ {root}) under the root (after translating the root to 0)
// when the root has a single child. k is the smallest positive integer that
// pushes the copy outside [-c, c], c = max |label|.
StrategyTree fix_root_outdegree(const StrategyTree& t);

struct RealizedTree {
  StrategyTree tree;
  AffineMap map;
  // Every branch keeps an integer copy. Always true for integral targets.
  bool integer_copy_certified = false;
};

// Raised by realize when the tree fails distinctness or branch copies.
class RealizationRejected : public DomainError {
 public:
  explicit RealizationRejected(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

// f(x) = c*x + d with c the lcm of label and branch-slope denominators and d
// the least non-negative shift making every label a natural number.
RealizedTree realize(const StrategyTree& t, const Pattern& s);

StrategyTree build_size3(const Pattern& s);
StrategyTree build_sym4(const Classification& c, const Pattern& s);
StrategyTree build_generic4(const Rational& x, const Rational& y, const Rational& z);

struct Strategy {
  StrategyTree tree;
  std::size_t claimed_moves;
};

// Dispatches on |s| <= 4 and symmetry; the tree is normalized so that its
// first branch contains s itself.
Strategy build_strategy(const Pattern& s);

enum class ExampleName { ex1234, ex0236 };
StrategyTree example_tree(ExampleName name);
StrategyTree example_tree(std::string_view name);

// fix_root_outdegree followed by realize: the form Maker plays from.
RealizedTree prepare_for_play(const StrategyTree& t, const Pattern& s);

}  // namespace affmb
