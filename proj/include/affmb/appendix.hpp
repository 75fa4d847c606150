#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "affmb/polycalc.hpp"

namespace affmb {

using Triple = std::array<Rational, 3>;

struct ChainCheck {
  std::string chain;
  bool required = true;  // false for the as-printed reading kept for the record
  bool holds = false;
  std::size_t samples = 0;
  std::optional<Triple> counterexample;
  std::string note;
};

enum class PairCategory { symmetry_relation, remaining_relation, uniform_sign, mixed_no_root_found };
std::string_view to_string(PairCategory c);

struct PairAnalysis {
  std::string p;
  std::string q;
  MultiPoly numerator;
  SignClass sign = SignClass::mixed;
  PairCategory category = PairCategory::uniform_sign;
  std::optional<Triple> positive_root;  // small rational root, if the search found one
  bool grid_sign_change = false;
};

struct TableRowCheck {
  int i = 0;
  int j = 0;
  UniPoly row;
  std::vector<Rational> positive_rational_roots;
  bool divides_eliminant = false;
};

struct AppendixCase {
  int i = 0;
  int j = 0;
  MultiPoly first;   // numerator of g_i at y = 1
  MultiPoly second;  // numerator of phi(g_j) at y = 1
  UniPoly eliminant;
  std::vector<Rational> positive_x;
  std::vector<Triple> solutions;  // positive rational (x, 1, z)
  bool shortcut_used = false;
  bool shortcut_identity_holds = false;
  std::optional<UniPoly> shortcut_polynomial;
  std::optional<TableRowCheck> table_row;
  std::vector<Triple> expected;
  bool pass = false;
  std::vector<std::string> notes;
};

struct AppendixOptions {
  std::size_t chain_samples = 10000;
  std::uint64_t seed = 20240521;
  int search_bound = 6;  // numerators and denominators of the rational root search
  int grid = 50;         // integer grid 1..grid in each coordinate
  std::map<int, MultiPoly> relation_override;  // replaces g_i (mutation checks)
};

struct AppendixReport {
  std::vector<ChainCheck> chains;
  std::vector<PairAnalysis> pairs;
  std::vector<AppendixCase> cases;
  std::vector<TableRowCheck> table_rows;
  std::vector<std::string> discrepancies;
  bool pass = false;
};

// The printed table of eliminant factors, keyed by (i, j).
const std::map<std::pair<int, int>, UniPoly>& table_rows();

// Common positive rational zeros of g_i and phi(g_j).
AppendixCase appendix_pair(int i, int j, const AppendixOptions& options = {});

AppendixReport verify_appendix(const AppendixOptions& options = {});

// Vertex pairs of the generic tree whose labels coincide at (x, y, z).
std::vector<std::pair<std::string, std::string>> vanishing_relations(const Rational& x,
                                                                      const Rational& y,
                                                                      const Rational& z);

}  // namespace affmb
