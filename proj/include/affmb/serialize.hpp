#pragma once

#include <json.hpp>

#include "affmb/appendix.hpp"
#include "affmb/game.hpp"
#include "affmb/pattern.hpp"
#include "affmb/solver.hpp"
#include "affmb/strategy.hpp"
#include "affmb/symmetry.hpp"

namespace affmb {

// Insertion-ordered so CLI and HTTP output is stable byte for byte.
using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r);  // "p/q" or "p"
Json number_json(const Rational& n);    // integers as JSON numbers when they fit, else strings
Json pattern_json(const Pattern& p);    // array of number_json
Json map_json(const AffineMap& f);
Json classification_json(const Classification& c);
Json tree_json(const StrategyTree& t);
Json realized_json(const RealizedTree& t);
Json validation_json(const ValidationReport& r);
Json witness_json(const CopyWitness& w);
Json threats_json(const std::map<Rational, std::size_t>& threats);
Json move_json(const Move& m);
Json state_json(const GameState& g);
Json transcript_json(const Transcript& t);
Json solve_json(const SolveResult& r);
Json unipoly_json(const UniPoly& p);
Json triple_json(const Triple& t);
Json appendix_case_json(const AppendixCase& c);
Json appendix_json(const AppendixReport& r);

// Accepts a number, a "p/q" string.
Rational rational_from_json(const Json& j);
// Accepts an array of numbers or strings, or a "1,2,3" string; order is free.
Pattern pattern_from_json(const Json& j);
StrategyTree tree_from_json(const Json& j);

}  // namespace affmb
