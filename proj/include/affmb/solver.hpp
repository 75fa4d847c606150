#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "affmb/game.hpp"
#include "affmb/pattern.hpp"

namespace affmb {

// Finite set of naturals Maker (and, without a fixed policy, Breaker) may pick from.
class Board {
 public:
  explicit Board(std::vector<Rational> points);
  static Board interval(const Rational& lo, const Rational& hi);
  static Board from_tree(const RealizedTree& t);

  const std::vector<Rational>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool contains(const Rational& x) const;

 private:
  std::vector<Rational> points_;
};

struct SolverLimits {
  std::size_t max_board = 32;
  std::size_t max_budget = 8;
};

struct SolveResult {
  std::optional<std::size_t> min_maker_moves;  // absent: no forced win within budget here
  std::vector<Move> principal_variation;
  std::uint64_t nodes_searched = 0;
  // A missing win is a statement about this finite board only.
  bool board_relative = true;
};

// Minimax over alternating picks from the board, starting from an empty game.
// With fixed_breaker, Breaker follows that policy (possibly off the board).
SolveResult solve_bounded(const Pattern& s, const Board& board, std::size_t budget, CopyMode mode,
                          const std::optional<BreakerPolicy>& fixed_breaker = std::nullopt,
                          const SolverLimits& limits = {});

// Same search from an arbitrary position; budget counts Maker's remaining moves.
SolveResult solve_from(const GameState& state, const Board& board, std::size_t budget,
                       const std::optional<BreakerPolicy>& fixed_breaker = std::nullopt,
                       const SolverLimits& limits = {});

// A move for the side to play that preserves the minimax value (ties: smallest).
Rational best_move(const Pattern& s, const Board& board, const GameState& state,
                   std::size_t budget, const SolverLimits& limits = {});

// Maker agent that replays best_move with the remaining budget.
MakerAgent solver_agent(Board board, std::size_t budget, SolverLimits limits = {});

// Closure of s under completion points: naturals <= value_bound added in
// ascending order until nothing new appears or max_points is reached.
Board completion_closure(const Pattern& s, const Rational& value_bound, std::size_t max_points);

}  // namespace affmb
