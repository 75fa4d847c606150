#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "affmb/pattern.hpp"
#include "affmb/strategy.hpp"

namespace affmb {

enum class Side { maker, breaker };
enum class GameStatus { ongoing, maker_won, move_capped };

std::string_view to_string(Side side);
std::string_view to_string(GameStatus status);
std::string_view to_string(CopyMode mode);
CopyMode copy_mode_from_string(std::string_view name);

struct Move {
  Side by;
  Rational n;
  friend bool operator==(const Move&, const Move&) = default;
};

// Immutable snapshot; apply_move returns the successor.
class GameState {
 public:
  const Pattern& target() const noexcept { return s_; }
  CopyMode mode() const noexcept { return mode_; }
  const Pattern& maker() const noexcept { return maker_; }
  const Pattern& breaker() const noexcept { return breaker_; }
  Side turn() const noexcept { return turn_; }
  const std::vector<Move>& history() const noexcept { return history_; }
  GameStatus status() const noexcept { return status_; }
  const std::optional<CopyWitness>& witness() const noexcept { return witness_; }

  bool occupied(const Rational& n) const { return maker_.contains(n) || breaker_.contains(n); }
  std::size_t maker_moves() const { return maker_.size(); }

  GameState capped() const;

 private:
  friend GameState new_game(const Pattern& s, CopyMode mode);
  friend GameState apply_move(const GameState& g, const Rational& n);

  Pattern s_;
  CopyMode mode_ = CopyMode::rational;
  Pattern maker_;
  Pattern breaker_;
  Side turn_ = Side::maker;
  std::vector<Move> history_;
  GameStatus status_ = GameStatus::ongoing;
  std::optional<CopyWitness> witness_;
};

// s must be a non-empty set of naturals.
GameState new_game(const Pattern& s, CopyMode mode);

// Adds n to the side to move. Occupied or non-natural n is an IllegalMove,
// a finished game a StateError.
GameState apply_move(const GameState& g, const Rational& n);

// Next vertex of the realized tree whose subtree Breaker has not touched.
Rational maker_tree_move(const RealizedTree& t, const GameState& g);

// What a Breaker policy sees. maker/breaker are the current holdings.
struct Position {
  const Pattern& s;
  CopyMode mode;
  const Pattern& maker;
  const Pattern& breaker;
  Rational universe_max;  // legal fallback moves are naturals in [0, universe_max]

  bool occupied(const Rational& n) const { return maker.contains(n) || breaker.contains(n); }
};

enum class PolicyKind { unique_completion, greedy_threat, endpoint, random, scripted, human };
std::string_view to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(std::string_view name);

struct BreakerPolicy {
  PolicyKind kind = PolicyKind::greedy_threat;
  std::uint64_t seed = 0;              // random
  std::vector<Rational> script;        // scripted
  std::optional<Rational> window_max;  // random: draws from [0, window_max], default universe
};

// Completion points (free naturals finishing a copy of s) with the number of
// (|s|-1)-subsets of Maker's holdings each one completes.
std::map<Rational, std::size_t> threat_points(const Pattern& s, const Pattern& maker,
                                              const Pattern& breaker);

// nullopt only for the human policy ("awaiting input").
std::optional<Rational> breaker_policy_move(const BreakerPolicy& p, const Position& pos);
std::optional<Rational> breaker_policy_move(const BreakerPolicy& p, const GameState& g,
                                            const Rational& universe_max);

// [0, 4 * max label] as the Breaker universe for a realized tree.
Rational default_universe(const RealizedTree& t);

using MakerAgent = std::function<Rational(const GameState&)>;
using HumanBreakerInput = std::function<Rational(const GameState&)>;

MakerAgent tree_agent(RealizedTree tree);

struct TranscriptMove {
  Side by;
  Rational n;
  std::map<Rational, std::size_t> threats;  // Maker's completion points after the move
};

struct Transcript {
  Pattern s;
  CopyMode mode;
  std::vector<TranscriptMove> moves;
  GameStatus status;
  std::optional<CopyWitness> witness;
  GameState final_state;
};

struct PlayOptions {
  std::size_t move_cap = 5;
  CopyMode mode = CopyMode::rational;
  Rational universe_max = 1000;
  HumanBreakerInput human;  // required for the human policy
};

Transcript play_out(const Pattern& s, const MakerAgent& maker, const BreakerPolicy& breaker,
                    const PlayOptions& options);

}  // namespace affmb
