#include "affmb/solver.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "affmb/errors.hpp"

namespace affmb {

Board::Board(std::vector<Rational> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  if (points_.empty()) throw DomainError("board must be non-empty");
  for (const auto& x : points_) {
    if (!x.is_natural()) throw DomainError("board points must be naturals, got " + x.str());
  }
}

Board Board::interval(const Rational& lo, const Rational& hi) {
  if (!lo.is_natural() || !hi.is_natural() || hi < lo) {
    throw DomainError("board interval must be naturals lo..hi with lo <= hi");
  }
  if (hi - lo > Rational(4096)) throw ResourceError("board interval too large");
  std::vector<Rational> pts;
  for (Rational x = lo; x <= hi; x += Rational(1)) pts.push_back(x);
  return Board(std::move(pts));
}

Board Board::from_tree(const RealizedTree& t) { return Board(t.tree.labels()); }

bool Board::contains(const Rational& x) const {
  return std::binary_search(points_.begin(), points_.end(), x);
}

namespace {

using Mask = std::uint64_t;

Mask bit(std::size_t i) { return Mask{1} << i; }

struct Key {
  Mask maker;
  Mask breaker;
  std::uint32_t r;
  bool maker_to_move;
  std::vector<Rational> off;  // Breaker points outside the search universe

  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<Mask>{}(k.maker);
    const auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<Mask>{}(k.breaker));
    mix(k.r * 2 + (k.maker_to_move ? 1 : 0));
    for (const auto& x : k.off) mix(x.hash());
    return h;
  }
};

class Search {
 public:
  Search(const GameState& start, const Board& board, const std::optional<BreakerPolicy>& fixed,
         const SolverLimits& limits)
      : s_(start.target()), mode_(start.mode()), fixed_(fixed) {
    if (board.size() > limits.max_board) {
      throw ResourceError("board has " + std::to_string(board.size()) + " points, limit is " +
                          std::to_string(limits.max_board));
    }
    std::vector<Rational> all = board.points();
    all.insert(all.end(), start.maker().begin(), start.maker().end());
    all.insert(all.end(), start.breaker().begin(), start.breaker().end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.size() > 64) throw ResourceError("board plus holdings exceed 64 points");
    pts_ = std::move(all);
    all_ = pts_.size() == 64 ? ~Mask{0} : bit(pts_.size()) - 1;

    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (start.maker().contains(pts_[i])) maker0_ |= bit(i);
      if (start.breaker().contains(pts_[i])) breaker0_ |= bit(i);
    }

    Rational top(1);
    for (const auto& x : pts_) top = std::max(top, x);
    for (const auto& x : s_) top = std::max(top, x);
    universe_ = Rational(4) * top;

    build_edges();
  }

  Mask maker0() const { return maker0_; }
  Mask breaker0() const { return breaker0_; }
  std::uint64_t nodes() const { return nodes_; }
  const Rational& point(std::size_t i) const { return pts_[i]; }

  bool maker_wins(Mask m, Mask b, const std::vector<Rational>& off, std::size_t r) {
    ++nodes_;
    if (threats(m, b)) return true;
    if (r <= 1) return false;
    if (min_need(m, b) > r) return false;
    Key key{m, b, static_cast<std::uint32_t>(r), true, off};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = false;
    for (Mask free = all_ & ~(m | b); free && !result; free &= free - 1) {
      const Mask p = free & -free;
      result = breaker_then_maker_wins(m | p, b, off, r - 1);
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  // Breaker to move; Maker then has r moves.
  bool breaker_then_maker_wins(Mask m, Mask b, const std::vector<Rational>& off, std::size_t r) {
    ++nodes_;
    const Mask t = threats(m, b);
    if (std::popcount(t) >= 2) return true;
    if (fixed_) {
      Key key{m, b, static_cast<std::uint32_t>(r), false, off};
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
      Mask nb = b;
      std::vector<Rational> noff = off;
      apply_policy(m, nb, noff);
      const bool result = maker_wins(m, nb, noff, r);
      memo_.emplace(std::move(key), result);
      return result;
    }
    if (t) return maker_wins(m, b | t, off, r);  // forced block
    if (r <= 1 || min_need(m, b) > r) return false;
    Key key{m, b, static_cast<std::uint32_t>(r), false, off};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = true;
    const Mask free_all = all_ & ~(m | b);
    if (!free_all) {
      result = maker_wins(m, b, off, r);
    }
    for (Mask free = free_all; free && result; free &= free - 1) {
      result = maker_wins(m, b | (free & -free), off, r);
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  // Free points completing a live edge.
  Mask threats(Mask m, Mask b) const {
    Mask out = 0;
    for (Mask e : edges_) {
      if (e & b) continue;
      const Mask missing = e & ~m;
      if (missing && (missing & (missing - 1)) == 0) out |= missing;
    }
    return out;
  }

  std::size_t min_need(Mask m, Mask b) const {
    std::size_t best = 65;
    for (Mask e : edges_) {
      if (e & b) continue;
      best = std::min<std::size_t>(best, std::popcount(e & ~m));
    }
    return best;
  }

  bool won(Mask m) const {
    return std::any_of(edges_.begin(), edges_.end(), [m](Mask e) { return (e & ~m) == 0; });
  }

  Mask free_mask(Mask m, Mask b) const { return all_ & ~(m | b); }

  // Applies the fixed policy: b or off gains the chosen point.
  Rational apply_policy(Mask m, Mask& b, std::vector<Rational>& off) const {
    std::vector<Rational> mk, bk = off;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (m & bit(i)) mk.push_back(pts_[i]);
      if (b & bit(i)) bk.push_back(pts_[i]);
    }
    std::sort(bk.begin(), bk.end());
    const Pattern maker(std::move(mk));
    const Pattern breaker(std::move(bk));
    const auto q = breaker_policy_move(*fixed_, Position{s_, mode_, maker, breaker, universe_});
    if (!q) throw DomainError("the human policy cannot drive a solver search");
    const auto it = std::lower_bound(pts_.begin(), pts_.end(), *q);
    if (it != pts_.end() && *it == *q) {
      b |= bit(static_cast<std::size_t>(it - pts_.begin()));
    } else {
      off.insert(std::upper_bound(off.begin(), off.end(), *q), *q);
    }
    return *q;
  }

  bool fixed() const { return fixed_.has_value(); }

  std::size_t index_of(Mask single) const { return static_cast<std::size_t>(std::countr_zero(single)); }

 private:
  void build_edges() {
    const std::size_t n = s_.size();
    const bool integer = mode_ == CopyMode::integer;
    if (n == 1) {
      for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (!integer || (pts_[i] - s_[0]).is_integer()) edges_.push_back(bit(i));
      }
      return;
    }
    const Rational span = s_[1] - s_[0];
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      for (std::size_t j = i + 1; j < pts_.size(); ++j) {
        const Rational a = (pts_[j] - pts_[i]) / span;
        const Rational b = pts_[i] - a * s_[0];
        if (integer && !(a.is_integer() && b.is_integer())) continue;
        Mask e = bit(i) | bit(j);
        bool ok = true;
        for (std::size_t k = 2; k < n && ok; ++k) {
          const Rational y = a * s_[k] + b;
          const auto it = std::lower_bound(pts_.begin(), pts_.end(), y);
          ok = it != pts_.end() && *it == y;
          if (ok) e |= bit(static_cast<std::size_t>(it - pts_.begin()));
        }
        if (ok) edges_.push_back(e);
      }
    }
  }

  const Pattern& s_;
  CopyMode mode_;
  std::optional<BreakerPolicy> fixed_;
  std::vector<Rational> pts_;
  Mask all_ = 0;
  Mask maker0_ = 0;
  Mask breaker0_ = 0;
  Rational universe_;
  std::vector<Mask> edges_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::uint64_t nodes_ = 0;
};

void check_budget(std::size_t budget, const SolverLimits& limits) {
  if (budget > limits.max_budget) {
    throw ResourceError("budget " + std::to_string(budget) + " exceeds limit " +
                        std::to_string(limits.max_budget));
  }
}

// Smallest r <= budget with a forced win (Maker to move when maker_turn).
std::optional<std::size_t> value(Search& search, Mask m, Mask b, const std::vector<Rational>& off,
                                 bool maker_turn, std::size_t budget) {
  for (std::size_t r = 1; r <= budget; ++r) {
    const bool win = maker_turn ? search.maker_wins(m, b, off, r)
                                : search.breaker_then_maker_wins(m, b, off, r);
    if (win) return r;
  }
  return std::nullopt;
}

std::vector<Move> principal_variation(Search& search, Mask m, Mask b, std::vector<Rational> off,
                                      bool maker_turn, std::size_t r) {
  std::vector<Move> pv;
  while (r >= 1) {
    if (maker_turn) {
      if (const Mask t = search.threats(m, b)) {
        pv.push_back({Side::maker, search.point(search.index_of(t & -t))});
        break;
      }
      bool moved = false;
      for (Mask free = search.free_mask(m, b); free; free &= free - 1) {
        const Mask p = free & -free;
        if (search.breaker_then_maker_wins(m | p, b, off, r - 1)) {
          pv.push_back({Side::maker, search.point(search.index_of(p))});
          m |= p;
          --r;
          moved = true;
          break;
        }
      }
      if (!moved) break;
      maker_turn = false;
      continue;
    }
    // Breaker: the reply that delays Maker the longest.
    if (search.fixed()) {
      const Rational q = search.apply_policy(m, b, off);
      pv.push_back({Side::breaker, q});
    } else {
      const Mask t = search.threats(m, b);
      Mask choice = 0;
      std::size_t longest = 0;
      if (t) {
        choice = t & -t;
        longest = *value(search, m, b | choice, off, true, r);
      } else {
        for (Mask free = search.free_mask(m, b); free; free &= free - 1) {
          const Mask q = free & -free;
          const std::size_t d = value(search, m, b | q, off, true, r).value_or(r);
          if (!choice || d > longest) {
            choice = q;
            longest = d;
          }
        }
      }
      if (!choice) break;
      pv.push_back({Side::breaker, search.point(search.index_of(choice))});
      b |= choice;
      r = longest;
    }
    maker_turn = true;
  }
  return pv;
}

}  // namespace

SolveResult solve_from(const GameState& state, const Board& board, std::size_t budget,
                       const std::optional<BreakerPolicy>& fixed_breaker,
                       const SolverLimits& limits) {
  check_budget(budget, limits);
  SolveResult result;
  if (state.status() == GameStatus::maker_won) {
    result.min_maker_moves = 0;
    return result;
  }
  Search search(state, board, fixed_breaker, limits);
  const bool maker_turn = state.turn() == Side::maker;
  const std::vector<Rational> none;
  result.min_maker_moves =
      value(search, search.maker0(), search.breaker0(), none, maker_turn, budget);
  if (result.min_maker_moves) {
    result.principal_variation = principal_variation(search, search.maker0(), search.breaker0(),
                                                     none, maker_turn, *result.min_maker_moves);
  }
  result.nodes_searched = search.nodes();
  return result;
}

SolveResult solve_bounded(const Pattern& s, const Board& board, std::size_t budget, CopyMode mode,
                          const std::optional<BreakerPolicy>& fixed_breaker,
                          const SolverLimits& limits) {
  return solve_from(new_game(s, mode), board, budget, fixed_breaker, limits);
}

Rational best_move(const Pattern& s, const Board& board, const GameState& state,
                   std::size_t budget, const SolverLimits& limits) {
  if (state.target() != s) throw ContractViolation("best_move: state plays a different target");
  if (state.status() != GameStatus::ongoing) throw StateError("game is over");
  check_budget(budget, limits);
  Search search(state, board, std::nullopt, limits);
  const Mask m = search.maker0();
  const Mask b = search.breaker0();
  const std::vector<Rational> none;
  const Mask free = search.free_mask(m, b);
  if (!free) throw ResourceError("no free board point");

  if (state.turn() == Side::maker) {
    if (const auto v = value(search, m, b, none, true, budget)) {
      const auto pv = principal_variation(search, m, b, none, true, *v);
      if (!pv.empty()) return pv.front().n;
    }
    return search.point(search.index_of(free & -free));
  }

  // Breaker: maximize Maker's distance to a win; no win at all is best.
  Mask choice = 0;
  std::size_t worst = 0;
  for (Mask f = free; f; f &= f - 1) {
    const Mask q = f & -f;
    const std::size_t d = value(search, m, b | q, none, true, budget).value_or(budget + 1);
    if (!choice || d > worst) {
      choice = q;
      worst = d;
    }
  }
  return search.point(search.index_of(choice));
}

MakerAgent solver_agent(Board board, std::size_t budget, SolverLimits limits) {
  return [board = std::move(board), budget, limits](const GameState& g) {
    const std::size_t used = g.maker_moves();
    const std::size_t left = budget > used ? budget - used : 1;
    return best_move(g.target(), board, g, std::min(left, limits.max_budget), limits);
  };
}

Board completion_closure(const Pattern& s, const Rational& value_bound, std::size_t max_points) {
  if (s.size() < 2) return Board(s.elements());
  std::vector<Rational> current = s.elements();
  while (current.size() < max_points) {
    std::vector<Rational> fresh;
    const Pattern have(current);
    for_each_combination(current.size(), s.size() - 1, [&](std::span<const std::size_t> idx) {
      std::vector<Rational> sub;
      for (std::size_t i : idx) sub.push_back(current[i]);
      for (auto& x : completions(Pattern(std::move(sub)), s)) {
        if (x.is_natural() && x <= value_bound && !have.contains(x)) fresh.push_back(std::move(x));
      }
      return true;
    });
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    if (fresh.empty()) break;
    for (auto& x : fresh) {
      if (current.size() >= max_points) break;
      current.push_back(std::move(x));
    }
    std::sort(current.begin(), current.end());
  }
  return Board(std::move(current));
}

}  // namespace affmb
