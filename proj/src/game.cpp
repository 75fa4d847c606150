#include "affmb/game.hpp"

#include <algorithm>
#include <random>

#include "affmb/errors.hpp"

namespace affmb {

std::string_view to_string(Side side) { return side == Side::maker ? "maker" : "breaker"; }

std::string_view to_string(GameStatus status) {
  switch (status) {
    case GameStatus::ongoing: return "ongoing";
    case GameStatus::maker_won: return "maker_won";
    case GameStatus::move_capped: return "move_capped";
  }
  return "unknown";
}

std::string_view to_string(CopyMode mode) {
  return mode == CopyMode::rational ? "rational" : "integer";
}

CopyMode copy_mode_from_string(std::string_view name) {
  if (name == "rational") return CopyMode::rational;
  if (name == "integer") return CopyMode::integer;
  throw DomainError("unknown copy mode: " + std::string(name));
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::unique_completion: return "unique";
    case PolicyKind::greedy_threat: return "greedy";
    case PolicyKind::endpoint: return "endpoint";
    case PolicyKind::random: return "random";
    case PolicyKind::scripted: return "scripted";
    case PolicyKind::human: return "human";
  }
  return "unknown";
}

PolicyKind policy_kind_from_string(std::string_view name) {
  if (name == "unique" || name == "unique_completion") return PolicyKind::unique_completion;
  if (name == "greedy" || name == "greedy_threat") return PolicyKind::greedy_threat;
  if (name == "endpoint") return PolicyKind::endpoint;
  if (name == "random") return PolicyKind::random;
  if (name == "scripted") return PolicyKind::scripted;
  if (name == "human") return PolicyKind::human;
  throw DomainError("unknown breaker policy: " + std::string(name));
}

GameState GameState::capped() const {
  GameState g = *this;
  if (g.status_ == GameStatus::ongoing) g.status_ = GameStatus::move_capped;
  return g;
}

GameState new_game(const Pattern& s, CopyMode mode) {
  if (s.empty()) throw DomainError("target set must be non-empty");
  for (const auto& x : s) {
    if (!x.is_natural()) throw DomainError("target set must consist of naturals, got " + x.str());
  }
  GameState g;
  g.s_ = s;
  g.mode_ = mode;
  return g;
}

GameState apply_move(const GameState& g, const Rational& n) {
  if (g.status_ != GameStatus::ongoing) {
    throw StateError("game is over (" + std::string(to_string(g.status_)) + ")");
  }
  if (!n.is_natural()) throw IllegalMove(n.str() + " is not a natural number");
  if (g.occupied(n)) throw IllegalMove(n.str() + " is already taken");

  GameState next = g;
  next.history_.push_back({g.turn_, n});
  if (g.turn_ == Side::maker) {
    next.maker_ = g.maker_.with(n);
    next.turn_ = Side::breaker;
    if (auto w = contains_copy(next.maker_, next.s_, next.mode_)) {
      next.status_ = GameStatus::maker_won;
      next.witness_ = std::move(w);
    }
  } else {
    next.breaker_ = g.breaker_.with(n);
    next.turn_ = Side::maker;
  }
  return next;
}

Rational maker_tree_move(const RealizedTree& t, const GameState& g) {
  if (g.turn() != Side::maker) throw StateError("not Maker's turn");
  const StrategyTree& tree = t.tree;

  std::optional<std::size_t> at;
  for (const auto& m : g.history()) {
    if (m.by != Side::maker) continue;
    const auto v = tree.find_label(m.n);
    const bool follows = v && (at ? tree.parent(*v) == at : *v == tree.root());
    if (!follows) {
      throw StrategyViolated("Maker's move " + m.n.str() + " does not follow the strategy tree");
    }
    at = v;
  }

  const auto clean = [&](std::size_t v) {
    for (std::size_t u : tree.subtree(v)) {
      if (g.breaker().contains(tree.label(u))) return false;
    }
    return true;
  };

  if (!at) {
    if (!clean(tree.root())) throw StrategyViolated("Breaker holds the root");
    return tree.label(tree.root());
  }
  for (std::size_t c : tree.children(*at)) {
    if (clean(c)) return tree.label(c);
  }
  throw StrategyViolated("no clean child below " + tree.label(*at).str());
}

namespace {

struct ThreatInfo {
  std::size_t count = 0;
  bool extremal = false;
};

using ThreatMap = std::map<Rational, ThreatInfo>;

// Points x that turn an m-subset of Maker's holdings into a copy of one of
// the targets (each of size m + 1).
ThreatMap collect_threats(const std::vector<Pattern>& targets, std::size_t m, const Pattern& maker,
                          const Pattern& breaker) {
  ThreatMap out;
  if (m == 0 || maker.size() < m) return out;
  for_each_combination(maker.size(), m, [&](std::span<const std::size_t> idx) {
    std::vector<Rational> sub;
    for (std::size_t i : idx) sub.push_back(maker[i]);
    const Pattern r(std::move(sub));
    for (const auto& w : targets) {
      for (const auto& x : completions(r, w)) {
        if (!x.is_natural() || maker.contains(x) || breaker.contains(x)) continue;
        auto& info = out[x];
        ++info.count;
        if (x < r.front() || x > r.back()) info.extremal = true;
      }
    }
    return true;
  });
  return out;
}

Rational most_frequent(const ThreatMap& threats, bool extremal_only) {
  const Rational* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& [x, info] : threats) {
    if (extremal_only && !info.extremal) continue;
    if (!best || info.count > best_count) {
      best = &x;
      best_count = info.count;
    }
  }
  return *best;
}

Rational preferring_extremal(const ThreatMap& threats) {
  const bool any_extremal = std::any_of(threats.begin(), threats.end(),
                                        [](const auto& kv) { return kv.second.extremal; });
  return most_frequent(threats, any_extremal);
}

Rational smallest_free(const Position& pos) {
  for (Rational n(0); n <= pos.universe_max; n += Rational(1)) {
    if (!pos.occupied(n)) return n;
  }
  throw ResourceError("Breaker universe [0, " + pos.universe_max.str() + "] is exhausted");
}

Rational greedy_move(const Position& pos) {
  const auto threats = threat_points(pos.s, pos.maker, pos.breaker);
  if (threats.empty()) return smallest_free(pos);
  const Rational* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& [x, count] : threats) {
    if (!best || count > best_count) {
      best = &x;
      best_count = count;
    }
  }
  return *best;
}

Rational endpoint_move(const Position& pos) {
  const std::size_t n = pos.s.size();
  if (n >= 2) {
    const auto immediate = collect_threats({pos.s}, n - 1, pos.maker, pos.breaker);
    if (!immediate.empty()) return preferring_extremal(immediate);
  }
  // Block the ends of the longest partial runs along consecutive windows of s.
  for (std::size_t m = n >= 2 ? n - 2 : 0; m >= 2; --m) {
    std::vector<Pattern> windows;
    for (std::size_t start = 0; start + m + 1 <= n; ++start) {
      windows.emplace_back(std::vector<Rational>(pos.s.begin() + static_cast<std::ptrdiff_t>(start),
                                                 pos.s.begin() + static_cast<std::ptrdiff_t>(start + m + 1)));
    }
    const auto threats = collect_threats(windows, m, pos.maker, pos.breaker);
    if (!threats.empty()) return preferring_extremal(threats);
  }
  return greedy_move(pos);
}

Rational random_move(const BreakerPolicy& p, const Position& pos) {
  const Rational top = p.window_max.value_or(pos.universe_max);
  if (!top.is_natural()) throw DomainError("random window must be a natural bound");
  if (!top.numerator().fits_ulong_p()) throw ResourceError("random window " + top.str() + " is too large");
  const std::uint64_t range = top.numerator().get_ui() + 1;
  // Seeded from the policy seed and the ply, so the policy stays a pure function.
  std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32),
                    static_cast<std::uint32_t>(pos.breaker.size())};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::uint64_t> draw(0, range - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Rational n(draw(rng));
    if (!pos.occupied(n)) return n;
  }
  // Dense window: first free point at or above a fresh draw, wrapping around.
  const std::uint64_t start = draw(rng);
  for (std::uint64_t i = 0; i < range; ++i) {
    const Rational n((start + i) % range);
    if (!pos.occupied(n)) return n;
  }
  throw ResourceError("random window [0, " + top.str() + "] is exhausted");
}

}  // namespace

std::map<Rational, std::size_t> threat_points(const Pattern& s, const Pattern& maker,
                                              const Pattern& breaker) {
  std::map<Rational, std::size_t> out;
  if (s.size() < 2) return out;
  for (const auto& [x, info] : collect_threats({s}, s.size() - 1, maker, breaker)) {
    out.emplace(x, info.count);
  }
  return out;
}

std::optional<Rational> breaker_policy_move(const BreakerPolicy& p, const Position& pos) {
  switch (p.kind) {
    case PolicyKind::unique_completion: {
      const auto threats = threat_points(pos.s, pos.maker, pos.breaker);
      if (threats.size() == 1) return threats.begin()->first;
      return greedy_move(pos);
    }
    case PolicyKind::greedy_threat:
      return greedy_move(pos);
    case PolicyKind::endpoint:
      return endpoint_move(pos);
    case PolicyKind::random:
      return random_move(p, pos);
    case PolicyKind::scripted: {
      const std::size_t k = pos.breaker.size();
      if (k < p.script.size() && p.script[k].is_natural() && !pos.occupied(p.script[k])) {
        return p.script[k];
      }
      return smallest_free(pos);
    }
    case PolicyKind::human:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Rational> breaker_policy_move(const BreakerPolicy& p, const GameState& g,
                                            const Rational& universe_max) {
  if (g.turn() != Side::breaker) throw StateError("not Breaker's turn");
  return breaker_policy_move(p, Position{g.target(), g.mode(), g.maker(), g.breaker(), universe_max});
}

Rational default_universe(const RealizedTree& t) {
  Rational top(1);
  for (const auto& x : t.tree.labels()) top = std::max(top, x);
  return Rational(4) * top;
}

MakerAgent tree_agent(RealizedTree tree) {
  return [t = std::move(tree)](const GameState& g) { return maker_tree_move(t, g); };
}

Transcript play_out(const Pattern& s, const MakerAgent& maker, const BreakerPolicy& breaker,
                    const PlayOptions& options) {
  if (options.move_cap == 0) throw ContractViolation("move cap must be at least 1");
  GameState g = new_game(s, options.mode);
  Transcript t{s, options.mode, {}, GameStatus::ongoing, std::nullopt, g};

  const auto record = [&](Side by, const Rational& n) {
    g = apply_move(g, n);
    t.moves.push_back({by, n, threat_points(s, g.maker(), g.breaker())});
  };

  while (g.status() == GameStatus::ongoing) {
    record(Side::maker, maker(g));
    if (g.status() != GameStatus::ongoing) break;
    if (g.maker_moves() >= options.move_cap) {
      g = g.capped();
      break;
    }
    auto reply = breaker_policy_move(breaker, g, options.universe_max);
    if (!reply) {
      if (!options.human) throw DomainError("human Breaker policy needs an input source");
      reply = options.human(g);
    }
    record(Side::breaker, *reply);
  }

  t.status = g.status();
  t.witness = g.witness();
  t.final_state = g;
  return t;
}

}  // namespace affmb
