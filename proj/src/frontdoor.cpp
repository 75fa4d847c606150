#include "affmb/frontdoor.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "affmb/errors.hpp"

namespace affmb {

Json classify_response(const Pattern& s) {
  Json out{{"s", pattern_json(s)}};
  if (s.size() >= 3) {
    out["classification"] = classification_json(classify(s));
    Json types = Json::array();
    for (const auto& t : symmetry_types(s)) types.push_back({t.i, t.j});
    out["symmetry_types"] = std::move(types);
  } else {
    out["classification"] = nullptr;
    out["symmetry_types"] = Json::array();
  }
  out["claimed_moves"] = s.size() <= 4 ? Json(build_strategy(s).claimed_moves) : Json(nullptr);
  return out;
}

Json tree_response(const Pattern& s, bool realized) {
  const Strategy st = build_strategy(s);
  Json out{{"s", pattern_json(s)},
           {"claimed_moves", st.claimed_moves},
           {"tree", tree_json(st.tree)},
           {"validation", validation_json(validate_tree(st.tree, s, st.claimed_moves))}};
  if (realized) out["realized"] = realized_json(prepare_for_play(st.tree, s));
  return out;
}

namespace {

void emit(std::ostream& out, const std::string& summary, const Json& body) {
  out << summary << '\n' << body.dump(2) << '\n';
}

Board parse_board(const std::string& text, const Pattern& s) {
  if (text == "tree") return Board::from_tree(prepare_for_play(build_strategy(s).tree, s));
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    return Board::interval(Rational::parse(text.substr(0, dots)), Rational::parse(text.substr(dots + 2)));
  }
  return Board(Pattern::parse(text).elements());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string status_line(const AppendixCase& c) {
  std::string sols;
  for (const auto& t : c.solutions) {
    sols += (sols.empty() ? "" : " ") + ("(" + t[0].str() + "," + t[1].str() + "," + t[2].str() + ")");
  }
  return "appendix (" + std::to_string(c.i) + "," + std::to_string(c.j) + "): " +
         (c.pass ? "pass" : "FAIL") + ", positive rational solutions: " + (sols.empty() ? "none" : sols);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in) {
  CLI::App app{"Maker-Breaker affine copy game engine", "affmb"};
  app.require_subcommand(1);

  std::string set_text;
  std::string mode_text = "rational";

  auto* classify_cmd = app.add_subcommand("classify", "Symmetry classification of a set");
  classify_cmd->add_option("--set", set_text, "Comma-separated set, e.g. 1,2,3,5")->required();

  bool realize_tree = false;
  std::string out_file;
  auto* tree_cmd = app.add_subcommand("tree", "Build the strategy tree for a set");
  tree_cmd->add_option("--set", set_text)->required();
  tree_cmd->add_flag("--realize", realize_tree, "Also print the integer realization");
  tree_cmd->add_option("--out", out_file, "Write the JSON to a file");

  std::string tree_file;
  std::size_t moves = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Validate a tree JSON file against a set");
  verify_cmd->add_option("--tree", tree_file)->required();
  verify_cmd->add_option("--set", set_text)->required();
  verify_cmd->add_option("--moves", moves)->required();

  std::string breaker = "greedy";
  std::uint64_t seed = 0;
  std::string script;
  std::size_t move_cap = 0;
  auto* play_cmd = app.add_subcommand("play", "Play the tree strategy against a Breaker policy");
  play_cmd->add_option("--set", set_text)->required();
  play_cmd->add_option("--breaker", breaker, "unique|greedy|endpoint|random|scripted|human");
  play_cmd->add_option("--mode", mode_text, "rational|integer");
  play_cmd->add_option("--seed", seed);
  play_cmd->add_option("--script", script, "Breaker moves for the scripted policy");
  play_cmd->add_option("--move-cap", move_cap, "Default: the claimed move count");

  std::string board_text;
  std::size_t max_moves = 0;
  std::string fixed_breaker;
  auto* solve_cmd = app.add_subcommand("solve", "Bounded minimax on a finite board");
  solve_cmd->add_option("--set", set_text)->required();
  solve_cmd->add_option("--board", board_text, "a..b, a list, or 'tree'")->required();
  solve_cmd->add_option("--max-moves", max_moves)->required();
  solve_cmd->add_option("--mode", mode_text);
  solve_cmd->add_option("--breaker", fixed_breaker, "Fix Breaker to a policy");
  solve_cmd->add_option("--seed", seed);

  std::string pair_text;
  bool all_pairs = false;
  auto* appendix_cmd = app.add_subcommand("appendix", "Reproduce the appendix computations");
  auto* pair_opt = appendix_cmd->add_option("--pair", pair_text, "i,j with 1 <= i <= j <= 3");
  appendix_cmd->add_flag("--all", all_pairs)->excludes(pair_opt);

  int port = 8172;
  std::string host = "127.0.0.1";
  std::string state_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON service");
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--state-dir", state_dir, "Append session snapshots here (or AFFMB_STATE_DIR)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify_cmd) {
      const Pattern s = Pattern::parse(set_text);
      const Json body = classify_response(s);
      std::string summary = "classify " + s.str() + ": ";
      if (s.size() >= 3) {
        const auto& c = body["classification"];
        summary += c["kind"].get<std::string>();
        if (c.contains("k")) summary += ", k = " + c["k"].get<std::string>();
      } else {
        summary += "every set of size " + std::to_string(s.size()) + " is symmetric";
      }
      emit(out, summary, body);
      return 0;
    }
    if (*tree_cmd) {
      const Pattern s = Pattern::parse(set_text);
      const Json body = tree_response(s, realize_tree);
      const std::string summary = "tree for " + s.str() + ": " + std::to_string(body["tree"]["vertices"].size()) +
                                  " vertices, " + std::to_string(body["claimed_moves"].get<std::size_t>()) +
                                  "-move strategy, " + (body["validation"]["valid"].get<bool>() ? "valid" : "INVALID");
      if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) throw DomainError("cannot write " + out_file);
        f << body.dump(2) << '\n';
      }
      emit(out, summary, body);
      return 0;
    }
    if (*verify_cmd) {
      const Pattern s = Pattern::parse(set_text);
      Json j;
      try {
        j = Json::parse(read_file(tree_file));
      } catch (const Json::parse_error& e) {
        throw DomainError(std::string("malformed JSON in ") + tree_file + ": " + e.what());
      }
      const StrategyTree t = tree_from_json(j.contains("tree") ? j["tree"] : j);
      const ValidationReport r = validate_tree(t, s, moves);
      emit(out,
           "verify " + tree_file + " for " + s.str() + " within " + std::to_string(moves) + " moves: " +
               (r.valid ? "valid" : "INVALID (" + std::to_string(r.failures.size()) + " failures)"),
           validation_json(r));
      return r.valid ? 0 : 2;
    }
    if (*play_cmd) {
      const Pattern s = Pattern::parse(set_text);
      const Strategy st = build_strategy(s);
      const RealizedTree realized = prepare_for_play(st.tree, s);
      BreakerPolicy policy;
      policy.kind = policy_kind_from_string(breaker);
      policy.seed = seed;
      if (!script.empty()) policy.script = Pattern::parse(script).elements();
      PlayOptions options;
      options.mode = copy_mode_from_string(mode_text);
      options.move_cap = move_cap ? move_cap : st.claimed_moves;
      options.universe_max = default_universe(realized);
      options.human = [&](const GameState& g) {
        err << "maker " << g.maker().str() << ", breaker " << g.breaker().str() << "; your move: ";
        std::string line;
        if (!std::getline(in, line)) throw DomainError("no Breaker move on input");
        return Rational::parse(line);
      };
      const Transcript t = play_out(s, tree_agent(realized), policy, options);
      Json body = transcript_json(t);
      body["claimed_moves"] = st.claimed_moves;
      body["tree"] = realized_json(realized);
      emit(out,
           "play " + s.str() + " vs " + std::string(to_string(policy.kind)) + ": " +
               std::string(to_string(t.status)) + " after " + std::to_string(t.final_state.maker_moves()) +
               " Maker moves (claimed " + std::to_string(st.claimed_moves) + ")",
           body);
      return 0;
    }
    if (*solve_cmd) {
      const Pattern s = Pattern::parse(set_text);
      const Board board = parse_board(board_text, s);
      std::optional<BreakerPolicy> fixed;
      if (!fixed_breaker.empty()) {
        fixed = BreakerPolicy{};
        fixed->kind = policy_kind_from_string(fixed_breaker);
        fixed->seed = seed;
      }
      const SolveResult r = solve_bounded(s, board, max_moves, copy_mode_from_string(mode_text), fixed);
      Json body = solve_json(r);
      body["board"] = pattern_json(Pattern(board.points()));
      emit(out,
           "solve " + s.str() + " on " + std::to_string(board.size()) + " points, budget " +
               std::to_string(max_moves) + ": " +
               (r.min_maker_moves ? "Maker wins in " + std::to_string(*r.min_maker_moves) + " moves"
                                  : std::string("no forced Maker win on this board")),
           body);
      return 0;
    }
    if (*appendix_cmd) {
      if (!pair_text.empty()) {
        const Pattern ij = Pattern::parse(pair_text);
        if (ij.size() != 2 || !ij[0].is_integer() || !ij[1].is_integer()) throw DomainError("--pair takes i,j");
        const AppendixCase c = appendix_pair(static_cast<int>(ij[0].numerator().get_si()),
                                             static_cast<int>(ij[1].numerator().get_si()));
        emit(out, status_line(c), appendix_case_json(c));
        return c.pass ? 0 : 2;
      }
      const AppendixReport r = verify_appendix();
      std::string summary = std::string("appendix: ") + (r.pass ? "pass" : "FAIL");
      for (const auto& c : r.cases) summary += "\n  " + status_line(c);
      for (const auto& d : r.discrepancies) summary += "\n  discrepancy: " + d;
      emit(out, summary, appendix_json(r));
      return r.pass ? 0 : 2;
    }
    if (*serve_cmd) {
      if (state_dir.empty()) {
        if (const char* env = std::getenv("AFFMB_STATE_DIR")) state_dir = env;
      }
      GameService service(state_dir.empty() ? std::nullopt
                                             : std::optional<std::filesystem::path>(state_dir));
      HttpServer server(service);
      const int bound = server.bind(host, port);
      if (bound < 0) throw ResourceError("cannot bind " + host + ":" + std::to_string(port));
      err << "listening on http://" << host << ':' << bound << std::endl;
      server.listen();
      return 0;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace affmb
