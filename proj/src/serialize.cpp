#include "affmb/serialize.hpp"

#include "affmb/errors.hpp"

namespace affmb {

Json rational_json(const Rational& r) { return r.str(); }

Json number_json(const Rational& n) {
  if (n.is_integer() && n.numerator().fits_slong_p()) return n.numerator().get_si();
  return n.str();
}

Json pattern_json(const Pattern& p) {
  Json out = Json::array();
  for (const auto& x : p) out.push_back(number_json(x));
  return out;
}

Json map_json(const AffineMap& f) { return {{"a", rational_json(f.a())}, {"b", rational_json(f.b())}}; }

Json classification_json(const Classification& c) {
  Json out{{"kind", std::string(to_string(c.kind))}};
  if (c.k) out["k"] = rational_json(*c.k);
  if (c.witness) out["witness"] = map_json(*c.witness);
  return out;
}

Json tree_json(const StrategyTree& t) {
  Json vertices = Json::array();
  for (std::size_t v = 0; v < t.size(); ++v) {
    vertices.push_back({{"id", v}, {"label", rational_json(t.label(v))}, {"children", t.children(v)}});
  }
  Json out{{"root", t.root()}, {"vertices", std::move(vertices)}};
  if (!t.fixture_copies().empty()) {
    Json copies = Json::array();
    for (const auto& c : t.fixture_copies()) {
      Json labels = Json::array();
      for (const auto& x : c) labels.push_back(rational_json(x));
      copies.push_back(std::move(labels));
    }
    out["fixture_copies"] = std::move(copies);
  }
  return out;
}

Json realized_json(const RealizedTree& t) {
  Json out = tree_json(t.tree);
  out["map"] = map_json(t.map);
  out["integer_copy_certified"] = t.integer_copy_certified;
  return out;
}

Json validation_json(const ValidationReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"condition", std::string(to_string(f.condition))},
                        {"detail", f.detail},
                        {"vertices", f.vertices}});
  }
  return {{"valid", r.valid}, {"move_bound", r.move_bound}, {"failures", std::move(failures)}};
}

Json witness_json(const CopyWitness& w) {
  return {{"points", pattern_json(w.subset)}, {"a", rational_json(w.map.a())}, {"b", rational_json(w.map.b())}};
}

Json threats_json(const std::map<Rational, std::size_t>& threats) {
  Json out = Json::array();
  for (const auto& [n, count] : threats) out.push_back({{"n", number_json(n)}, {"count", count}});
  return out;
}

Json move_json(const Move& m) { return {{"by", std::string(to_string(m.by))}, {"n", number_json(m.n)}}; }

Json state_json(const GameState& g) {
  Json history = Json::array();
  for (const auto& m : g.history()) history.push_back(move_json(m));
  Json out{{"s", pattern_json(g.target())},
           {"mode", std::string(to_string(g.mode()))},
           {"maker", pattern_json(g.maker())},
           {"breaker", pattern_json(g.breaker())},
           {"turn", std::string(to_string(g.turn()))},
           {"status", std::string(to_string(g.status()))},
           {"history", std::move(history)}};
  out["witness"] = g.witness() ? witness_json(*g.witness()) : Json(nullptr);
  return out;
}

Json transcript_json(const Transcript& t) {
  Json moves = Json::array();
  for (const auto& m : t.moves) {
    moves.push_back({{"by", std::string(to_string(m.by))}, {"n", number_json(m.n)}, {"threats", threats_json(m.threats)}});
  }
  Json out{{"s", pattern_json(t.s)},
           {"mode", std::string(to_string(t.mode))},
           {"moves", std::move(moves)},
           {"status", std::string(to_string(t.status))}};
  out["witness"] = t.witness ? witness_json(*t.witness) : Json(nullptr);
  return out;
}

Json solve_json(const SolveResult& r) {
  Json pv = Json::array();
  for (const auto& m : r.principal_variation) pv.push_back(move_json(m));
  Json out;
  out["min_maker_moves"] = r.min_maker_moves ? Json(*r.min_maker_moves) : Json(nullptr);
  out["principal_variation"] = std::move(pv);
  out["nodes_searched"] = r.nodes_searched;
  out["board_relative"] = r.board_relative;
  return out;
}

Json unipoly_json(const UniPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(rational_json(c));
  return {{"degree", p.degree()}, {"coefficients", std::move(coeffs)}, {"text", p.str()}};
}

Json triple_json(const Triple& t) {
  return Json::array({rational_json(t[0]), rational_json(t[1]), rational_json(t[2])});
}

Json appendix_case_json(const AppendixCase& c) {
  Json out{{"pair", {c.i, c.j}},
           {"status", c.pass ? "pass" : "fail"},
           {"first", c.first.str()},
           {"second", c.second.str()},
           {"eliminant", unipoly_json(c.eliminant)}};
  Json xs = Json::array();
  for (const auto& x : c.positive_x) xs.push_back(rational_json(x));
  out["positive_rational_x"] = std::move(xs);
  Json sols = Json::array();
  for (const auto& t : c.solutions) sols.push_back(triple_json(t));
  out["solutions"] = std::move(sols);
  if (c.shortcut_used) {
    out["shortcut"] = {{"identity", "phi(h) - h = xz(1+x+z)(x-z)"},
                       {"identity_holds", c.shortcut_identity_holds}};
    if (c.shortcut_polynomial) out["shortcut"]["z_equals_x"] = unipoly_json(*c.shortcut_polynomial);
  }
  if (c.table_row) {
    Json roots = Json::array();
    for (const auto& r : c.table_row->positive_rational_roots) roots.push_back(rational_json(r));
    out["table_row"] = {{"polynomial", unipoly_json(c.table_row->row)},
                        {"divides_eliminant", c.table_row->divides_eliminant},
                        {"positive_rational_roots", std::move(roots)}};
  }
  out["notes"] = c.notes;
  return out;
}

Json appendix_json(const AppendixReport& r) {
  Json chains = Json::array();
  for (const auto& c : r.chains) {
    Json j{{"chain", c.chain}, {"required", c.required}, {"holds", c.holds}, {"samples", c.samples}};
    if (c.counterexample) j["counterexample"] = triple_json(*c.counterexample);
    if (!c.note.empty()) j["note"] = c.note;
    chains.push_back(std::move(j));
  }
  Json pairs = Json::array();
  std::map<std::string, std::size_t> tally;
  for (const auto& p : r.pairs) {
    ++tally[std::string(to_string(p.category))];
    Json j{{"p", p.p}, {"q", p.q}, {"category", std::string(to_string(p.category))},
           {"sign", std::string(to_string(p.sign))}, {"numerator", p.numerator.str()}};
    if (p.sign == SignClass::mixed) {
      j["positive_root"] = p.positive_root ? triple_json(*p.positive_root) : Json(nullptr);
      j["grid_sign_change"] = p.grid_sign_change;
    }
    pairs.push_back(std::move(j));
  }
  Json cases = Json::array();
  Json flagged = Json::array();
  for (const auto& c : r.cases) {
    cases.push_back(appendix_case_json(c));
    for (const auto& t : c.solutions) flagged.push_back(triple_json(t));
  }
  Json counts;
  for (const auto& [k, v] : tally) counts[k] = v;
  return {{"status", r.pass ? "pass" : "fail"},
          {"chains", std::move(chains)},
          {"pair_counts", std::move(counts)},
          {"pairs", std::move(pairs)},
          {"cases", std::move(cases)},
          {"flagged_solutions", std::move(flagged)},
          {"discrepancies", r.discrepancies}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
  }
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw DomainError("expected a rational as an integer or a \"p/q\" string, got " + j.dump());
}

Pattern pattern_from_json(const Json& j) {
  if (j.is_string()) return Pattern::parse(j.get<std::string>());
  if (!j.is_array()) throw DomainError("expected an array of numbers, got " + j.dump());
  std::vector<Rational> values;
  for (const auto& e : j) values.push_back(rational_from_json(e));
  return Pattern::from_unsorted(std::move(values));
}

StrategyTree tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw DomainError("tree JSON needs a \"vertices\" array");
  }
  const auto& vs = j["vertices"];
  const std::size_t n = vs.size();
  std::vector<Rational> labels(n);
  std::vector<std::vector<std::size_t>> children(n);
  std::vector<bool> seen(n, false);
  try {
    for (const auto& v : vs) {
      const auto id = v.at("id").get<std::size_t>();
      if (id >= n || seen[id]) throw DomainError("vertex ids must be 0..n-1, each once");
      seen[id] = true;
      labels[id] = rational_from_json(v.at("label"));
      if (v.contains("children")) children[id] = v["children"].get<std::vector<std::size_t>>();
    }
    const std::size_t root = j.value("root", std::size_t{0});
    return StrategyTree(std::move(labels), std::move(children), root);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed tree JSON: ") + e.what());
  }
}

}  // namespace affmb
