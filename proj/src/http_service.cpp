#include <httplib.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>

#include "affmb/errors.hpp"
#include "affmb/frontdoor.hpp"

namespace affmb {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ServiceResponse error(int status, const std::string& message) {
  return {status, Json{{"error", message}}};
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    Json j = Json::parse(body);
    if (!j.is_object()) throw DomainError("request body must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

BreakerPolicy policy_from_body(const Json& body) {
  BreakerPolicy p;
  p.kind = policy_kind_from_string(body.value("breaker", std::string("human")));
  if (body.contains("seed")) p.seed = body["seed"].get<std::uint64_t>();
  if (body.contains("script")) {
    for (const auto& v : body["script"]) p.script.push_back(rational_from_json(v));
  }
  return p;
}

}  // namespace

struct GameService::Session {
  std::mutex mutex;
  std::string id;
  BreakerPolicy policy;
  std::size_t claimed_moves = 0;
  std::size_t move_cap = 0;
  RealizedTree realized;
  Rational universe;
  GameState state;
  std::vector<TranscriptMove> moves;
  Json classification;
  std::string created;
  std::string updated;
  std::map<std::string, ServiceResponse> tokens;

  Session(RealizedTree t, GameState g) : realized(std::move(t)), state(std::move(g)) {}

  void record(const Rational& n) {
    const Side by = state.turn();
    state = apply_move(state, n);
    moves.push_back({by, n, threat_points(state.target(), state.maker(), state.breaker())});
    updated = utc_now();
  }

  void maker_reply() {
    if (state.status() != GameStatus::ongoing || state.turn() != Side::maker) return;
    record(maker_tree_move(realized, state));
    if (state.status() == GameStatus::ongoing && state.maker_moves() >= move_cap) state = state.capped();
  }

  // Non-human policies play on their own until the game ends.
  void auto_play() {
    while (state.status() == GameStatus::ongoing && state.turn() == Side::breaker) {
      const auto reply = breaker_policy_move(policy, state, universe);
      if (!reply) return;
      record(*reply);
      maker_reply();
    }
  }

  Json json() const {
    Json transcript = Json::array();
    for (const auto& m : moves) {
      transcript.push_back({{"by", std::string(to_string(m.by))},
                            {"n", number_json(m.n)},
                            {"threats", threats_json(m.threats)}});
    }
    const bool awaiting = state.status() == GameStatus::ongoing && state.turn() == Side::breaker &&
                          policy.kind == PolicyKind::human;
    return {{"id", id},
            {"s", pattern_json(state.target())},
            {"mode", std::string(to_string(state.mode()))},
            {"breaker", std::string(to_string(policy.kind))},
            {"classification", classification},
            {"claimed_moves", claimed_moves},
            {"move_cap", move_cap},
            {"tree", realized_json(realized)},
            {"state", state_json(state)},
            {"threats", threats_json(threat_points(state.target(), state.maker(), state.breaker()))},
            {"transcript", std::move(transcript)},
            {"awaiting", awaiting ? Json("breaker") : Json(nullptr)},
            {"created", created},
            {"updated", updated}};
  }
};

GameService::GameService(std::optional<std::filesystem::path> state_dir)
    : state_dir_(std::move(state_dir)), id_salt_(std::random_device{}()) {
  id_salt_ = (id_salt_ << 32) ^ std::random_device{}();
  if (state_dir_) std::filesystem::create_directories(*state_dir_);
}

GameService::~GameService() = default;

std::string GameService::fresh_id() {
  std::lock_guard lock(id_mutex_);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(splitmix(id_salt_ + ++id_counter_)));
  return buf;
}

void GameService::persist(const std::string& event, const Json& session) {
  if (!state_dir_) return;
  std::lock_guard lock(persist_mutex_);
  std::ofstream out(*state_dir_ / "sessions.jsonl", std::ios::app);
  out << Json{{"event", event}, {"at", utc_now()}, {"session", session}}.dump() << '\n';
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) {
  std::shared_lock lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ServiceResponse GameService::create_game(const Json& body, const std::string& token) {
  std::unique_lock<std::mutex> token_lock(create_tokens_mutex_, std::defer_lock);
  if (!token.empty()) {
    token_lock.lock();
    if (const auto it = create_tokens_.find(token); it != create_tokens_.end()) return it->second;
  }
  if (!body.contains("s")) throw DomainError("missing \"s\"");
  const Pattern s = pattern_from_json(body["s"]);
  const CopyMode mode = copy_mode_from_string(body.value("mode", std::string("rational")));
  GameState start = new_game(s, mode);
  const Strategy strategy = build_strategy(s);

  auto session = std::make_shared<Session>(prepare_for_play(strategy.tree, s), std::move(start));
  session->id = fresh_id();
  session->policy = policy_from_body(body);
  session->claimed_moves = strategy.claimed_moves;
  session->move_cap = body.value("move_cap", strategy.claimed_moves);
  if (session->move_cap == 0) throw DomainError("move_cap must be at least 1");
  session->universe = default_universe(session->realized);
  session->classification = s.size() >= 3 ? classification_json(affmb::classify(s)) : Json(nullptr);
  session->created = session->updated = utc_now();
  session->maker_reply();
  session->auto_play();

  ServiceResponse response{201, session->json()};
  {
    std::unique_lock lock(sessions_mutex_);
    sessions_.emplace(session->id, session);
  }
  persist("create", response.body);
  if (!token.empty()) create_tokens_.emplace(token, response);
  return response;
}

ServiceResponse GameService::get_game(const std::string& id) {
  const auto session = find(id);
  if (!session) return error(404, "unknown game " + id);
  std::lock_guard lock(session->mutex);
  return {200, session->json()};
}

ServiceResponse GameService::breaker_move(const std::string& id, const Json& body,
                                          const std::string& token) {
  const auto session = find(id);
  if (!session) return error(404, "unknown game " + id);
  std::lock_guard lock(session->mutex);
  if (!token.empty()) {
    if (const auto it = session->tokens.find(token); it != session->tokens.end()) return it->second;
  }
  if (!body.contains("n")) throw DomainError("missing \"n\"");
  const Rational n = rational_from_json(body["n"]);
  if (!n.is_natural()) throw DomainError("moves are naturals, got " + n.str());

  ServiceResponse response;
  const GameState& g = session->state;
  if (g.status() != GameStatus::ongoing) {
    response = error(409, "game is over");
  } else if (g.turn() != Side::breaker) {
    response = error(409, "it is not Breaker's turn");
  } else if (g.occupied(n)) {
    response = error(409, n.str() + " is already taken");
  } else {
    session->record(n);
    session->maker_reply();
    response = {200, session->json()};
    persist("breaker-move", response.body);
  }
  if (!token.empty()) session->tokens.emplace(token, response);
  return response;
}

ServiceResponse GameService::classify(const std::string& s) {
  return {200, classify_response(Pattern::parse(s))};
}

ServiceResponse GameService::trees(const Json& body) {
  if (!body.contains("s")) throw DomainError("missing \"s\"");
  return {200, tree_response(pattern_from_json(body["s"]), body.value("realize", true))};
}

ServiceResponse GameService::handle(const ServiceRequest& request) {
  try {
    const std::string& path = request.path;
    const std::string games = "/api/games";
    if (request.method == "OPTIONS") return {204, Json()};
    if (path == games || path == games + "/") {
      if (request.method != "POST") return error(405, "use POST");
      const Json body = parse_body(request.body);
      std::string token = request.request_token;
      if (token.empty() && body.contains("request_token")) token = body["request_token"].get<std::string>();
      return create_game(body, token);
    }
    if (path.rfind(games + "/", 0) == 0) {
      std::string rest = path.substr(games.size() + 1);
      const std::string suffix = "/breaker-move";
      if (rest.size() > suffix.size() && rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) == 0) {
        if (request.method != "POST") return error(405, "use POST");
        const Json body = parse_body(request.body);
        std::string token = request.request_token;
        if (token.empty() && body.contains("request_token")) token = body["request_token"].get<std::string>();
        return breaker_move(rest.substr(0, rest.size() - suffix.size()), body, token);
      }
      if (rest.find('/') != std::string::npos) return error(404, "not found");
      if (request.method != "GET") return error(405, "use GET");
      return get_game(rest);
    }
    if (path == "/api/classify") {
      if (request.method != "GET") return error(405, "use GET");
      const auto it = request.query.find("s");
      if (it == request.query.end()) throw DomainError("missing query parameter s");
      return classify(it->second);
    }
    if (path == "/api/trees") {
      if (request.method != "POST") return error(405, "use POST");
      return trees(parse_body(request.body));
    }
    return error(404, "not found");
  } catch (const Json::exception& e) {
    return error(400, std::string("malformed request: ") + e.what());
  } catch (const DomainError& e) {
    return error(400, e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

struct HttpServer::Impl {
  GameService& service;
  httplib::Server server;

  explicit Impl(GameService& s) : service(s) {
    const auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      ServiceRequest r;
      r.method = req.method;
      r.path = req.path;
      for (const auto& [k, v] : req.params) r.query.emplace(k, v);
      r.body = req.body;
      r.request_token = req.get_header_value("Idempotency-Key");
      const ServiceResponse out = service.handle(r);
      res.status = out.status;
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type, Idempotency-Key");
      if (out.status != 204) res.set_content(out.body.dump(), "application/json");
    };
    server.Get(".*", handler);
    server.Post(".*", handler);
    server.Options(".*", handler);
  }
};

HttpServer::HttpServer(GameService& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }
void HttpServer::stop() { impl_->server.stop(); }

}  // namespace affmb
