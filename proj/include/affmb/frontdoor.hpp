#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "affmb/serialize.hpp"

namespace affmb {

// Response bodies shared by the CLI and the HTTP service.
Json classify_response(const Pattern& s);
Json tree_response(const Pattern& s, bool realized);

struct ServiceRequest {
  std::string method;  // GET, POST, OPTIONS
  std::string path;    // without the query string
  std::map<std::string, std::string> query;
  std::string body;
  std::string request_token;  // Idempotency-Key header, if any
};

struct ServiceResponse {
  int status = 200;
  Json body;
};

// In-memory game sessions behind the HTTP API. Thread-safe; mutations on one
// session are serialized, different sessions proceed independently.
class GameService {
 public:
  // With a state directory every session snapshot is appended to
  // <dir>/sessions.jsonl.
  explicit GameService(std::optional<std::filesystem::path> state_dir = std::nullopt);
  ~GameService();
  GameService(const GameService&) = delete;
  GameService& operator=(const GameService&) = delete;

  ServiceResponse handle(const ServiceRequest& request);

  ServiceResponse create_game(const Json& body, const std::string& token);
  ServiceResponse get_game(const std::string& id);
  ServiceResponse breaker_move(const std::string& id, const Json& body, const std::string& token);
  ServiceResponse classify(const std::string& s);
  ServiceResponse trees(const Json& body);

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id);
  void persist(const std::string& event, const Json& session);
  std::string fresh_id();

  std::optional<std::filesystem::path> state_dir_;
  std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex create_tokens_mutex_;
  std::map<std::string, ServiceResponse> create_tokens_;
  std::mutex persist_mutex_;
  std::mutex id_mutex_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t id_salt_;
};

// HTTP transport for a GameService, with CORS enabled.
class HttpServer {
 public:
  explicit HttpServer(GameService& service);
  ~HttpServer();
  // Port 0 picks a free port. Returns the bound port, or -1 on failure.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Runs the command-line interface. Returns the process exit code: 0 on
// success, 2 on domain errors (bad input, failed verification), 1 otherwise.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in);

}  // namespace affmb
