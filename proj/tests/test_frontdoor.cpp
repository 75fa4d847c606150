#include <doctest.h>
#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "affmb/frontdoor.hpp"
#include "support.hpp"

using namespace affmb;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;

  // The JSON document after the summary line.
  Json json() const {
    const auto brace = out.find('{');
    REQUIRE(brace != std::string::npos);
    return Json::parse(out.substr(brace));
  }
};

CliRun cli(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  const int code = run_cli(args, out, err, in);
  return {code, out.str(), err.str()};
}

ServiceResponse post(GameService& svc, const std::string& path, const Json& body, const std::string& token = "") {
  return svc.handle({"POST", path, {}, body.dump(), token});
}

ServiceResponse get(GameService& svc, const std::string& path, std::map<std::string, std::string> query = {}) {
  return svc.handle({"GET", path, std::move(query), "", ""});
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("affmb-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli classify and tree") {
  const CliRun c = cli({"classify", "--set", "1,2,3,5"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("classify", 0) == 0);
  CHECK(c.json()["classification"]["kind"] == "geometric_2n");
  CHECK(c.json()["classification"]["k"] == "2");
  CHECK(c.json()["claimed_moves"] == 4);

  const CliRun t = cli({"tree", "--set", "0,2,3,6", "--realize"});
  CHECK(t.code == 0);
  CHECK(t.json()["claimed_moves"] == 5);
  CHECK(t.json()["validation"]["valid"] == true);
  CHECK(t.json().contains("realized"));

  CHECK(cli({"classify", "--set", "1,1,x"}).code == 2);
  CHECK(cli({"tree", "--set", "1,2,3,4,5"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli tree output round-trips through verify") {
  const auto dir = temp_dir("verify");
  std::filesystem::create_directories(dir);
  const std::string file = (dir / "tree.json").string();
  REQUIRE(cli({"tree", "--set", "1,2,3,4", "--out", file}).code == 0);
  const CliRun ok = cli({"verify", "--tree", file, "--set", "1,2,3,4", "--moves", "4"});
  CHECK(ok.code == 0);
  const CliRun bad = cli({"verify", "--tree", file, "--set", "1,2,3,5", "--moves", "4"});
  CHECK(bad.code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli play, solve and appendix") {
  const CliRun p = cli({"play", "--set", "1,2,3,4", "--breaker", "random", "--seed", "7"});
  CHECK(p.code == 0);
  CHECK(p.json()["status"] == "maker_won");

  const CliRun h = cli({"play", "--set", "0,1,3", "--breaker", "human"}, "100\n101\n102\n");
  CHECK(h.code == 0);
  CHECK(h.json()["status"] == "maker_won");

  const CliRun s = cli({"solve", "--set", "1,2,3", "--board", "0..12", "--max-moves", "3"});
  CHECK(s.code == 0);
  CHECK(s.json()["min_maker_moves"] == 3);
  const CliRun none = cli({"solve", "--set", "0,1,2,5", "--board", "tree", "--max-moves", "4"});
  CHECK(none.code == 0);
  CHECK(none.json()["min_maker_moves"].is_null());
  CHECK(none.json()["board_relative"] == true);

  const CliRun a = cli({"appendix", "--pair", "1,2"});
  CHECK(a.code == 0);
  CHECK(a.out.find("(3,1,2)") != std::string::npos);
}

TEST_CASE("classify and trees are identical over CLI and HTTP") {
  GameService svc;
  for (const char* s : {"1,2,3,5", "0,2,3,6", "0,1,3", "4,9", "1,2,4,8"}) {
    const ServiceResponse r = get(svc, "/api/classify", {{"s", s}});
    CHECK(r.status == 200);
    CHECK(r.body.dump(2) == cli({"classify", "--set", s}).json().dump(2));
    const ServiceResponse t = post(svc, "/api/trees", Json{{"s", s}});
    CHECK(t.status == 200);
    CHECK(t.body.dump(2) == cli({"tree", "--set", s, "--realize"}).json().dump(2));
  }
  CHECK(get(svc, "/api/classify", {{"s", "1,2,3,4,5"}}).status == 200);
  CHECK(post(svc, "/api/trees", Json{{"s", "1,2,3,4,5"}}).status == 400);
}

TEST_CASE("game sessions") {
  GameService svc;
  const ServiceResponse created = post(svc, "/api/games", Json{{"s", "1,2,3,4"}, {"breaker", "human"}});
  REQUIRE(created.status == 201);
  const Json& g = created.body;
  const std::string id = g["id"];
  const Json& tree = g["tree"];
  CHECK(g["awaiting"] == "breaker");
  CHECK(g["state"]["maker"].size() == 1);
  CHECK(rational_from_json(g["state"]["maker"][0]) ==
        rational_from_json(tree["vertices"][tree["root"].get<std::size_t>()]["label"]));

  const Json maker0 = g["state"]["maker"][0];
  CHECK(post(svc, "/api/games/" + id + "/breaker-move", Json{{"n", maker0}}).status == 409);
  CHECK(post(svc, "/api/games/" + id + "/breaker-move", Json{{"n", "1/2"}}).status == 400);
  CHECK(post(svc, "/api/games/" + id + "/breaker-move", Json::object()).status == 400);
  CHECK(post(svc, "/api/games/nope/breaker-move", Json{{"n", 5}}).status == 404);
  CHECK(get(svc, "/api/games/nope").status == 404);
  CHECK(get(svc, "/api/games/" + id + "/breaker-move").status == 405);
  CHECK(get(svc, "/api/nothing").status == 404);
  CHECK(svc.handle({"POST", "/api/games", {}, "{not json", ""}).status == 400);
  CHECK(svc.handle({"OPTIONS", "/api/games", {}, "", ""}).status == 204);

  // Human Breaker blocks the most threatened point, else plays far away.
  Json state = g;
  int far = 1000;
  while (state["state"]["status"] == "ongoing") {
    Json n = far++;
    if (!state["threats"].empty()) n = state["threats"].back()["n"];
    const ServiceResponse r = post(svc, "/api/games/" + id + "/breaker-move", Json{{"n", n}});
    REQUIRE(r.status == 200);
    state = r.body;
  }
  CHECK(state["state"]["status"] == "maker_won");
  CHECK(state["state"]["maker"].size() <= 4);
  CHECK(state["awaiting"].is_null());
  CHECK(post(svc, "/api/games/" + id + "/breaker-move", Json{{"n", 5000}}).status == 409);
  CHECK(get(svc, "/api/games/" + id).body.dump() == state.dump());
}

TEST_CASE("automatic Breaker policies finish on creation") {
  GameService svc;
  const ServiceResponse r = post(svc, "/api/games", Json{{"s", "0,2,3,6"}, {"breaker", "greedy_threat"}});
  REQUIRE(r.status == 201);
  CHECK(r.body["state"]["status"] == "maker_won");
  CHECK(r.body["claimed_moves"] == 5);

  const ServiceResponse capped =
      post(svc, "/api/games", Json{{"s", "0,1,2,5"}, {"breaker", "unique"}, {"move_cap", 4}});
  REQUIRE(capped.status == 201);
  CHECK(capped.body["state"]["status"] == "move_capped");
  CHECK(post(svc, "/api/games", Json{{"s", "1,2,3,4,5"}}).status == 400);
}

TEST_CASE("idempotent requests") {
  GameService svc;
  const ServiceResponse a = post(svc, "/api/games", Json{{"s", "1,2,3"}}, "key-1");
  const ServiceResponse b = post(svc, "/api/games", Json{{"s", "1,2,3"}}, "key-1");
  CHECK(a.body["id"] == b.body["id"]);
  const ServiceResponse c = post(svc, "/api/games", Json{{"s", "1,2,3"}, {"request_token", "key-2"}});
  CHECK(c.body["id"] != a.body["id"]);

  const std::string id = a.body["id"];
  const std::string path = "/api/games/" + id + "/breaker-move";
  const ServiceResponse m1 = post(svc, path, Json{{"n", 900}}, "move-1");
  const ServiceResponse m2 = post(svc, path, Json{{"n", 900}}, "move-1");
  CHECK(m1.status == 200);
  CHECK(m2.status == 200);
  CHECK(m1.body.dump() == m2.body.dump());
  CHECK(post(svc, path, Json{{"n", 900}}, "move-2").status == 409);
}

TEST_CASE("sessions are persisted as JSON lines") {
  const auto dir = temp_dir("state");
  {
    GameService svc(dir);
    const ServiceResponse r = post(svc, "/api/games", Json{{"s", "1,2,3"}});
    post(svc, "/api/games/" + r.body["id"].get<std::string>() + "/breaker-move", Json{{"n", 700}});
  }
  std::ifstream in(dir / "sessions.jsonl");
  std::string line;
  std::vector<Json> events;
  while (std::getline(in, line)) events.push_back(Json::parse(line));
  REQUIRE(events.size() == 2);
  CHECK(events[0]["event"] == "create");
  CHECK(events[1]["event"] == "breaker-move");
  CHECK(events[0]["session"]["id"] == events[1]["session"]["id"]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("http server over a socket") {
  GameService svc;
  HttpServer server(svc);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  const auto c = client.Get("/api/classify?s=1,2,3,5");
  REQUIRE(c);
  CHECK(c->status == 200);
  CHECK(c->get_header_value("Access-Control-Allow-Origin") == "*");
  CHECK(Json::parse(c->body)["classification"]["kind"] == "geometric_2n");

  const auto g = client.Post("/api/games", {{"Idempotency-Key", "abc"}}, R"({"s":"1,2,3,4"})", "application/json");
  REQUIRE(g);
  CHECK(g->status == 201);
  const auto again = client.Post("/api/games", {{"Idempotency-Key", "abc"}}, R"({"s":"1,2,3,4"})", "application/json");
  REQUIRE(again);
  CHECK(Json::parse(again->body)["id"] == Json::parse(g->body)["id"]);

  const auto missing = client.Get("/api/games/zzz");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  server.stop();
  worker.join();
}
