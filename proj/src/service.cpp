#include "juniper/service.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "juniper/errors.hpp"

namespace juniper {

using nlohmann::json;

ClassificationCache::ClassificationCache(ClassifierOptions options) : classifier_(std::move(options)) {}

ClassificationReport ClassificationCache::report(int n) {
  std::lock_guard lock(mutex_);
  return classifier_.classify(n);
}

std::optional<PairingCertificate> ClassificationCache::certificate(int n) {
  std::lock_guard lock(mutex_);
  return classifier_.effective_certificate(n);
}

// ---------------------------------------------------------------------------

Engine::Engine(int n, bool engine_first, const EngineConfig& config, ClassificationCache& classes)
    : n_(n), config_(config), graph_(n) {
  if (n <= config.exact_threshold) {
    exact_ = std::make_unique<Solver>(graph_);
    source_ = "solver";
    return;
  }
  source_ = "fallback";
  const ClassificationReport report = classes.report(n);
  if (!report.verdict || (*report.verdict == Outcome::Win) != engine_first) return;

  if (const auto* plan = std::get_if<ThreePrimePlan>(&report.evidence)) {
    opening_ = plan->opening;
    policy_ = three_prime_policy(*plan);
  } else if (const auto* script = std::get_if<TwoPrimeScript>(&report.evidence)) {
    opening_ = script->opening();
    policy_ = script_to_policy(*script, n);
  } else if (auto cert = classes.certificate(n)) {
    opening_ = cert->first_move;
    policy_ = pairing_policy(*cert);
  }
  if (policy_) source_ = to_string(report.method);
}

std::optional<int> Engine::choose(const Position& p) {
  if (legal_moves(graph_, p).empty()) return std::nullopt;
  if (exact_) return exact_->best_move(p);
  if (policy_) {
    if (!p.current) {
      if (opening_ && is_legal_move(p, *opening_)) return opening_;
    } else if (const auto reply = policy_(p); reply && is_legal_move(p, *reply)) {
      return reply;
    }
  }
  return fallback(p);
}

std::optional<int> Engine::fallback(const Position& p) {
  SolverOptions opts;
  opts.node_budget = config_.fallback_budget;
  Solver solver(graph_, opts);
  if (const auto move = solver.best_move(p)) return move;
  // Out of budget: leave the opponent as few answers as possible.
  const std::vector<int> moves = legal_moves(graph_, p);
  int best = moves.front();
  int best_answers = INT32_MAX;
  for (int m : moves) {
    VertexSet rest = p.remaining;
    rest.reset(m);
    const int answers = (graph_.neighbor_set(m) & rest).count();
    if (answers < best_answers) {
      best = m;
      best_answers = answers;
    }
  }
  return best;
}

std::pair<std::optional<int>, std::optional<bool>> Engine::hint(const Position& p) {
  if (legal_moves(graph_, p).empty()) return {std::nullopt, false};
  if (exact_) {
    const SolveResult r = exact_->solve(p);
    return {exact_->best_move(p), r.verdict == Outcome::Win};
  }
  SolverOptions opts;
  opts.node_budget = config_.fallback_budget;
  Solver solver(graph_, opts);
  const SolveResult r = solver.solve(p);
  if (r.verdict) return {solver.best_move(p), *r.verdict == Outcome::Win};
  return {fallback(p), std::nullopt};
}

// ---------------------------------------------------------------------------

std::string to_string(GameStatus s) {
  switch (s) {
    case GameStatus::Ongoing: return "ongoing";
    case GameStatus::HumanWon: return "human_won";
    case GameStatus::EngineWon: return "engine_won";
  }
  return "unknown";
}

json to_json(const GraphDocument& doc) {
  json nodes = json::array();
  for (const auto& node : doc.nodes) {
    nodes.push_back({{"number", node.number},
                     {"remaining", node.remaining},
                     {"used", node.used},
                     {"current", node.current}});
  }
  json edges = json::array();
  for (auto [a, b] : doc.edges) edges.push_back({a, b});
  return {{"n", doc.n}, {"nodes", nodes}, {"edges", edges}};
}

json to_json(const ClassificationReport& report) {
  json out = {{"n", report.n},
              {"symbol", report.symbol()},
              {"method", to_string(report.method)},
              {"verified", report.verified},
              {"script", report.is_script()},
              {"detail", report.detail}};
  out["verdict"] = report.verdict ? json(std::string(1, to_gp(*report.verdict))) : json(nullptr);
  const std::optional<int> opening = report.opening();
  out["opening"] = opening ? json(*opening) : json(nullptr);
  return out;
}

namespace {

ApiResult error(int status, const std::string& message) { return {status, {{"error", message}}}; }

std::optional<int> int_field(const json& request, const char* key) {
  if (!request.is_object() || !request.contains(key) || !request[key].is_number_integer()) return std::nullopt;
  return request[key].get<int>();
}

}  // namespace

GameService::GameService(ServiceConfig config) : config_(std::move(config)), classes_(config_.classifier) {
  id_state_ = config_.id_seed != 0 ? config_.id_seed : (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
  if (config_.history_dir) std::filesystem::create_directories(*config_.history_dir);
}

std::string GameService::new_id() {
  std::lock_guard lock(store_mutex_);
  // splitmix64
  std::uint64_t z = (id_state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << z;
  return out.str();
}

void GameService::remember(const std::shared_ptr<GameSession>& s) {
  std::lock_guard lock(store_mutex_);
  if (const auto it = index_.find(s->id); it != index_.end()) lru_.erase(it->second);
  lru_.push_front(s);
  index_[s->id] = lru_.begin();
  while (lru_.size() > config_.max_sessions) {
    index_.erase(lru_.back()->id);
    lru_.pop_back();
  }
}

std::shared_ptr<GameSession> GameService::find(const std::string& id) {
  {
    std::lock_guard lock(store_mutex_);
    if (const auto it = index_.find(id); it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return *it->second;
    }
  }
  auto restored = restore(id);
  if (restored) remember(restored);
  return restored;
}

std::shared_ptr<GameSession> GameService::restore(const std::string& id) {
  if (!config_.history_dir) return nullptr;
  if (id.empty() || id.find_first_not_of("0123456789abcdef") != std::string::npos) return nullptr;
  std::ifstream in(*config_.history_dir / (id + ".log"));
  if (!in) return nullptr;
  std::string tag, side;
  int n = 0;
  if (!(in >> tag >> n >> side) || tag != "game" || n < 2 || n > config_.max_n) return nullptr;
  auto s = std::make_shared<GameSession>();
  s->id = id;
  s->n = n;
  s->human_first = side == "first";
  s->position = initial_position(n, true);
  s->engine = std::make_unique<Engine>(n, !s->human_first, config_.engine, classes_);
  std::string word;
  int move = 0;
  try {
    while (in >> word >> move) {
      if (word != "move") return nullptr;
      play(*s, move);
    }
  } catch (const IllegalMove&) {
    return nullptr;
  }
  return s;
}

void GameService::log_line(const GameSession& s, const std::string& line) {
  if (!config_.history_dir) return;
  std::ofstream out(*config_.history_dir / (s.id + ".log"), std::ios::app);
  out << line << '\n';
}

std::size_t GameService::session_count() {
  std::lock_guard lock(store_mutex_);
  return lru_.size();
}

void GameService::play(GameSession& s, int move) {
  s.position = apply_move(s.position, move);
  s.history.push_back(move);
  if (legal_moves(DivisorGraph(s.n), s.position).empty()) {
    const bool human_moved = (s.history.size() % 2 == 1) == s.human_first;
    s.status = human_moved ? GameStatus::HumanWon : GameStatus::EngineWon;
  }
}

void GameService::engine_turn(GameSession& s) {
  const std::optional<int> move = s.engine->choose(s.position);
  if (!move) return;
  play(s, *move);
  log_line(s, "move " + std::to_string(*move));
}

json GameService::state(const GameSession& s) const {
  const bool human_to_move = (s.history.size() % 2 == 0) == s.human_first;
  json legal = json::array();
  if (s.status == GameStatus::Ongoing && human_to_move) {
    for (int m : legal_moves(DivisorGraph(s.n), s.position)) legal.push_back(m);
  }
  json to_move = nullptr;
  if (s.status == GameStatus::Ongoing) to_move = human_to_move ? "human" : "engine";
  return {{"id", s.id},
          {"n", s.n},
          {"human_side", s.human_first ? "first" : "second"},
          {"history", s.history},
          {"legal_moves", legal},
          {"status", to_string(s.status)},
          {"to_move", to_move},
          {"engine_source", s.engine->source()}};
}

ApiResult GameService::create_game(const json& request) {
  const std::optional<int> n = int_field(request, "n");
  if (!n) return error(400, "expected an integer field 'n'");
  if (*n < 2 || *n > config_.max_n) {
    return error(400, "n must be between 2 and " + std::to_string(config_.max_n));
  }
  std::string side = "first";
  if (request.contains("human_side")) {
    if (!request["human_side"].is_string()) return error(400, "human_side must be \"first\" or \"second\"");
    side = request["human_side"].get<std::string>();
  }
  if (side != "first" && side != "second") return error(400, "human_side must be \"first\" or \"second\"");

  auto s = std::make_shared<GameSession>();
  s->id = new_id();
  s->n = *n;
  s->human_first = side == "first";
  s->position = initial_position(*n, true);
  s->engine = std::make_unique<Engine>(*n, !s->human_first, config_.engine, classes_);
  std::lock_guard lock(s->mutex);
  log_line(*s, "game " + std::to_string(*n) + " " + side);
  json engine_move = nullptr;
  if (!s->human_first) {
    engine_turn(*s);
    if (!s->history.empty()) engine_move = s->history.back();
  }
  remember(s);
  json body = state(*s);
  body["engine_move"] = engine_move;
  return {201, body};
}

ApiResult GameService::get_game(const std::string& id) {
  const auto s = find(id);
  if (!s) return error(404, "unknown game " + id);
  std::lock_guard lock(s->mutex);
  return {200, state(*s)};
}

ApiResult GameService::post_move(const std::string& id, const json& request) {
  const std::optional<int> number = int_field(request, "number");
  if (!number) return error(400, "expected an integer field 'number'");
  const auto s = find(id);
  if (!s) return error(404, "unknown game " + id);
  std::lock_guard lock(s->mutex);
  if (s->status != GameStatus::Ongoing) {
    ApiResult r = error(409, "game is over");
    r.body["legal_moves"] = json::array();
    r.body["status"] = to_string(s->status);
    return r;
  }
  const std::vector<int> legal = legal_moves(DivisorGraph(s->n), s->position);
  if (!is_legal_move(s->position, *number)) {
    ApiResult r = error(409, "illegal move " + std::to_string(*number));
    r.body["legal_moves"] = legal;
    return r;
  }
  play(*s, *number);
  log_line(*s, "move " + std::to_string(*number));
  json engine_move = nullptr;
  if (s->status == GameStatus::Ongoing) {
    engine_turn(*s);
    engine_move = s->history.back();
  }
  json body = state(*s);
  body["accepted"] = true;
  body["move"] = *number;
  body["engine_move"] = engine_move;
  return {200, body};
}

ApiResult GameService::hint(const std::string& id) {
  const auto s = find(id);
  if (!s) return error(404, "unknown game " + id);
  std::lock_guard lock(s->mutex);
  json body = {{"id", s->id}, {"status", to_string(s->status)}, {"move", nullptr}, {"winning", nullptr}};
  if (s->status != GameStatus::Ongoing) return {200, body};
  const auto [move, winning] = s->engine->hint(s->position);
  if (move) body["move"] = *move;
  if (winning) body["winning"] = *winning;
  return {200, body};
}

ApiResult GameService::graph(const std::string& id) {
  const auto s = find(id);
  if (!s) return error(404, "unknown game " + id);
  std::lock_guard lock(s->mutex);
  const DivisorGraph g(s->n);
  json body = to_json(export_graph(g, s->position));
  body["legal_moves"] = state(*s)["legal_moves"];
  return {200, body};
}

ApiResult GameService::classification(int n) {
  if (n < 1 || n > config_.max_n) return error(400, "n must be between 1 and " + std::to_string(config_.max_n));
  return {200, to_json(classes_.report(n))};
}

// ---------------------------------------------------------------------------

namespace {

void reply(httplib::Response& res, const ApiResult& result) {
  res.status = result.status;
  res.set_content(result.body.dump(), "application/json");
}

template <typename F>
void with_body(const httplib::Request& req, httplib::Response& res, F&& f) {
  json body = json::object();
  if (!req.body.empty()) {
    body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
      reply(res, error(400, "request body is not valid JSON"));
      return;
    }
  }
  reply(res, f(body));
}

void install_routes(httplib::Server& server, GameService& service) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Post("/games", [&service](const httplib::Request& req, httplib::Response& res) {
    with_body(req, res, [&](const json& body) { return service.create_game(body); });
  });
  server.Get(R"(/games/([0-9a-z]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.get_game(req.matches[1]));
  });
  server.Post(R"(/games/([0-9a-z]+)/moves)", [&service](const httplib::Request& req, httplib::Response& res) {
    with_body(req, res, [&](const json& body) { return service.post_move(req.matches[1], body); });
  });
  server.Get(R"(/games/([0-9a-z]+)/hint)", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.hint(req.matches[1]));
  });
  server.Get(R"(/games/([0-9a-z]+)/graph)", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.graph(req.matches[1]));
  });
  server.Get(R"(/classification/(\d+))", [&service](const httplib::Request& req, httplib::Response& res) {
    const std::string digits = req.matches[1];
    if (digits.size() > 9) {
      reply(res, error(400, "n is too large"));
      return;
    }
    reply(res, service.classification(std::stoi(digits)));
  });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    reply(res, error(500, what));
  });
}

}  // namespace

bool serve_http(GameService& service, const std::string& host, int port) {
  httplib::Server server;
  install_routes(server, service);
  return server.listen(host, port);
}

struct HttpServer::Impl {
  httplib::Server server;
  std::thread thread;
};

HttpServer::HttpServer(GameService& service) : impl_(std::make_unique<Impl>()) {
  install_routes(impl_->server, service);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) throw Error("could not bind an HTTP port");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace juniper
