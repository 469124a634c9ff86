#pragma once

#include <cstdint>
#include <filesystem>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "juniper/classify.hpp"
#include "juniper/divisor_graph.hpp"
#include "juniper/solver.hpp"

namespace juniper {

inline ClassifierOptions verified_classifier_options() {
  ClassifierOptions options;
  options.effort = Effort::Verified;
  return options;
}

struct EngineConfig {
  /// Up to this n the engine plays exact solver moves.
  int exact_threshold = 48;
  /// Node budget for fallback searches above the threshold.
  std::uint64_t fallback_budget = 200'000;
};

/// Thread-safe front for a shared Classifier.
class ClassificationCache {
 public:
  explicit ClassificationCache(ClassifierOptions options = verified_classifier_options());
  ClassificationReport report(int n);
  std::optional<PairingCertificate> certificate(int n);

 private:
  std::mutex mutex_;
  Classifier classifier_;
};

/// Move chooser for one game. Deterministic for a given configuration.
class Engine {
 public:
  Engine(int n, bool engine_first, const EngineConfig& config, ClassificationCache& classes);

  /// The engine's move at p, or nullopt if it has none.
  std::optional<int> choose(const Position& p);
  /// Best move for whoever is to move at p, and whether that side is
  /// known to be winning (nullopt when it could not be decided).
  std::pair<std::optional<int>, std::optional<bool>> hint(const Position& p);
  /// Where the engine's moves come from: "solver", a classification method,
  /// or "fallback" once play has left the evidence.
  const std::string& source() const { return source_; }

 private:
  std::optional<int> fallback(const Position& p);

  int n_;
  EngineConfig config_;
  DivisorGraph graph_;
  std::unique_ptr<Solver> exact_;
  std::optional<int> opening_;
  Policy policy_;
  std::string source_;
};

enum class GameStatus { Ongoing, HumanWon, EngineWon };
std::string to_string(GameStatus s);

struct GameSession {
  std::string id;
  int n = 0;
  bool human_first = true;
  Position position;
  std::vector<int> history;
  GameStatus status = GameStatus::Ongoing;
  std::unique_ptr<Engine> engine;
  std::mutex mutex;  // one writer per session
};

struct ServiceConfig {
  int max_n = 500;  // the search fallback handles n < 512
  std::size_t max_sessions = 1024;
  EngineConfig engine;
  /// When set, each session appends its moves to <dir>/<id>.log and evicted
  /// sessions are rebuilt from there.
  std::optional<std::filesystem::path> history_dir;
  ClassifierOptions classifier = verified_classifier_options();
  std::uint64_t id_seed = 0;  // 0 draws from std::random_device
};

struct ApiResult {
  int status = 200;
  nlohmann::json body;
};

/// The game service without the transport. Every call is safe to make from
/// several threads at once.
class GameService {
 public:
  explicit GameService(ServiceConfig config = {});

  ApiResult create_game(const nlohmann::json& request);
  ApiResult get_game(const std::string& id);
  ApiResult post_move(const std::string& id, const nlohmann::json& request);
  ApiResult hint(const std::string& id);
  ApiResult graph(const std::string& id);
  ApiResult classification(int n);

  std::size_t session_count();
  const ServiceConfig& config() const { return config_; }

 private:
  std::shared_ptr<GameSession> find(const std::string& id);
  std::shared_ptr<GameSession> restore(const std::string& id);
  void remember(const std::shared_ptr<GameSession>& s);
  std::string new_id();
  void play(GameSession& s, int move);
  void engine_turn(GameSession& s);
  void log_line(const GameSession& s, const std::string& line);
  nlohmann::json state(const GameSession& s) const;

  ServiceConfig config_;
  ClassificationCache classes_;
  std::mutex store_mutex_;
  std::list<std::shared_ptr<GameSession>> lru_;
  std::unordered_map<std::string, std::list<std::shared_ptr<GameSession>>::iterator> index_;
  std::uint64_t id_state_;
};

nlohmann::json to_json(const GraphDocument& doc);
nlohmann::json to_json(const ClassificationReport& report);

/// Serves HTTP on host:port until the process ends. Returns false if the
/// socket could not be bound.
bool serve_http(GameService& service, const std::string& host, int port);
/// Binds to a free port, starts serving on a background thread and returns
/// the port; for tests and embedding.
class HttpServer {
 public:
  explicit HttpServer(GameService& service);
  ~HttpServer();
  int start(const std::string& host = "127.0.0.1");
  void stop();

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace juniper
