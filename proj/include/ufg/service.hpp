#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "ufg/session.hpp"

namespace httplib {
class Server;
}

namespace ufg {

/// Thread-safe registry of sessions backed by one JSON document per session
/// in `data_dir`. Each session has its own mutex; reads return the last
/// persisted snapshot without waiting on an in-flight mutation.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path data_dir);

  /// Returns {id, state}. Throws ConfigError for invalid params.
  nlohmann::json create(const nlohmann::json& request);
  [[nodiscard]] nlohmann::json state(const std::string& id);
  nlohmann::json submit(const std::string& id, SelectedPair selected);
  [[nodiscard]] nlohmann::json export_level(const std::string& id, int candidate);
  [[nodiscard]] nlohmann::json history(const std::string& id);

  [[nodiscard]] const std::filesystem::path& data_dir() const noexcept { return dir_; }

 private:
  struct Entry {
    explicit Entry(Session s) : session(std::move(s)) {}
    std::mutex write;
    Session session;
    std::mutex snap_mutex;
    std::shared_ptr<const nlohmann::json> snapshot;
  };

  std::shared_ptr<Entry> find(const std::string& id);
  void persist(Entry& entry);
  std::shared_ptr<const nlohmann::json> snapshot(Entry& entry);
  [[nodiscard]] std::filesystem::path path_for(const std::string& id) const;
  std::string fresh_id();

  std::filesystem::path dir_;
  std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

/// Data directory: UFG_DATA if set, otherwise `fallback`.
[[nodiscard]] std::filesystem::path resolve_data_dir(const std::filesystem::path& fallback);

/// Installs the HTTP routes on `server`.
void register_routes(httplib::Server& server, SessionStore& store);

}  // namespace ufg
