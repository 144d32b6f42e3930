#include "ufg/service.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <httplib.h>

#include "ufg/errors.hpp"
#include "ufg/json_io.hpp"

namespace ufg {

using nlohmann::json;

namespace {

constexpr const char* kSessionFormat = "ufg-session/1";

bool valid_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw EncodingError("corrupt session file " + path.string() + ": " + e.what());
  }
}

}  // namespace

SessionStore::SessionStore(std::filesystem::path data_dir) : dir_(std::move(data_dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path SessionStore::path_for(const std::string& id) const { return dir_ / (id + ".json"); }

std::string SessionStore::fresh_id() {
  static std::atomic<std::uint64_t> counter{0};
  std::random_device rd;
  while (true) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^ (++counter * 0x9e3779b97f4a7c15ULL);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(bits));
    std::string id = buf;
    std::shared_lock lock(map_mutex_);
    if (!sessions_.count(id) && !std::filesystem::exists(path_for(id))) return id;
  }
}

void SessionStore::persist(Entry& entry) {
  const json doc = {{"format", kSessionFormat},
                    {"transcript", entry.session.transcript()},
                    {"generation", entry.session.current().index}};
  const auto target = path_for(entry.session.id());
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << dump_stable(doc);
    if (!out.flush()) throw StateError("failed to write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);

  auto snap = std::make_shared<const json>(json{{"state", entry.session.state_view()},
                                                {"transcript", entry.session.transcript()}});
  std::lock_guard lock(entry.snap_mutex);
  entry.snapshot = std::move(snap);
}

std::shared_ptr<const json> SessionStore::snapshot(Entry& entry) {
  std::lock_guard lock(entry.snap_mutex);
  return entry.snapshot;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) {
  if (!valid_id(id)) throw NotFoundError("unknown session '" + id + "'");
  {
    std::shared_lock lock(map_mutex_);
    if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
  }
  const auto path = path_for(id);
  if (!std::filesystem::exists(path)) throw NotFoundError("unknown session '" + id + "'");

  const json doc = read_file(path);
  auto entry = std::make_shared<Entry>(Session::replay(doc.at("transcript")));
  if (entry->session.current().index != doc.value("generation", -1)) {
    throw EncodingError("session " + id + " did not replay to its stored generation");
  }
  entry->snapshot = std::make_shared<const json>(
      json{{"state", entry->session.state_view()}, {"transcript", entry->session.transcript()}});

  std::unique_lock lock(map_mutex_);
  auto [it, inserted] = sessions_.emplace(id, entry);
  return it->second;
}

json SessionStore::create(const json& request) {
  if (!request.is_object() && !request.is_null()) throw ConfigError("request body must be an object");
  const json none;
  const GaParams params = ga_params_from_json(request.is_object() ? request.value("params", none) : none);
  const AgentPolicy policy = agent_policy_from_json(request.is_object() ? request.value("policy", none) : none);

  auto entry = std::make_shared<Entry>(Session(fresh_id(), params, policy));
  const std::string id = entry->session.id();
  persist(*entry);
  {
    std::unique_lock lock(map_mutex_);
    sessions_.emplace(id, entry);
  }
  return {{"id", id}, {"state", snapshot(*entry)->at("state")}};
}

json SessionStore::state(const std::string& id) { return snapshot(*find(id))->at("state"); }

json SessionStore::history(const std::string& id) { return snapshot(*find(id))->at("transcript"); }

json SessionStore::submit(const std::string& id, SelectedPair selected) {
  auto entry = find(id);
  std::lock_guard lock(entry->write);
  entry->session.submit_selection(selected);
  persist(*entry);
  return snapshot(*entry)->at("state");
}

json SessionStore::export_level(const std::string& id, int candidate) {
  auto entry = find(id);
  std::lock_guard lock(entry->write);
  return entry->session.export_level(candidate);
}

std::filesystem::path resolve_data_dir(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("UFG_DATA"); env && *env) return env;
  return fallback;
}

void register_routes(httplib::Server& server, SessionStore& store) {
  auto reply = [](httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(dump_stable(body), "application/json");
  };

  // Maps domain errors onto HTTP statuses.
  auto guarded = [reply](httplib::Response& res, auto&& body) {
    try {
      body();
    } catch (const NotFoundError& e) {
      reply(res, 404, {{"error", e.kind()}, {"message", e.what()}});
    } catch (const ConfigError& e) {
      reply(res, 422, {{"error", e.kind()}, {"message", e.what()}});
    } catch (const SelectionError& e) {
      reply(res, 422, {{"error", e.kind()}, {"message", e.what()}});
    } catch (const StateError& e) {
      reply(res, 409, {{"error", e.kind()}, {"message", e.what()}});
    } catch (const WrongTurnError& e) {
      reply(res, 409, {{"error", e.kind()}, {"message", e.what()}});
    } catch (const Error& e) {
      reply(res, 400, {{"error", e.kind()}, {"message", e.what()}});
    } catch (const json::exception& e) {
      reply(res, 400, {{"error", "bad_request"}, {"message", e.what()}});
    } catch (const std::logic_error& e) {
      reply(res, 400, {{"error", "bad_request"}, {"message", e.what()}});
    }
  };

  auto parse_body = [](const httplib::Request& req) {
    return req.body.empty() ? json::object() : json::parse(req.body);
  };

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/sessions", [&store, reply, guarded, parse_body](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 201, store.create(parse_body(req))); });
  });
  server.Get(R"(/sessions/([0-9a-f]+))", [&store, reply, guarded](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, store.state(req.matches[1])); });
  });
  server.Get(R"(/sessions/([0-9a-f]+)/history)",
             [&store, reply, guarded](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] { reply(res, 200, store.history(req.matches[1])); });
             });
  server.Get(R"(/sessions/([0-9a-f]+)/export/(\d+))",
             [&store, reply, guarded](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] { reply(res, 200, store.export_level(req.matches[1], std::stoi(req.matches[2]))); });
             });
  server.Post(R"(/sessions/([0-9a-f]+)/selection)",
              [&store, reply, guarded, parse_body](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  const json body = parse_body(req);
                  const json& ids = body.at("ids");
                  if (!ids.is_array() || ids.size() != 2) throw SelectionError("ids must be a pair");
                  reply(res, 200, store.submit(req.matches[1], {ids.at(0).get<int>(), ids.at(1).get<int>()}));
                });
              });
}

}  // namespace ufg
