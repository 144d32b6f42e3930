#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ufg/evo_engine.hpp"
#include "ufg/intent_agent.hpp"

namespace ufg {

enum class Selector { Human, Agent };
enum class SessionStatus { Active, Finished };

[[nodiscard]] const char* to_string(Selector s) noexcept;
[[nodiscard]] const char* to_string(SessionStatus s) noexcept;

struct HistoryEntry {
  int generation = 0;
  Selector selector = Selector::Human;
  SelectedPair selected{};

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// One interactive evolution run: the current generation plus everything
/// needed to reproduce it. Not thread-safe; owners serialize access.
class Session {
 public:
  Session(std::string id, GaParams params, AgentPolicy policy);

  [[nodiscard]] const std::string& id() const noexcept { return id_; }
  [[nodiscard]] const GaParams& params() const noexcept { return params_; }
  [[nodiscard]] const AgentPolicy& policy() const noexcept { return policy_; }
  [[nodiscard]] const Generation& current() const noexcept { return current_; }
  [[nodiscard]] const std::vector<HistoryEntry>& history() const noexcept { return history_; }
  [[nodiscard]] const std::vector<TrainingSample>& corpus() const noexcept { return corpus_; }
  [[nodiscard]] const std::optional<DecisionTree>& tree() const noexcept { return tree_; }
  [[nodiscard]] SessionStatus status() const noexcept { return status_; }
  [[nodiscard]] int human_rounds() const noexcept;

  /// Who owns the selection on the current generation.
  [[nodiscard]] Selector turn() const;

  /// Records one selection and breeds the next generation. Human rounds add
  /// 2 Preferred + 7 Rejected samples and retrain the tree. Does not check
  /// whose turn it is.
  void step(SelectedPair selected, Selector selector);

  /// Runs the intent agent on the current generation. Throws StateError
  /// when no tree has been trained yet.
  SelectedPair run_agent_round();

  /// Human entry point: validates the turn, steps, then plays any agent
  /// rounds until the next human round or the iteration limit.
  void submit_selection(SelectedPair selected);

  /// Level JSON of a current candidate; byte-stable for a given transcript.
  [[nodiscard]] nlohmann::json export_level(int candidate_id) const;
  /// Params, policy and ordered selections; enough to rebuild the session.
  [[nodiscard]] nlohmann::json transcript() const;
  /// Current generation with per-candidate level, features and report.
  [[nodiscard]] nlohmann::json state_view() const;
  /// FNV-1a digest of the selection history.
  [[nodiscard]] std::string history_digest() const;

  /// Replays a transcript. Throws EncodingError if a recorded agent
  /// selection does not reproduce.
  [[nodiscard]] static Session replay(const nlohmann::json& transcript);

 private:
  void require_active() const;

  std::string id_;
  GaParams params_;
  AgentPolicy policy_;
  Generation current_;
  std::vector<HistoryEntry> history_;
  std::vector<TrainingSample> corpus_;
  std::optional<DecisionTree> tree_;
  SessionStatus status_ = SessionStatus::Active;
};

}  // namespace ufg
