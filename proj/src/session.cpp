#include "ufg/session.hpp"

#include <cstdio>

#include "ufg/errors.hpp"
#include "ufg/json_io.hpp"

namespace ufg {

using nlohmann::json;

namespace {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json history_json(const std::vector<HistoryEntry>& history) {
  json out = json::array();
  for (const auto& h : history) {
    out.push_back({{"generation", h.generation},
                   {"selector", to_string(h.selector)},
                   {"selected", json::array({h.selected[0], h.selected[1]})}});
  }
  return out;
}

}  // namespace

const char* to_string(Selector s) noexcept { return s == Selector::Human ? "Human" : "Agent"; }
const char* to_string(SessionStatus s) noexcept { return s == SessionStatus::Active ? "Active" : "Finished"; }

Session::Session(std::string id, GaParams params, AgentPolicy policy)
    : id_(std::move(id)), params_(params), policy_(policy) {
  params_.validate();
  policy_.validate();
  current_ = init_population(params_);
}

int Session::human_rounds() const noexcept {
  int n = 0;
  for (const auto& h : history_) n += h.selector == Selector::Human;
  return n;
}

Selector Session::turn() const {
  return should_agent_act(policy_, current_.index, corpus_.size()) ? Selector::Agent : Selector::Human;
}

void Session::require_active() const {
  if (status_ == SessionStatus::Finished) throw StateError("session " + id_ + " is finished");
}

void Session::step(SelectedPair selected, Selector selector) {
  require_active();
  validate_selection(selected);

  if (selector == Selector::Human) {
    for (const auto& c : current_.candidates) {
      const bool chosen = c.id == selected[0] || c.id == selected[1];
      corpus_.push_back({c.features, chosen ? Label::Preferred : Label::Rejected, current_.index});
    }
    tree_ = train(corpus_);
  }
  history_.push_back({current_.index, selector, selected});
  current_ = next_generation(current_, selected, params_);
  if (current_.index >= params_.max_iterations) status_ = SessionStatus::Finished;
}

SelectedPair Session::run_agent_round() {
  require_active();
  if (!tree_) throw StateError("intent agent has no training data yet");
  const SelectedPair pick = agent_select(*tree_, current_);
  step(pick, Selector::Agent);
  return pick;
}

void Session::submit_selection(SelectedPair selected) {
  require_active();
  validate_selection(selected);
  if (turn() != Selector::Human) throw WrongTurnError("generation " + std::to_string(current_.index) + " belongs to the intent agent");
  step(selected, Selector::Human);
  while (status_ == SessionStatus::Active && turn() == Selector::Agent) run_agent_round();
}

std::string Session::history_digest() const { return fnv1a_hex(history_json(history_).dump()); }

json Session::export_level(int candidate_id) const {
  if (candidate_id < 0 || candidate_id >= static_cast<int>(current_.candidates.size())) {
    throw NotFoundError("no candidate " + std::to_string(candidate_id));
  }
  const Candidate& c = current_.candidates[static_cast<std::size_t>(candidate_id)];
  json meta = {{"session", id_},
               {"generation", current_.index},
               {"candidate", candidate_id},
               {"history_digest", history_digest()},
               {"genome_length", kGenomeLength},
               {"prefab_count", kPrefabCount}};
  return level_to_json(c.layout, std::move(meta));
}

json Session::transcript() const {
  return {{"id", id_},
          {"params", to_json(params_)},
          {"policy", to_json(policy_)},
          {"history", history_json(history_)},
          {"status", to_string(status_)}};
}

json Session::state_view() const {
  json candidates = json::array();
  for (const auto& c : current_.candidates) {
    candidates.push_back({{"id", c.id},
                          {"level", level_to_json(c.layout)},
                          {"features", to_json(c.features)},
                          {"playability", to_json(c.report)},
                          {"gate_warning", c.gate_warning}});
  }
  json view = {{"id", id_},
               {"status", to_string(status_)},
               {"generation", current_.index},
               {"turn", status_ == SessionStatus::Active ? json(to_string(turn())) : json(nullptr)},
               {"params", to_json(params_)},
               {"policy", to_json(policy_)},
               {"history", history_json(history_)},
               {"human_rounds", human_rounds()},
               {"corpus_size", corpus_.size()},
               {"candidates", std::move(candidates)}};
  view["parent_ids"] = current_.parent_ids ? json(*current_.parent_ids) : json(nullptr);
  return view;
}

Session Session::replay(const json& transcript) {
  try {
    Session s(transcript.at("id").get<std::string>(), ga_params_from_json(transcript.at("params")),
              agent_policy_from_json(transcript.at("policy")));
    for (const auto& entry : transcript.at("history")) {
      const auto selected = entry.at("selected").get<SelectedPair>();
      const std::string who = entry.at("selector").get<std::string>();
      if (entry.at("generation").get<int>() != s.current().index) throw EncodingError("transcript generation out of order");
      if (who == "Agent") {
        if (s.run_agent_round() != selected) throw EncodingError("agent selection did not reproduce");
      } else if (who == "Human") {
        if (s.turn() != Selector::Human) throw EncodingError("transcript has a human pick on an agent round");
        s.step(selected, Selector::Human);
      } else {
        throw EncodingError("unknown selector '" + who + "'");
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw EncodingError(std::string("transcript: ") + e.what());
  }
}

}  // namespace ufg
