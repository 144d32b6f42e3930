#include <doctest.h>

#include "ufg/errors.hpp"
#include "ufg/json_io.hpp"
#include "ufg/session.hpp"
#include "ufg/sim_designer.hpp"

using namespace ufg;

namespace {

GaParams params_with_seed(std::uint64_t seed, int iterations = 10) {
  GaParams p;
  p.seed = seed;
  p.max_iterations = iterations;
  return p;
}

/// Drives a session to completion with a noise-free simulated designer.
void play_out(Session& s, std::uint64_t designer_seed) {
  const auto designer = make_designer(designer_seed, 0.0);
  while (s.status() == SessionStatus::Active) s.submit_selection(simulated_select(designer, s.current()));
}

std::string selector_string(const Session& s) {
  std::string out;
  for (const auto& h : s.history()) out += h.selector == Selector::Human ? 'H' : 'A';
  return out;
}

}  // namespace

TEST_CASE("default schedule over ten generations") {
  Session s("sched", params_with_seed(4), AgentPolicy{});
  play_out(s, 4);
  CHECK(selector_string(s) == "HHHAHAHAHA");
  CHECK(s.status() == SessionStatus::Finished);
  CHECK(s.current().index == 10);
  CHECK(s.human_rounds() == 6);
  CHECK(s.corpus().size() == 6u * 9u);
}

TEST_CASE("each human round adds two preferred and seven rejected") {
  Session s("corpus", params_with_seed(5), AgentPolicy{});
  const auto designer = make_designer(5, 0.02);
  std::size_t before = 0;
  while (s.status() == SessionStatus::Active) {
    s.submit_selection(simulated_select(designer, s.current()));
    const auto& corpus = s.corpus();
    REQUIRE((corpus.size() - before) % 9 == 0);
    for (std::size_t start = before; start < corpus.size(); start += 9) {
      int preferred = 0;
      for (std::size_t i = start; i < start + 9; ++i) preferred += corpus[i].label == Label::Preferred;
      CHECK(preferred == 2);
    }
    before = corpus.size();
    CHECK(s.current().candidates.size() == 9u);
  }
}

TEST_CASE("invalid selections are rejected without side effects") {
  Session s("bad", params_with_seed(1), AgentPolicy{});
  CHECK_THROWS_AS(s.submit_selection({4, 4}), SelectionError);
  CHECK_THROWS_AS(s.submit_selection({0, 9}), SelectionError);
  CHECK(s.history().empty());
  s.submit_selection({0, 1});
  CHECK(s.current().index >= 1);
}

TEST_CASE("human cannot pick on an agent round") {
  Session s("turns", params_with_seed(2), AgentPolicy{});
  for (int i = 0; i < 3; ++i) s.step({0, 1}, Selector::Human);
  REQUIRE(s.turn() == Selector::Agent);
  CHECK_THROWS_AS(s.submit_selection({2, 3}), WrongTurnError);
  CHECK(s.history().size() == 3u);
}

TEST_CASE("agent needs training data") {
  Session s("notree", params_with_seed(2), AgentPolicy{});
  CHECK_THROWS_AS((void)s.run_agent_round(), StateError);
}

TEST_CASE("finished sessions refuse selections") {
  Session s("done", params_with_seed(3, 10), AgentPolicy{});
  play_out(s, 3);
  CHECK_THROWS_AS(s.submit_selection({0, 1}), StateError);
  CHECK(s.state_view().at("turn").is_null());
}

TEST_CASE("twenty iteration sessions") {
  Session s("long", params_with_seed(6, 20), AgentPolicy{});
  play_out(s, 6);
  CHECK(s.history().size() == 20u);
  CHECK(s.human_rounds() == 11);  // 3 warmup + generations 4,6,...,18
}

TEST_CASE("replay reproduces exports byte for byte") {
  Session s("replay", params_with_seed(8), AgentPolicy{});
  play_out(s, 8);
  const auto transcript = s.transcript();
  const Session again = Session::replay(nlohmann::json::parse(dump_stable(transcript)));
  CHECK(again.history() == s.history());
  for (int id = 0; id < 9; ++id) CHECK(dump_stable(again.export_level(id)) == dump_stable(s.export_level(id)));
  CHECK(dump_stable(again.state_view()) == dump_stable(s.state_view()));
}

TEST_CASE("replay rejects a doctored agent pick") {
  Session s("tamper", params_with_seed(9), AgentPolicy{});
  play_out(s, 9);
  auto transcript = s.transcript();
  for (auto& h : transcript["history"]) {
    if (h["selector"] == "Agent") {
      const auto pick = h["selected"].get<SelectedPair>();
      h["selected"] = SelectedPair{pick[1], pick[0]};  // elite slots swapped
      break;
    }
  }
  CHECK_THROWS_AS((void)Session::replay(transcript), EncodingError);
}

TEST_CASE("exported levels carry schema constants") {
  Session s("export", params_with_seed(10), AgentPolicy{});
  s.submit_selection({2, 5});
  const auto doc = s.export_level(4);
  CHECK(doc.at("canvas") == 512);
  CHECK(doc.at("cell_size") == 25);
  CHECK(doc.at("meta").at("genome_length") == 1600);
  CHECK(doc.at("meta").at("prefab_count") == 12);
  CHECK(doc.at("meta").at("generation") == 1);
  CHECK(to_ascii(level_from_json(doc)) == to_ascii(s.current().candidates[4].layout));
  CHECK_THROWS_AS((void)s.export_level(9), NotFoundError);
}

TEST_CASE("state view lists candidates") {
  Session s("view", params_with_seed(11), AgentPolicy{});
  const auto view = s.state_view();
  CHECK(view.at("generation") == 0);
  CHECK(view.at("turn") == "Human");
  CHECK(view.at("candidates").size() == 9u);
  CHECK(view.at("parent_ids").is_null());
}
