#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numeric>

#include "ufg/errors.hpp"
#include "ufg/eval_agents.hpp"
#include "ufg/features.hpp"
#include "ufg/intent_agent.hpp"
#include "ufg/json_io.hpp"
#include "ufg/map_model.hpp"
#include "ufg/render.hpp"
#include "ufg/session.hpp"
#include "ufg/sim_designer.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// JSON crosses the boundary as text; the Python package decodes it.
std::string dump(const json& doc) { return ufg::dump_stable(doc); }

json parse_or_null(const std::string& text) { return text.empty() ? json() : json::parse(text); }

ufg::MapLayout decode_genes(const std::vector<double>& genes) { return ufg::decode(ufg::MapGenome(genes)); }

}  // namespace

PYBIND11_MODULE(_ufg, m) {
  m.doc() = "Interactive evolution of urban FPS levels";

  py::register_exception<ufg::Error>(m, "UfgError", PyExc_ValueError);

  m.attr("GENOME_LENGTH") = ufg::kGenomeLength;
  m.attr("GRID_SIZE") = ufg::kGridSize;
  m.attr("CANVAS_UNITS") = ufg::kCanvasUnits;
  m.attr("CELL_UNITS") = ufg::kCellUnits;
  m.attr("PREFAB_COUNT") = ufg::kPrefabCount;
  m.attr("CANDIDATES") = ufg::kCandidatesPerGeneration;

  m.def("decode", [](const std::vector<double>& genes) { return dump(ufg::level_to_json(decode_genes(genes))); },
        py::arg("genes"), "Decode a 1600-gene genome into a level document (JSON text).");

  m.def("features", [](const std::vector<double>& genes) { return dump(ufg::to_json(ufg::extract_features(decode_genes(genes)))); },
        py::arg("genes"));

  m.def("playability", [](const std::string& level) {
        return dump(ufg::to_json(ufg::playability(ufg::level_from_json(json::parse(level)))));
      },
      py::arg("level"));

  m.def("cover_score", [](const std::string& level, int row, int col) {
        return ufg::cover_score(ufg::level_from_json(json::parse(level)), {row, col});
      },
      py::arg("level"), py::arg("row"), py::arg("col"));

  m.def("ascii", [](const std::string& level) { return ufg::to_ascii(ufg::level_from_json(json::parse(level))); },
        py::arg("level"));

  m.def("render_svg", [](const std::string& level) { return ufg::render_svg(ufg::level_from_json(json::parse(level))); },
        py::arg("level"));

  m.def("train_tree", [](const std::vector<std::array<double, ufg::kFeatureCount>>& features, const std::vector<bool>& preferred) {
        if (features.size() != preferred.size()) throw ufg::TrainingError("features and labels differ in length");
        std::vector<ufg::TrainingSample> samples;
        for (std::size_t i = 0; i < features.size(); ++i) {
          samples.push_back({ufg::FeatureVector::from_array(features[i]),
                             preferred[i] ? ufg::Label::Preferred : ufg::Label::Rejected, 0});
        }
        return dump(ufg::to_json(ufg::train(samples)));
      },
      py::arg("features"), py::arg("preferred"));

  m.def("classify", [](const std::string& tree, const std::array<double, ufg::kFeatureCount>& f) {
        const auto c = ufg::classify(ufg::tree_from_json(json::parse(tree)), ufg::FeatureVector::from_array(f));
        return py::make_tuple(c.label == ufg::Label::Preferred, c.confidence);
      },
      py::arg("tree"), py::arg("features"));

  m.def("run_experiment", [](int seeds, int iterations, const std::string& assist, double noise, unsigned threads) {
        ufg::ExperimentConfig config;
        config.seeds.resize(static_cast<std::size_t>(std::max(seeds, 0)));
        std::iota(config.seeds.begin(), config.seeds.end(), 1);
        config.max_iterations = iterations;
        config.noise_sigma = noise;
        if (assist == "on") {
          config.arms = {true};
        } else if (assist == "off") {
          config.arms = {false};
        } else if (assist != "both") {
          throw ufg::ConfigError("assist must be on, off or both");
        }
        ufg::ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = ufg::run_experiment(config, threads);
        }
        json rows = json::array();
        for (const auto& r : result.runs) {
          rows.push_back({{"seed", r.seed},
                          {"assist", r.assist},
                          {"human_rounds", r.human_rounds},
                          {"generations", r.total_generations},
                          {"final_distance", r.final_distance},
                          {"converged", r.converged}});
        }
        return dump(rows);
      },
      py::arg("seeds") = 20, py::arg("iterations") = 10, py::arg("assist") = "both", py::arg("noise") = 0.02,
      py::arg("threads") = 0u);

  py::class_<ufg::Session>(m, "Session")
      .def(py::init([](const std::string& id, const std::string& params, const std::string& policy) {
             return ufg::Session(id, ufg::ga_params_from_json(parse_or_null(params)),
                                 ufg::agent_policy_from_json(parse_or_null(policy)));
           }),
           py::arg("id") = "py", py::arg("params") = "", py::arg("policy") = "")
      .def_static("replay", [](const std::string& transcript) { return ufg::Session::replay(json::parse(transcript)); })
      .def_property_readonly("id", &ufg::Session::id)
      .def_property_readonly("generation", [](const ufg::Session& s) { return s.current().index; })
      .def_property_readonly("finished", [](const ufg::Session& s) { return s.status() == ufg::SessionStatus::Finished; })
      .def_property_readonly("turn", [](const ufg::Session& s) { return std::string(ufg::to_string(s.turn())); })
      .def_property_readonly("human_rounds", &ufg::Session::human_rounds)
      .def("submit", [](ufg::Session& s, int a, int b) { s.submit_selection({a, b}); }, py::arg("a"), py::arg("b"))
      .def("state", [](const ufg::Session& s) { return dump(s.state_view()); })
      .def("transcript", [](const ufg::Session& s) { return dump(s.transcript()); })
      .def("export_level", [](const ufg::Session& s, int id) { return dump(s.export_level(id)); }, py::arg("candidate"))
      .def("features", [](const ufg::Session& s) {
        std::vector<std::array<double, ufg::kFeatureCount>> out;
        for (const auto& c : s.current().candidates) out.push_back(c.features.as_array());
        return out;
      });
}
