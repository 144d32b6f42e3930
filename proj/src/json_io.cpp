#include "ufg/json_io.hpp"

#include "ufg/errors.hpp"

namespace ufg {

using nlohmann::json;

namespace {

char content_tag(CellContent c) {
  switch (c) {
    case CellContent::Street: return 'S';
    case CellContent::Building: return 'B';
    case CellContent::Free: return 'F';
  }
  return 'F';
}

CellContent content_from_tag(const std::string& tag) {
  if (tag == "S") return CellContent::Street;
  if (tag == "B") return CellContent::Building;
  if (tag == "F") return CellContent::Free;
  throw EncodingError("unknown cell tag '" + tag + "'");
}

json coord(CellCoord c) { return json::array({c.row, c.col}); }

CellCoord coord_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw EncodingError("coordinate must be [row, col]");
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

json node_to_json(const DecisionTree& tree, int index) {
  const TreeNode& n = tree.nodes.at(static_cast<std::size_t>(index));
  if (n.leaf) {
    return {{"label", n.label == Label::Preferred ? "Preferred" : "Rejected"},
            {"confidence", n.confidence},
            {"n", n.sample_count}};
  }
  return {{"feature", n.feature},
          {"feature_name", std::string(kFeatureNames[static_cast<std::size_t>(n.feature)])},
          {"threshold", n.threshold},
          {"gain_ratio", n.gain_ratio},
          {"left", node_to_json(tree, n.left)},
          {"right", node_to_json(tree, n.right)}};
}

int node_from_json(DecisionTree& tree, const json& j) {
  const int id = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (j.contains("label")) {
    TreeNode& n = tree.nodes.back();
    n.leaf = true;
    n.label = j.at("label").get<std::string>() == "Preferred" ? Label::Preferred : Label::Rejected;
    n.confidence = j.at("confidence").get<double>();
    n.sample_count = j.at("n").get<int>();
    return id;
  }
  const int feature = j.at("feature").get<int>();
  if (feature < 0 || feature >= kFeatureCount) throw EncodingError("tree feature index out of range");
  const int l = node_from_json(tree, j.at("left"));
  const int r = node_from_json(tree, j.at("right"));
  TreeNode& n = tree.nodes[static_cast<std::size_t>(id)];
  n.leaf = false;
  n.feature = feature;
  n.threshold = j.at("threshold").get<double>();
  n.gain_ratio = j.value("gain_ratio", 0.0);
  n.left = l;
  n.right = r;
  return id;
}

template <typename F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw EncodingError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json level_to_json(const MapLayout& layout, json meta) {
  json grid = json::array();
  for (int r = 0; r < kGridSize; ++r) {
    json row = json::array();
    for (int c = 0; c < kGridSize; ++c) {
      const Cell& cell = layout.at({r, c});
      json props = json::array();
      for (const auto& p : cell.props) props.push_back({{"k", to_string(p.kind)}, {"u", p.u}, {"v", p.v}});
      row.push_back({{"t", std::string(1, content_tag(cell.content))},
                     {"h", cell.height_stories},
                     {"p", cell.prefab_index},
                     {"props", std::move(props)}});
    }
    grid.push_back(std::move(row));
  }
  json repair = json::array();
  for (auto c : layout.repair_log) repair.push_back(coord(c));

  return {{"version", kLevelFormatVersion},
          {"canvas", kCanvasUnits},
          {"cell_size", kCellUnits},
          {"grid", std::move(grid)},
          {"spawns", json::array({coord(layout.spawns[0]), coord(layout.spawns[1])})},
          {"repair", std::move(repair)},
          {"meta", std::move(meta)}};
}

MapLayout level_from_json(const json& doc) {
  MapLayout layout = guarded("level", [&] {
    if (doc.value("version", "") != std::string(kLevelFormatVersion)) throw EncodingError("unsupported level version");
    if (doc.at("canvas").get<int>() != kCanvasUnits) throw EncodingError("canvas must be 512 units");
    if (doc.at("cell_size").get<int>() != kCellUnits) throw EncodingError("cell_size must be 25 units");
    const json& grid = doc.at("grid");
    if (!grid.is_array() || grid.size() != static_cast<std::size_t>(kGridSize)) throw EncodingError("grid must have 20 rows");

    MapLayout out;
    for (int r = 0; r < kGridSize; ++r) {
      const json& row = grid.at(static_cast<std::size_t>(r));
      if (!row.is_array() || row.size() != static_cast<std::size_t>(kGridSize)) throw EncodingError("grid rows must have 20 cells");
      for (int c = 0; c < kGridSize; ++c) {
        const json& j = row.at(static_cast<std::size_t>(c));
        Cell& cell = out.at({r, c});
        cell.content = content_from_tag(j.at("t").get<std::string>());
        cell.height_stories = j.at("h").get<int>();
        cell.prefab_index = j.at("p").get<int>();
        for (const auto& p : j.at("props")) {
          cell.props.push_back({prop_kind_from_string(p.at("k").get<std::string>()), p.at("u").get<double>(),
                                p.at("v").get<double>()});
        }
      }
    }
    const json& spawns = doc.at("spawns");
    if (!spawns.is_array() || spawns.size() != 2) throw EncodingError("exactly two spawns required");
    out.spawns = {coord_from(spawns.at(0)), coord_from(spawns.at(1))};
    for (const auto& c : doc.at("repair")) out.repair_log.push_back(coord_from(c));
    return out;
  });
  for (const auto& s : layout.spawns) {
    if (!in_grid(s)) throw EncodingError("spawn outside grid");
  }
  validate_layout(layout);
  return layout;
}

json to_json(const FeatureVector& f) {
  json j = json::object();
  const auto v = f.as_array();
  for (int i = 0; i < kFeatureCount; ++i) j[std::string(kFeatureNames[static_cast<std::size_t>(i)])] = v[static_cast<std::size_t>(i)];
  return j;
}

json to_json(const PlayabilityReport& r) {
  json exposed = json::array();
  for (auto c : r.exposed_cells) exposed.push_back(coord(c));
  json chokes = json::array();
  for (auto c : r.choke_points) chokes.push_back(coord(c));
  return {{"spawns_reachable", r.spawns_reachable},
          {"walkable_fraction", r.walkable_fraction},
          {"exposed_cells", std::move(exposed)},
          {"choke_points", std::move(chokes)},
          {"passed", r.passed}};
}

json to_json(const DecisionTree& tree) {
  json j = {{"root", tree.nodes.empty() ? json(nullptr) : node_to_json(tree, 0)}};
  j["preferred_centroid"] = tree.preferred_centroid ? json(*tree.preferred_centroid) : json(nullptr);
  return j;
}

DecisionTree tree_from_json(const json& doc) {
  return guarded("tree", [&] {
    DecisionTree tree;
    if (!doc.at("root").is_null()) node_from_json(tree, doc.at("root"));
    if (doc.contains("preferred_centroid") && !doc.at("preferred_centroid").is_null()) {
      tree.preferred_centroid = doc.at("preferred_centroid").get<std::array<double, kFeatureCount>>();
    }
    return tree;
  });
}

json to_json(const GaParams& p) {
  return {{"blx_alpha", p.blx_alpha},
          {"mutation_rate", p.mutation_rate},
          {"mutation_sigma", p.mutation_sigma},
          {"max_iterations", p.max_iterations},
          {"seed", p.seed}};
}

json to_json(const AgentPolicy& p) {
  return {{"warmup_generations", p.warmup_generations}, {"assist_ratio", p.assist_ratio}};
}

GaParams ga_params_from_json(const json& doc) {
  GaParams p;
  try {
    if (!doc.is_null() && !doc.is_object()) throw ConfigError("params must be an object");
    if (doc.is_object()) {
      p.blx_alpha = doc.value("blx_alpha", p.blx_alpha);
      p.mutation_rate = doc.value("mutation_rate", p.mutation_rate);
      p.mutation_sigma = doc.value("mutation_sigma", p.mutation_sigma);
      p.max_iterations = doc.value("max_iterations", p.max_iterations);
      p.seed = doc.value("seed", p.seed);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  p.validate();
  return p;
}

AgentPolicy agent_policy_from_json(const json& doc) {
  AgentPolicy p;
  try {
    if (!doc.is_null() && !doc.is_object()) throw ConfigError("policy must be an object");
    if (doc.is_object()) {
      p.warmup_generations = doc.value("warmup_generations", p.warmup_generations);
      p.assist_ratio = doc.value("assist_ratio", p.assist_ratio);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("policy: ") + e.what());
  }
  p.validate();
  return p;
}

std::string dump_stable(const json& doc) { return doc.dump(); }

}  // namespace ufg
