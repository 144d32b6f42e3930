#pragma once

#include <vector>

#include "ufg/map_model.hpp"
#include "ufg/rng.hpp"

namespace testutil {

inline std::vector<double> random_genes(std::uint64_t seed) {
  ufg::CounterRng rng{0x7e57, seed};
  std::vector<double> genes(ufg::kGenomeLength);
  for (auto& g : genes) g = rng.uniform();
  return genes;
}

inline ufg::MapGenome constant_genome(double value) {
  return ufg::MapGenome(std::vector<double>(ufg::kGenomeLength, value));
}

/// All-Free layout without props, spawns unset.
inline ufg::MapLayout blank_layout(ufg::CellContent fill = ufg::CellContent::Free) {
  ufg::MapLayout layout;
  for (auto& c : layout.grid) c.content = fill;
  return layout;
}

/// Random raw (unrepaired) layout: each cell Street/Building/Free with the
/// given probabilities; Free cells get 0..3 props.
inline ufg::MapLayout random_raw_layout(std::uint64_t seed, double street = 0.2, double building = 0.35) {
  ufg::CounterRng rng{0x1a7, seed};
  ufg::MapLayout layout;
  for (auto& c : layout.grid) {
    const double u = rng.uniform();
    c.content = u < street ? ufg::CellContent::Street
                           : (u < street + building ? ufg::CellContent::Building : ufg::CellContent::Free);
    if (c.content == ufg::CellContent::Free) {
      const int n = static_cast<int>(rng.uniform() * 4.0);
      for (int k = 0; k < n; ++k) c.props.push_back({ufg::PropKind::Plant, rng.uniform(), rng.uniform()});
    }
  }
  return layout;
}

}  // namespace testutil
