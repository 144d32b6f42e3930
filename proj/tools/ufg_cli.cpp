// ufg: command-line front end for the urban FPS level generator.
//
//   ufg serve --port 8080 --data ./ufg-data
//   ufg experiment --seeds 20 --iterations 10 --assist both --noise 0.02 --out results.csv
//   ufg render --level level.json --svg level.svg
//   ufg sample --seed 42 --out level.json

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>
#include <httplib.h>

#include "ufg/errors.hpp"
#include "ufg/json_io.hpp"
#include "ufg/render.hpp"
#include "ufg/rng.hpp"
#include "ufg/service.hpp"
#include "ufg/sim_designer.hpp"

namespace {

int run_serve(int port, const std::string& data, const std::string& host) {
  const auto dir = data.empty() ? ufg::resolve_data_dir("ufg-data") : std::filesystem::path(data);
  ufg::SessionStore store(dir);
  httplib::Server server;
  ufg::register_routes(server, store);
  std::cerr << "ufg: serving on " << host << ':' << port << ", data in " << dir << '\n';
  if (!server.listen(host, port)) {
    std::cerr << "ufg: cannot listen on " << host << ':' << port << '\n';
    return 1;
  }
  return 0;
}

int run_experiment(int seeds, int iterations, const std::string& assist, double noise, const std::string& out,
                   unsigned threads) {
  ufg::ExperimentConfig config;
  config.seeds.resize(static_cast<std::size_t>(seeds));
  std::iota(config.seeds.begin(), config.seeds.end(), 1);
  config.max_iterations = iterations;
  config.noise_sigma = noise;
  if (assist == "on") {
    config.arms = {true};
  } else if (assist == "off") {
    config.arms = {false};
  } else {
    config.arms = {false, true};
  }

  const auto result = ufg::run_experiment(config, threads);
  std::ofstream csv(out);
  if (!csv) throw ufg::ConfigError("cannot write " + out);
  ufg::write_csv(csv, result);

  for (bool arm : config.arms) {
    std::printf("assist %-3s  median human rounds %.1f  median final distance %.4f\n", arm ? "on" : "off",
                result.median_human_rounds(arm), result.median_final_distance(arm));
  }
  return 0;
}

int run_render(const std::string& level_path, const std::string& svg_path, bool ascii) {
  std::ifstream in(level_path);
  if (!in) throw ufg::NotFoundError("cannot open " + level_path);
  const auto layout = ufg::level_from_json(nlohmann::json::parse(in));
  if (!svg_path.empty()) {
    std::ofstream out(svg_path);
    out << ufg::render_svg(layout);
  }
  if (ascii) std::cout << ufg::to_ascii(layout);
  return 0;
}

int run_sample(std::uint64_t seed, const std::string& out_path) {
  ufg::CounterRng rng{seed};
  std::vector<double> genes(ufg::kGenomeLength);
  for (auto& g : genes) g = rng.uniform();
  const auto layout = ufg::decode(ufg::MapGenome(std::move(genes)));
  const auto doc = ufg::level_to_json(layout, {{"seed", seed}});
  if (out_path.empty()) {
    std::cout << ufg::dump_stable(doc) << '\n';
  } else {
    std::ofstream(out_path) << ufg::dump_stable(doc) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Urban FPS level generator"};
  app.require_subcommand(1);

  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  int port = 8080;
  std::string data;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--data", data, "Session directory (default: $UFG_DATA or ./ufg-data)");
  serve->add_option("--host", host, "Bind address");

  auto* experiment = app.add_subcommand("experiment", "Simulated-designer fatigue experiment");
  int seeds = 20;
  int iterations = 10;
  std::string assist = "both";
  double noise = 0.02;
  std::string out = "results.csv";
  unsigned threads = 0;
  experiment->add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber);
  experiment->add_option("--iterations", iterations, "Maximum generations")->check(CLI::IsMember({10, 20}));
  experiment->add_option("--assist", assist, "Arms to run")->check(CLI::IsMember({"on", "off", "both"}));
  experiment->add_option("--noise", noise, "Designer perception noise sigma")->check(CLI::NonNegativeNumber);
  experiment->add_option("--out", out, "CSV output path");
  experiment->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* render = app.add_subcommand("render", "Render a level file");
  std::string level;
  std::string svg;
  bool ascii = false;
  render->add_option("--level", level, "Level JSON file")->required();
  render->add_option("--svg", svg, "SVG output path");
  render->add_flag("--ascii", ascii, "Print the ASCII dump");

  auto* sample = app.add_subcommand("sample", "Decode a uniform random genome into a level file");
  std::uint64_t seed = 0;
  std::string sample_out;
  sample->add_option("--seed", seed, "Genome seed");
  sample->add_option("--out", sample_out, "Output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return run_serve(port, data, host);
    if (*experiment) return run_experiment(seeds, iterations, assist, noise, out, threads);
    if (*render) return run_render(level, svg, ascii);
    if (*sample) return run_sample(seed, sample_out);
  } catch (const ufg::Error& e) {
    std::cerr << "ufg: " << e.kind() << " error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ufg: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
