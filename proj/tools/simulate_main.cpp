#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsnsim/config.hpp"
#include "wsnsim/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Clustered sensor-network key management simulator"};

  std::string config_path;
  std::string out_dir = "out";
  std::string compromise_list;
  std::string p_target_list;
  std::string label;
  std::uint64_t seed = 0;
  std::uint32_t nodes = 0, reps = 0, steps = 0, traffic = 0;
  bool svg = false, events = false;

  app.add_option("--config", config_path, "Config file (key=value lines)")
      ->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Base seed");
  auto* nodes_opt = app.add_option("--nodes", nodes, "Node count");
  auto* p_opt = app.add_option(
      "--p-target", p_target_list,
      "Key-share probability target(s), comma-separated sweep");
  auto* reps_opt = app.add_option("--reps", reps, "Repetitions per sweep point");
  auto* comp_opt = app.add_option("--compromise", compromise_list,
                                  "Compromise fractions, comma-separated");
  auto* steps_opt = app.add_option("--steps", steps, "Mobility steps per run");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  auto* traffic_opt =
      app.add_option("--traffic", traffic, "Routed queries per repetition");
  auto* label_opt = app.add_option("--label", label, "Row label for the CSV");
  app.add_flag("--svg", svg, "Also write hops.svg / unreachable.svg");
  app.add_flag("--events", events, "Also write events.log");

  CLI11_PARSE(app, argc, argv);

  try {
    wsnsim::LoadedConfig loaded;
    if (!config_path.empty()) loaded = wsnsim::load_config_file(config_path);

    if (*seed_opt) loaded.sim.seed = seed;
    if (*nodes_opt) loaded.sim.node_count = nodes;
    if (*reps_opt) loaded.sim.repetitions = reps;
    if (*steps_opt) loaded.sim.total_steps = steps;
    if (*p_opt) loaded.extras.p_targets = wsnsim::parse_double_list(p_target_list);
    if (*comp_opt)
      loaded.sim.compromise_fractions = wsnsim::parse_double_list(compromise_list);
    if (*traffic_opt) loaded.extras.traffic = traffic;
    if (*label_opt) loaded.extras.label = label;

    wsnsim::ScenarioSpec spec = wsnsim::ScenarioSpec::from_config(loaded);
    spec.collect_events = events;
    spec.validate();

    const wsnsim::ScenarioResult result = wsnsim::run_scenario(spec);
    wsnsim::write_outputs(result, out_dir, svg);
    wsnsim::print_summary(result, std::cout);
    std::cout << "wrote " << out_dir << "/metrics.csv and summary.json\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "simulate: " << e.what() << '\n';
    return 1;
  }
}
