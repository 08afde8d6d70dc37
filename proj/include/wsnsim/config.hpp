#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wsnsim {

/// Random-waypoint movement parameters. Speeds are meters per step.
struct MobilityConfig {
  double speed_min = 1.0;
  double speed_max = 5.0;
  std::uint32_t pause_steps = 5;
};

/// Per-transmission energy charges, in abstract energy units.
struct EnergyCosts {
  double short_tx = 1.0;
  double long_tx = 5.0;
};

struct SimConfig {
  std::uint32_t node_count = 2400;
  double area_width = 1000.0;
  double area_height = 1000.0;
  /// Member-radio reach; also the cluster-diameter budget.
  double short_range = 900.0;
  /// Head radio reach = short_range * long_range_factor.
  double long_range_factor = 4.0;
  std::uint32_t target_cluster_size = 250;
  /// Desired probability that two cluster mates share at least one key.
  double p_target = 0.5;
  std::uint32_t recluster_interval = 50;
  std::uint32_t total_steps = 200;
  std::uint32_t repetitions = 30;
  std::uint64_t seed = 42;
  /// Compromise fractions to sweep; empty means a single point at 0.
  std::vector<double> compromise_fractions;
  MobilityConfig mobility;
  EnergyCosts energy_costs;

  double long_range() const { return short_range * long_range_factor; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Scenario fields that live in the same config file but sit outside
/// SimConfig: the sweep over key-target probabilities, the number of
/// routed queries per repetition, and the label stamped into output rows.
struct ScenarioExtras {
  std::vector<double> p_targets;
  std::uint32_t traffic = 1000;
  std::string label = "default";
};

struct LoadedConfig {
  SimConfig sim;
  ScenarioExtras extras;
};

/// Parses a flat key=value file ('#' starts a comment, blank lines are
/// skipped). Keys mirror the field names above; compromise_fractions and
/// p_targets take comma-separated lists. Unknown keys and malformed values
/// throw std::invalid_argument naming the key.
LoadedConfig load_config_file(const std::string& path);

/// Applies one key=value assignment; shared by the file parser and tests.
void apply_config_entry(LoadedConfig& config, const std::string& key,
                        const std::string& value);

std::vector<double> parse_double_list(const std::string& text);

}  // namespace wsnsim
