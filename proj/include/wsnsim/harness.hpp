#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wsnsim/config.hpp"
#include "wsnsim/model.hpp"

namespace wsnsim {

/// One cell of the experiment grid.
struct SweepPoint {
  double p_target = 0.5;
  double compromise_fraction = 0.0;
};

struct ScenarioSpec {
  SimConfig base;
  /// Key-target sweep; falls back to {base.p_target} when empty.
  std::vector<double> p_targets;
  /// Compromise sweep; falls back to base.compromise_fractions, then {0}.
  std::vector<double> compromise_fractions;
  /// Routed queries per repetition.
  std::uint32_t traffic = 1000;
  std::string label = "default";
  /// Keep per-repetition churn events around for the event log.
  bool collect_events = false;

  static ScenarioSpec from_config(const LoadedConfig& loaded);

  /// Cross product of the two sweeps, p_target-major.
  std::vector<SweepPoint> sweep() const;

  void validate() const;
};

/// One repetition's metrics; everything the CSV stores, one line per row.
struct MetricsRow {
  std::string label;
  std::uint32_t rep = 0;
  double p_target = 0.0;
  double mean_share_count = 0.0;
  double compromise_fraction = 0.0;
  std::uint32_t delivered = 0;
  std::uint32_t unreachable = 0;
  /// Mean hop count over delivered queries; 0 when nothing was delivered.
  double mean_hops = 0.0;
  double mean_keys_per_node = 0.0;
  double mean_head_keys = 0.0;
  double max_energy = 0.0;
  double mean_energy = 0.0;
  bool network_compromised = false;

  bool operator==(const MetricsRow&) const = default;
};

struct RepetitionOutput {
  MetricsRow row;
  /// Populated only when the scenario collects events.
  std::vector<ChurnEvent> events;
};

/// Runs one full repetition at one sweep point: seed the state with
/// derive_rep_seed(base.seed, rep_index), cluster and distribute keys, run
/// total_steps of mobility/transfers with periodic re-clustering, apply the
/// point's compromise fraction, then route `traffic` random queries.
RepetitionOutput run_repetition(const ScenarioSpec& spec, SweepPoint point,
                                std::uint32_t rep_index);

/// Aggregates of the rows at one sweep point (mean and sample stddev
/// across repetitions; stddev is 0 with a single repetition).
struct PointSummary {
  SweepPoint point;
  std::uint32_t repetitions = 0;
  std::uint64_t delivered_total = 0;
  std::uint64_t unreachable_total = 0;
  double unreachable_fraction = 0.0;
  double mean_hops_mean = 0.0;
  double mean_hops_stddev = 0.0;
  double mean_share_count_mean = 0.0;
  double mean_keys_per_node_mean = 0.0;
  double mean_keys_per_node_stddev = 0.0;
  double mean_head_keys_mean = 0.0;
  double mean_head_keys_stddev = 0.0;
  double max_energy_max = 0.0;
  double mean_energy_mean = 0.0;
  bool any_network_compromised = false;
};

struct RepetitionEvents {
  SweepPoint point;
  std::uint32_t rep = 0;
  std::vector<ChurnEvent> events;
};

struct ScenarioResult {
  ScenarioSpec spec;
  std::vector<MetricsRow> rows;          // sweep order, rep-minor
  std::vector<PointSummary> summaries;   // one per sweep point
  std::vector<RepetitionEvents> events;  // only when spec.collect_events
};

/// All repetitions at all sweep points. Repetitions are seeded
/// independently, so rows depend only on (base seed, point, rep index).
ScenarioResult run_scenario(const ScenarioSpec& spec);

/// unreachable / (delivered + unreachable) over a set of rows; 0 when the
/// rows carried no traffic.
double unreachable_fraction(const std::vector<MetricsRow>& rows);

PointSummary summarize_point(SweepPoint point,
                             const std::vector<MetricsRow>& rows);

/// Locale-independent shortest round-trip decimal form of a double.
std::string format_double(double value);

void emit_csv(const std::vector<MetricsRow>& rows, const std::string& path);

/// Inverse of emit_csv: reconstructs the rows bit-for-bit.
std::vector<MetricsRow> parse_csv(const std::string& path);

void emit_summary(const ScenarioResult& result, const std::string& path);

struct ChartSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y), x ascending
};

/// Minimal standalone SVG line chart (axes, ticks, legend, one polyline
/// per series).
void emit_svg_chart(const std::vector<ChartSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::string& path);

void emit_events_log(const ScenarioResult& result, const std::string& path);

/// metrics.csv + summary.json (+ hops.svg / unreachable.svg with svg_charts,
/// + events.log when the scenario collected events) under out_dir.
void write_outputs(const ScenarioResult& result, const std::string& out_dir,
                   bool svg_charts);

/// Human-readable per-point table for the CLI.
void print_summary(const ScenarioResult& result, std::ostream& out);

}  // namespace wsnsim
