#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wsnsim/clustering.hpp"
#include "wsnsim/config.hpp"
#include "wsnsim/harness.hpp"
#include "wsnsim/keying.hpp"
#include "wsnsim/rng.hpp"

namespace py = pybind11;
using namespace wsnsim;

namespace {

using PyPoint = std::pair<double, double>;

std::vector<Position> to_positions(const std::vector<PyPoint>& raw) {
  std::vector<Position> points;
  points.reserve(raw.size());
  for (const auto& [x, y] : raw) points.push_back({x, y});
  return points;
}

std::vector<PyPoint> from_positions(const std::vector<Position>& points) {
  std::vector<PyPoint> raw;
  raw.reserve(points.size());
  for (const Position& p : points) raw.push_back({p.x, p.y});
  return raw;
}

py::dict row_to_dict(const MetricsRow& r) {
  py::dict d;
  d["label"] = r.label;
  d["rep"] = r.rep;
  d["p_target"] = r.p_target;
  d["mean_share_count"] = r.mean_share_count;
  d["compromise_fraction"] = r.compromise_fraction;
  d["delivered"] = r.delivered;
  d["unreachable"] = r.unreachable;
  d["mean_hops"] = r.mean_hops;
  d["mean_keys_per_node"] = r.mean_keys_per_node;
  d["mean_head_keys"] = r.mean_head_keys;
  d["max_energy"] = r.max_energy;
  d["mean_energy"] = r.mean_energy;
  d["network_compromised"] = r.network_compromised;
  return d;
}

py::dict summary_to_dict(const PointSummary& s) {
  py::dict d;
  d["p_target"] = s.point.p_target;
  d["compromise_fraction"] = s.point.compromise_fraction;
  d["repetitions"] = s.repetitions;
  d["delivered_total"] = s.delivered_total;
  d["unreachable_total"] = s.unreachable_total;
  d["unreachable_fraction"] = s.unreachable_fraction;
  d["mean_hops_mean"] = s.mean_hops_mean;
  d["mean_hops_stddev"] = s.mean_hops_stddev;
  d["mean_share_count_mean"] = s.mean_share_count_mean;
  d["mean_keys_per_node_mean"] = s.mean_keys_per_node_mean;
  d["mean_head_keys_mean"] = s.mean_head_keys_mean;
  d["max_energy_max"] = s.max_energy_max;
  d["mean_energy_mean"] = s.mean_energy_mean;
  d["any_network_compromised"] = s.any_network_compromised;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Clustered sensor-network key management simulator";

  m.def("derive_rep_seed", &derive_rep_seed, py::arg("seed"),
        py::arg("rep_index"),
        "Decorrelated per-repetition seed for a given base seed.");

  m.def("exact_birthday_probability", &exact_birthday_probability,
        py::arg("n"), py::arg("d"),
        "P(collision) among n draws from d equally likely values.");
  m.def("approx_share_probability", &approx_share_probability, py::arg("s"),
        py::arg("n"),
        "P(two members of an n-cluster share a key at ring size s).");
  m.def("required_share_count", &required_share_count, py::arg("p_target"),
        py::arg("n"), "Smallest ring size reaching p_target in an n-cluster.");
  m.def("effective_share_count", &effective_share_count, py::arg("p_target"),
        py::arg("cluster_size"),
        "required_share_count clamped to cluster_size - 1.");

  m.def(
      "seed_centers",
      [](const std::vector<PyPoint>& points, std::uint32_t k,
         std::uint64_t seed, const std::vector<PyPoint>& initial) {
        Rng rng(seed);
        return from_positions(
            seed_centers(to_positions(points), k, rng, to_positions(initial)));
      },
      py::arg("points"), py::arg("k"), py::arg("seed"),
      py::arg("initial_centers") = std::vector<PyPoint>{},
      "Distance-weighted center seeding over (x, y) tuples.");

  m.def(
      "lloyd_refine",
      [](const std::vector<PyPoint>& points,
         const std::vector<PyPoint>& centers, std::uint32_t max_iters) {
        const ClusteringResult r =
            lloyd_refine(to_positions(points), to_positions(centers), max_iters);
        py::dict d;
        d["centers"] = from_positions(r.centers);
        d["assignment"] = r.assignment;
        d["wcss"] = r.wcss;
        d["iterations"] = r.iterations;
        d["wcss_history"] = r.wcss_history;
        return d;
      },
      py::arg("points"), py::arg("centers"), py::arg("max_iters") = 100,
      "Binding/update iteration; returns centers, assignment, and WCSS.");

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init([](const py::kwargs& kwargs) {
             SimConfig config;
             for (const auto& item : kwargs) {
               const auto key = py::cast<std::string>(item.first);
               const py::handle value = item.second;
               if (key == "node_count")
                 config.node_count = py::cast<std::uint32_t>(value);
               else if (key == "area_width")
                 config.area_width = py::cast<double>(value);
               else if (key == "area_height")
                 config.area_height = py::cast<double>(value);
               else if (key == "short_range")
                 config.short_range = py::cast<double>(value);
               else if (key == "long_range_factor")
                 config.long_range_factor = py::cast<double>(value);
               else if (key == "target_cluster_size")
                 config.target_cluster_size = py::cast<std::uint32_t>(value);
               else if (key == "p_target")
                 config.p_target = py::cast<double>(value);
               else if (key == "recluster_interval")
                 config.recluster_interval = py::cast<std::uint32_t>(value);
               else if (key == "total_steps")
                 config.total_steps = py::cast<std::uint32_t>(value);
               else if (key == "repetitions")
                 config.repetitions = py::cast<std::uint32_t>(value);
               else if (key == "seed")
                 config.seed = py::cast<std::uint64_t>(value);
               else if (key == "compromise_fractions")
                 config.compromise_fractions =
                     py::cast<std::vector<double>>(value);
               else
                 throw py::type_error("unknown SimConfig field: " + key);
             }
             return config;
           }),
           "Default configuration; any field may be overridden by keyword.")
      .def_readwrite("node_count", &SimConfig::node_count)
      .def_readwrite("area_width", &SimConfig::area_width)
      .def_readwrite("area_height", &SimConfig::area_height)
      .def_readwrite("short_range", &SimConfig::short_range)
      .def_readwrite("long_range_factor", &SimConfig::long_range_factor)
      .def_readwrite("target_cluster_size", &SimConfig::target_cluster_size)
      .def_readwrite("p_target", &SimConfig::p_target)
      .def_readwrite("recluster_interval", &SimConfig::recluster_interval)
      .def_readwrite("total_steps", &SimConfig::total_steps)
      .def_readwrite("repetitions", &SimConfig::repetitions)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("compromise_fractions", &SimConfig::compromise_fractions)
      .def("validate", &SimConfig::validate);

  m.def(
      "load_config",
      [](const std::string& path) {
        const LoadedConfig loaded = load_config_file(path);
        py::dict d;
        d["sim"] = loaded.sim;
        d["p_targets"] = loaded.extras.p_targets;
        d["traffic"] = loaded.extras.traffic;
        d["label"] = loaded.extras.label;
        return d;
      },
      py::arg("path"), "Parses a key=value config file.");

  m.def(
      "run_repetition",
      [](const SimConfig& config, double p_target, double compromise_fraction,
         std::uint32_t traffic, std::uint32_t rep_index,
         const std::string& label) {
        ScenarioSpec spec;
        spec.base = config;
        spec.traffic = traffic;
        spec.label = label;
        spec.validate();
        return row_to_dict(
            run_repetition(spec, {p_target, compromise_fraction}, rep_index)
                .row);
      },
      py::arg("config"), py::arg("p_target") = 0.5,
      py::arg("compromise_fraction") = 0.0, py::arg("traffic") = 1000,
      py::arg("rep_index") = 0, py::arg("label") = "default",
      "One simulated repetition at one sweep point; returns its metrics row.");

  m.def(
      "run_scenario",
      [](const SimConfig& config, const std::vector<double>& p_targets,
         const std::vector<double>& compromise_fractions, std::uint32_t traffic,
         const std::string& label, const std::optional<std::string>& out_dir,
         bool svg) {
        ScenarioSpec spec;
        spec.base = config;
        spec.p_targets = p_targets;
        spec.compromise_fractions = compromise_fractions;
        spec.traffic = traffic;
        spec.label = label;
        const ScenarioResult result = run_scenario(spec);
        if (out_dir) write_outputs(result, *out_dir, svg);
        py::list rows, summaries;
        for (const MetricsRow& r : result.rows) rows.append(row_to_dict(r));
        for (const PointSummary& s : result.summaries)
          summaries.append(summary_to_dict(s));
        py::dict d;
        d["rows"] = std::move(rows);
        d["summaries"] = std::move(summaries);
        return d;
      },
      py::arg("config"), py::arg("p_targets") = std::vector<double>{},
      py::arg("compromise_fractions") = std::vector<double>{},
      py::arg("traffic") = 1000, py::arg("label") = "default",
      py::arg("out_dir") = std::nullopt, py::arg("svg") = false,
      "Full sweep; optionally writes metrics.csv/summary.json to out_dir.");
}
