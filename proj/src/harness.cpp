#include "wsnsim/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wsnsim/clustering.hpp"
#include "wsnsim/dynamics.hpp"
#include "wsnsim/keying.hpp"
#include "wsnsim/routing.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

namespace {

/// Key distribution + head links for freshly built clusters.
void distribute_all_keys(NetworkState& state) {
  for (const auto& [cid, cluster] : state.clusters) {
    const std::uint32_t s = effective_share_count(state.config.p_target,
                                                  cluster.members.size());
    if (s > 0) distribute_cluster_keys(state, cid, s);
  }
  install_head_keys(state);
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

ScenarioSpec ScenarioSpec::from_config(const LoadedConfig& loaded) {
  ScenarioSpec spec;
  spec.base = loaded.sim;
  spec.p_targets = loaded.extras.p_targets;
  spec.compromise_fractions = loaded.sim.compromise_fractions;
  spec.traffic = loaded.extras.traffic;
  spec.label = loaded.extras.label;
  return spec;
}

std::vector<SweepPoint> ScenarioSpec::sweep() const {
  const std::vector<double> ps =
      p_targets.empty() ? std::vector<double>{base.p_target} : p_targets;
  const std::vector<double> fs = compromise_fractions.empty()
                                     ? std::vector<double>{0.0}
                                     : compromise_fractions;
  std::vector<SweepPoint> points;
  points.reserve(ps.size() * fs.size());
  for (double p : ps)
    for (double f : fs) points.push_back({p, f});
  return points;
}

void ScenarioSpec::validate() const {
  base.validate();
  if (label.empty()) throw std::invalid_argument("label empty");
  if (label.find_first_of(",\r\n") != std::string::npos)
    throw std::invalid_argument("label contains a comma or newline");
  for (double p : p_targets)
    if (!(p >= 0.0 && p < 1.0))
      throw std::invalid_argument("p_targets entry outside [0, 1)");
  for (double f : compromise_fractions)
    if (!(f >= 0.0 && f <= 1.0))
      throw std::invalid_argument("compromise_fractions entry outside [0, 1]");
}

RepetitionOutput run_repetition(const ScenarioSpec& spec, SweepPoint point,
                                std::uint32_t rep_index) {
  SimConfig cfg = spec.base;
  cfg.p_target = point.p_target;
  cfg.seed = derive_rep_seed(spec.base.seed, rep_index);

  NetworkState state = init_state(cfg);
  build_clusters(state, default_cluster_count(state.active_count(),
                                              cfg.target_cluster_size));
  distribute_all_keys(state);

  for (std::uint32_t t = 1; t <= cfg.total_steps; ++t) {
    mobility_step(state);
    detect_transfers(state);
    if (t % cfg.recluster_interval == 0) recluster(state);
  }

  compromise_fraction(state, point.compromise_fraction);

  MetricsRow row;
  row.label = spec.label;
  row.rep = rep_index;
  row.p_target = point.p_target;
  row.compromise_fraction = point.compromise_fraction;

  const std::vector<NodeId> active = state.active_ids();
  double hop_sum = 0.0;
  for (std::uint32_t q = 0; q < spec.traffic; ++q) {
    if (active.size() < 2) {  // nobody left to talk to
      ++row.unreachable;
      continue;
    }
    const auto i = static_cast<std::size_t>(state.rng.uniform_index(active.size()));
    auto j = static_cast<std::size_t>(state.rng.uniform_index(active.size() - 1));
    if (j >= i) ++j;
    const RouteResult route = deliver(state, active[i], active[j]);
    if (route.outcome == RouteOutcome::Delivered) {
      ++row.delivered;
      hop_sum += static_cast<double>(route.hops);
    } else {
      ++row.unreachable;
    }
  }
  if (row.delivered > 0) row.mean_hops = hop_sum / row.delivered;

  row.mean_share_count = mean_share_count(state);
  if (!active.empty()) {
    double keys = 0.0;
    for (NodeId id : active)
      keys += static_cast<double>(state.nodes[id].key_ring.pairwise.size());
    row.mean_keys_per_node = keys / static_cast<double>(active.size());
  }
  if (!state.clusters.empty()) {
    double head_keys = 0.0;
    for (const auto& [cid, cluster] : state.clusters) {
      const Node& head = state.nodes[cluster.head];
      for (const auto& [peer, key] : head.key_ring.pairwise)
        if (state.is_cluster_head(peer) &&
            state.nodes[peer].cluster != head.cluster)
          head_keys += 1.0;
    }
    row.mean_head_keys = head_keys / static_cast<double>(state.clusters.size());
  }
  for (const Node& n : state.nodes) {
    row.max_energy = std::max(row.max_energy, n.energy_used);
    row.mean_energy += n.energy_used;
  }
  if (!state.nodes.empty())
    row.mean_energy /= static_cast<double>(state.nodes.size());
  row.network_compromised = state.network_compromised;

  RepetitionOutput out;
  out.row = std::move(row);
  if (spec.collect_events) out.events = std::move(state.events);
  return out;
}

double unreachable_fraction(const std::vector<MetricsRow>& rows) {
  std::uint64_t bad = 0, total = 0;
  for (const MetricsRow& row : rows) {
    bad += row.unreachable;
    total += row.delivered + row.unreachable;
  }
  return total == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(total);
}

PointSummary summarize_point(SweepPoint point,
                             const std::vector<MetricsRow>& rows) {
  PointSummary s;
  s.point = point;
  s.repetitions = static_cast<std::uint32_t>(rows.size());
  std::vector<double> hops, keys, head_keys, share, mean_energy;
  for (const MetricsRow& row : rows) {
    s.delivered_total += row.delivered;
    s.unreachable_total += row.unreachable;
    hops.push_back(row.mean_hops);
    keys.push_back(row.mean_keys_per_node);
    head_keys.push_back(row.mean_head_keys);
    share.push_back(row.mean_share_count);
    mean_energy.push_back(row.mean_energy);
    s.max_energy_max = std::max(s.max_energy_max, row.max_energy);
    s.any_network_compromised |= row.network_compromised;
  }
  s.unreachable_fraction = unreachable_fraction(rows);
  s.mean_hops_mean = mean_of(hops);
  s.mean_hops_stddev = sample_stddev(hops);
  s.mean_share_count_mean = mean_of(share);
  s.mean_keys_per_node_mean = mean_of(keys);
  s.mean_keys_per_node_stddev = sample_stddev(keys);
  s.mean_head_keys_mean = mean_of(head_keys);
  s.mean_head_keys_stddev = sample_stddev(head_keys);
  s.mean_energy_mean = mean_of(mean_energy);
  return s;
}

ScenarioResult run_scenario(const ScenarioSpec& spec) {
  spec.validate();
  ScenarioResult result;
  result.spec = spec;
  for (const SweepPoint& point : spec.sweep()) {
    const std::size_t first_row = result.rows.size();
    for (std::uint32_t rep = 0; rep < spec.base.repetitions; ++rep) {
      RepetitionOutput out = run_repetition(spec, point, rep);
      result.rows.push_back(std::move(out.row));
      if (spec.collect_events)
        result.events.push_back({point, rep, std::move(out.events)});
    }
    result.summaries.push_back(summarize_point(
        point, {result.rows.begin() + static_cast<std::ptrdiff_t>(first_row),
                result.rows.end()}));
  }
  return result;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return {buf, ptr};
}

namespace {

constexpr const char* kCsvHeader =
    "label,rep,p_target,mean_share_count,compromise_fraction,delivered,"
    "unreachable,mean_hops,mean_keys_per_node,mean_head_keys,max_energy,"
    "mean_energy,network_compromised";

double parse_csv_double(const std::string& field) {
  double out = 0.0;
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, out);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("bad CSV double: " + field);
  return out;
}

std::uint32_t parse_csv_u32(const std::string& field) {
  std::uint32_t out = 0;
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, out);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("bad CSV integer: " + field);
  return out;
}

}  // namespace

void emit_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: one '\n' per line everywhere
  if (!out) throw std::runtime_error("cannot write " + path);
  out << kCsvHeader << '\n';
  for (const MetricsRow& r : rows) {
    out << r.label << ',' << r.rep << ',' << format_double(r.p_target) << ','
        << format_double(r.mean_share_count) << ','
        << format_double(r.compromise_fraction) << ',' << r.delivered << ','
        << r.unreachable << ',' << format_double(r.mean_hops) << ','
        << format_double(r.mean_keys_per_node) << ','
        << format_double(r.mean_head_keys) << ','
        << format_double(r.max_energy) << ',' << format_double(r.mean_energy)
        << ',' << (r.network_compromised ? '1' : '0') << '\n';
  }
}

std::vector<MetricsRow> parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::invalid_argument("unrecognized CSV header in " + path);

  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 13)
      throw std::invalid_argument("bad CSV row: " + line);
    MetricsRow r;
    r.label = fields[0];
    r.rep = parse_csv_u32(fields[1]);
    r.p_target = parse_csv_double(fields[2]);
    r.mean_share_count = parse_csv_double(fields[3]);
    r.compromise_fraction = parse_csv_double(fields[4]);
    r.delivered = parse_csv_u32(fields[5]);
    r.unreachable = parse_csv_u32(fields[6]);
    r.mean_hops = parse_csv_double(fields[7]);
    r.mean_keys_per_node = parse_csv_double(fields[8]);
    r.mean_head_keys = parse_csv_double(fields[9]);
    r.max_energy = parse_csv_double(fields[10]);
    r.mean_energy = parse_csv_double(fields[11]);
    if (fields[12] != "0" && fields[12] != "1")
      throw std::invalid_argument("bad CSV flag: " + fields[12]);
    r.network_compromised = fields[12] == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_summary(const ScenarioResult& result, const std::string& path) {
  nlohmann::ordered_json doc;
  doc["label"] = result.spec.label;
  doc["traffic"] = result.spec.traffic;
  doc["repetitions"] = result.spec.base.repetitions;
  doc["seed"] = result.spec.base.seed;
  doc["node_count"] = result.spec.base.node_count;
  auto& points = doc["points"] = nlohmann::ordered_json::array();
  for (const PointSummary& s : result.summaries) {
    nlohmann::ordered_json p;
    p["p_target"] = s.point.p_target;
    p["compromise_fraction"] = s.point.compromise_fraction;
    p["repetitions"] = s.repetitions;
    p["delivered_total"] = s.delivered_total;
    p["unreachable_total"] = s.unreachable_total;
    p["unreachable_fraction"] = s.unreachable_fraction;
    p["mean_hops"] = {{"mean", s.mean_hops_mean}, {"stddev", s.mean_hops_stddev}};
    p["mean_share_count"] = {{"mean", s.mean_share_count_mean}};
    p["mean_keys_per_node"] = {{"mean", s.mean_keys_per_node_mean},
                               {"stddev", s.mean_keys_per_node_stddev}};
    p["mean_head_keys"] = {{"mean", s.mean_head_keys_mean},
                           {"stddev", s.mean_head_keys_stddev}};
    p["max_energy"] = s.max_energy_max;
    p["mean_energy"] = s.mean_energy_mean;
    p["any_network_compromised"] = s.any_network_compromised;
    points.push_back(std::move(p));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << '\n';
}

void emit_svg_chart(const std::vector<ChartSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::string& path) {
  constexpr double kWidth = 720, kHeight = 480;
  constexpr double kLeft = 70, kRight = 30, kTop = 48, kBottom = 56;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool first = true;
  for (const ChartSeries& s : series)
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  y_min = std::min(y_min, 0.0);  // anchor the axis at zero for rates/counts

  const auto sx = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  const auto sy = [&](double y) {
    return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
  };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b",
                                   "#17becf", "#7f7f7f"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // Axes with five ticks each.
  svg << "<g stroke=\"#333\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = x_min + (x_max - x_min) * t / 4.0;
    const double fy = y_min + (y_max - y_min) * t / 4.0;
    svg << "<line x1=\"" << sx(fx) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << sx(fx) << "\" y2=\"" << kTop + plot_h + 5
        << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << sx(fx) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n"
        << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << sy(fy) << "\" x2=\""
        << kLeft << "\" y2=\"" << sy(fy) << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(fy) + 4
        << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label
      << "</text>\n"
      << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n</g>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : series[si].points)
      svg << sx(x) << ',' << sy(y) << ' ';
    svg << "\"/>\n";
    for (const auto& [x, y] : series[si].points)
      svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"12\">"
        << "<rect x=\"" << kLeft + plot_w - 120 << "\" y=\""
        << kTop + 8 + 18 * static_cast<double>(si)
        << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>"
        << "<text x=\"" << kLeft + plot_w - 102 << "\" y=\""
        << kTop + 18 + 18 * static_cast<double>(si) << "\">" << series[si].name
        << "</text></g>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << svg.str();
}

void emit_events_log(const ScenarioResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const RepetitionEvents& block : result.events) {
    out << "# p_target=" << format_double(block.point.p_target)
        << " compromise_fraction="
        << format_double(block.point.compromise_fraction)
        << " rep=" << block.rep << '\n';
    for (const ChurnEvent& e : block.events) {
      out << e.step << ' ' << event_kind_name(e.kind) << " node=" << e.node
          << " before=";
      if (e.cluster_before) out << *e.cluster_before;
      else out << '-';
      out << " after=";
      if (e.cluster_after) out << *e.cluster_after;
      else out << '-';
      out << '\n';
    }
  }
}

void write_outputs(const ScenarioResult& result, const std::string& out_dir,
                   bool svg_charts) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  emit_csv(result.rows, (dir / "metrics.csv").string());
  emit_summary(result, (dir / "summary.json").string());

  if (svg_charts) {
    // Hops vs p_target, one line per compromise fraction.
    std::vector<double> ps, fs;
    for (const PointSummary& s : result.summaries) {
      ps.push_back(s.point.p_target);
      fs.push_back(s.point.compromise_fraction);
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());

    if (ps.size() >= 2) {
      std::vector<ChartSeries> series;
      for (double f : fs) {
        ChartSeries s;
        s.name = "f=" + tick_label(f);
        for (const PointSummary& sum : result.summaries)
          if (sum.point.compromise_fraction == f)
            s.points.push_back({sum.point.p_target, sum.mean_hops_mean});
        std::sort(s.points.begin(), s.points.end());
        series.push_back(std::move(s));
      }
      emit_svg_chart(series, "Mean delivered hops vs key-share target",
                     "p_target", "mean hops", (dir / "hops.svg").string());
    }
    if (fs.size() >= 2) {
      std::vector<ChartSeries> series;
      for (double p : ps) {
        ChartSeries s;
        s.name = "p=" + tick_label(p);
        for (const PointSummary& sum : result.summaries)
          if (sum.point.p_target == p)
            s.points.push_back(
                {sum.point.compromise_fraction, sum.unreachable_fraction});
        std::sort(s.points.begin(), s.points.end());
        series.push_back(std::move(s));
      }
      emit_svg_chart(series, "Unreachable fraction vs compromised fraction",
                     "compromise fraction", "unreachable fraction",
                     (dir / "unreachable.svg").string());
    }
  }
  if (!result.events.empty())
    emit_events_log(result, (dir / "events.log").string());
}

void print_summary(const ScenarioResult& result, std::ostream& out) {
  out << "label=" << result.spec.label << " nodes=" << result.spec.base.node_count
      << " reps=" << result.spec.base.repetitions
      << " traffic=" << result.spec.traffic << '\n';
  out << std::left << std::setw(10) << "p_target" << std::setw(10) << "fraction"
      << std::setw(11) << "delivered" << std::setw(13) << "unreachable"
      << std::setw(14) << "unreach_frac" << std::setw(11) << "mean_hops"
      << std::setw(11) << "head_keys" << std::setw(12) << "share_count"
      << '\n';
  const auto old_precision = out.precision();
  out << std::setprecision(4);
  for (const PointSummary& s : result.summaries) {
    out << std::left << std::setw(10) << s.point.p_target << std::setw(10)
        << s.point.compromise_fraction << std::setw(11) << s.delivered_total
        << std::setw(13) << s.unreachable_total << std::setw(14)
        << s.unreachable_fraction << std::setw(11) << s.mean_hops_mean
        << std::setw(11) << s.mean_head_keys_mean << std::setw(12)
        << s.mean_share_count_mean << '\n';
  }
  out << std::setprecision(static_cast<int>(old_precision));
}

}  // namespace wsnsim
