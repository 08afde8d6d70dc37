#include "wsnsim/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace wsnsim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), last, out);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("bad numeric value for " + key);
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), last, out);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("bad integer value for " + key);
  return out;
}

std::uint32_t parse_u32(const std::string& key, const std::string& value) {
  const std::uint64_t wide = parse_u64(key, value);
  if (wide > 0xFFFFFFFFull)
    throw std::invalid_argument("value out of range for " + key);
  return static_cast<std::uint32_t>(wide);
}

}  // namespace

void SimConfig::validate() const {
  if (target_cluster_size < 2)
    throw std::invalid_argument("target_cluster_size below 2");
  if (node_count < target_cluster_size)
    throw std::invalid_argument("node_count below target_cluster_size");
  if (!(area_width > 0.0)) throw std::invalid_argument("area_width not positive");
  if (!(area_height > 0.0))
    throw std::invalid_argument("area_height not positive");
  if (!(short_range > 0.0)) throw std::invalid_argument("short_range not positive");
  if (!(long_range_factor >= 1.0))
    throw std::invalid_argument("long_range_factor below 1");
  if (!(p_target >= 0.0 && p_target < 1.0))
    throw std::invalid_argument("p_target outside [0, 1)");
  if (recluster_interval < 1)
    throw std::invalid_argument("recluster_interval below 1");
  if (repetitions < 1) throw std::invalid_argument("repetitions below 1");
  for (double f : compromise_fractions)
    if (!(f >= 0.0 && f <= 1.0))
      throw std::invalid_argument("compromise_fractions entry outside [0, 1]");
  if (!(mobility.speed_min >= 0.0))
    throw std::invalid_argument("speed_min negative");
  if (!(mobility.speed_max >= mobility.speed_min))
    throw std::invalid_argument("speed_max below speed_min");
  if (!(energy_costs.short_tx >= 0.0))
    throw std::invalid_argument("short_tx negative");
  if (!(energy_costs.long_tx >= 0.0))
    throw std::invalid_argument("long_tx negative");
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = trim(text.substr(start, comma - start));
    if (!item.empty()) out.push_back(parse_double("list entry", item));
    start = comma + 1;
  }
  return out;
}

void apply_config_entry(LoadedConfig& config, const std::string& key,
                        const std::string& value) {
  SimConfig& sim = config.sim;
  if (key == "node_count") sim.node_count = parse_u32(key, value);
  else if (key == "area_width") sim.area_width = parse_double(key, value);
  else if (key == "area_height") sim.area_height = parse_double(key, value);
  else if (key == "short_range") sim.short_range = parse_double(key, value);
  else if (key == "long_range_factor")
    sim.long_range_factor = parse_double(key, value);
  else if (key == "target_cluster_size")
    sim.target_cluster_size = parse_u32(key, value);
  else if (key == "p_target") sim.p_target = parse_double(key, value);
  else if (key == "recluster_interval")
    sim.recluster_interval = parse_u32(key, value);
  else if (key == "total_steps") sim.total_steps = parse_u32(key, value);
  else if (key == "repetitions") sim.repetitions = parse_u32(key, value);
  else if (key == "seed") sim.seed = parse_u64(key, value);
  else if (key == "compromise_fractions")
    sim.compromise_fractions = parse_double_list(value);
  else if (key == "speed_min") sim.mobility.speed_min = parse_double(key, value);
  else if (key == "speed_max") sim.mobility.speed_max = parse_double(key, value);
  else if (key == "pause_steps") sim.mobility.pause_steps = parse_u32(key, value);
  else if (key == "short_tx") sim.energy_costs.short_tx = parse_double(key, value);
  else if (key == "long_tx") sim.energy_costs.long_tx = parse_double(key, value);
  else if (key == "p_targets") config.extras.p_targets = parse_double_list(value);
  else if (key == "traffic") config.extras.traffic = parse_u32(key, value);
  else if (key == "label") config.extras.label = value;
  else throw std::invalid_argument("unknown config key: " + key);
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  LoadedConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    apply_config_entry(config, trim(stripped.substr(0, eq)),
                       trim(stripped.substr(eq + 1)));
  }
  return config;
}

}  // namespace wsnsim
