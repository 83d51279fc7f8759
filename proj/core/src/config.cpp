#include "leasematch/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "leasematch/error.hpp"

namespace leasematch {

namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double parse_double(std::string_view value, int line) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto result = std::from_chars(value.data(), end, out);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw ConfigError(line, "expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

long long parse_int(std::string_view value, int line) {
  long long out = 0;
  const char* end = value.data() + value.size();
  const auto result = std::from_chars(value.data(), end, out);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw ConfigError(line, "expected an integer, got '" + std::string(value) + "'");
  }
  return out;
}

std::uint64_t parse_u64(std::string_view value, int line) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  const auto result = std::from_chars(value.data(), end, out);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw ConfigError(line, "expected an unsigned integer, got '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view value, int line) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(line, "expected true/false, got '" + std::string(value) + "'");
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  while (!value.empty()) {
    const auto comma = value.find(',');
    items.push_back(trim(value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

// Shortest decimal that round-trips the exact double.
std::string format_exact(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void validate(const ScenarioConfig& config) {
  auto require = [](bool ok, const char* message) {
    if (!ok) throw ConfigError(0, message);
  };
  require(config.channel.pathloss_constant > 0, "channel.K must be positive");
  require(config.channel.pathloss_exponent > 0, "channel.eta must be positive");
  require(config.channel.cell_radius_m > 0, "channel.cell_radius must be positive");
  require(config.channel.edge_band_m >= 0 &&
              config.channel.edge_band_m < config.channel.cell_radius_m,
          "channel.edge_band must lie in [0, cell_radius)");
  require(config.channel.d2d_separation_m > 0,
          "channel.d2d_separation must be positive");
  require(config.channel.relay_range_m >= 0, "channel.relay_range must be nonnegative");
  require(config.game.beta1 > 0, "game.beta1 must be positive");
  require(config.game.beta2 > 0, "game.beta2 must be positive");
  require(config.game.ceu_power_w > 0, "game.P_C must be positive");
  require(config.game.d2d_power_w > 0, "game.P_D must be positive");
  require(config.game.rate_requirement > 0, "game.R_th must be positive");
  require(config.ceu_count >= 1, "sim.M must be at least 1");
  require(config.drops >= 1, "sim.drops must be at least 1");
  require(!config.d2d_counts.empty(), "sim.N_values must not be empty");
  for (int n : config.d2d_counts) {
    require(n >= 0, "sim.N_values entries must be nonnegative");
  }
  require(!config.schemes.empty(), "sim.schemes must not be empty");
  require(config.fixed_price >= 0, "sim.c_fixed must be nonnegative");
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

ScenarioConfig default_config() {
  ScenarioConfig config;
  config.channel.noise_w = dbm_to_watts(config.noise_dbm);
  config.game.noise_w = config.channel.noise_w;
  return config;
}

ScenarioConfig load_config(std::istream& in) {
  ScenarioConfig config = default_config();
  bool saw_fixed_price = false;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(line_no, "expected 'key = value'");
    }

    if (key == "channel.K") {
      config.channel.pathloss_constant = parse_double(value, line_no);
    } else if (key == "channel.eta") {
      config.channel.pathloss_exponent = parse_double(value, line_no);
    } else if (key == "channel.N0_dBm") {
      config.noise_dbm = parse_double(value, line_no);
    } else if (key == "channel.cell_radius") {
      config.channel.cell_radius_m = parse_double(value, line_no);
    } else if (key == "channel.edge_band") {
      config.channel.edge_band_m = parse_double(value, line_no);
    } else if (key == "channel.d2d_separation") {
      config.channel.d2d_separation_m = parse_double(value, line_no);
    } else if (key == "channel.relay_range") {
      config.channel.relay_range_m = parse_double(value, line_no);
    } else if (key == "game.beta1") {
      config.game.beta1 = parse_double(value, line_no);
    } else if (key == "game.beta2") {
      config.game.beta2 = parse_double(value, line_no);
    } else if (key == "game.P_C") {
      config.game.ceu_power_w = parse_double(value, line_no);
    } else if (key == "game.P_D") {
      config.game.d2d_power_w = parse_double(value, line_no);
    } else if (key == "game.R_th") {
      config.game.rate_requirement = parse_double(value, line_no);
    } else if (key == "sim.M") {
      config.ceu_count = static_cast<int>(parse_int(value, line_no));
    } else if (key == "sim.N_values") {
      config.d2d_counts.clear();
      for (const auto item : split_list(value)) {
        config.d2d_counts.push_back(static_cast<int>(parse_int(item, line_no)));
      }
    } else if (key == "sim.drops") {
      config.drops = static_cast<int>(parse_int(value, line_no));
    } else if (key == "sim.schemes") {
      config.schemes.clear();
      for (const auto item : split_list(value)) {
        try {
          config.schemes.push_back(scheme_from_string(std::string(item)));
        } catch (const ConfigError& e) {
          throw ConfigError(line_no, e.what());
        }
      }
    } else if (key == "sim.c_fixed") {
      config.fixed_price = parse_double(value, line_no);
      saw_fixed_price = true;
    } else if (key == "sim.master_seed") {
      config.master_seed = parse_u64(value, line_no);
    } else if (key == "sim.condition_outage") {
      config.condition_outage = parse_bool(value, line_no);
    } else if (key == "sim.count_unmatched_direct_rate") {
      config.count_unmatched_direct_rate = parse_bool(value, line_no);
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }

  if (!saw_fixed_price) {
    config.fixed_price =
        0.5 * config.game.beta2 * config.game.d2d_power_w + config.game.beta1;
  }
  config.channel.noise_w = dbm_to_watts(config.noise_dbm);
  config.game.noise_w = config.channel.noise_w;
  validate(config);
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(0, "cannot open config file '" + path + "'");
  }
  return load_config(in);
}

std::string serialize_config(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "channel.K = " << format_exact(config.channel.pathloss_constant) << '\n';
  out << "channel.eta = " << format_exact(config.channel.pathloss_exponent) << '\n';
  out << "channel.N0_dBm = " << format_exact(config.noise_dbm) << '\n';
  out << "channel.cell_radius = " << format_exact(config.channel.cell_radius_m) << '\n';
  out << "channel.edge_band = " << format_exact(config.channel.edge_band_m) << '\n';
  out << "channel.d2d_separation = " << format_exact(config.channel.d2d_separation_m)
      << '\n';
  out << "channel.relay_range = " << format_exact(config.channel.relay_range_m) << '\n';
  out << "game.beta1 = " << format_exact(config.game.beta1) << '\n';
  out << "game.beta2 = " << format_exact(config.game.beta2) << '\n';
  out << "game.P_C = " << format_exact(config.game.ceu_power_w) << '\n';
  out << "game.P_D = " << format_exact(config.game.d2d_power_w) << '\n';
  out << "game.R_th = " << format_exact(config.game.rate_requirement) << '\n';
  out << "sim.M = " << config.ceu_count << '\n';
  out << "sim.N_values = ";
  for (std::size_t k = 0; k < config.d2d_counts.size(); ++k) {
    out << (k == 0 ? "" : ",") << config.d2d_counts[k];
  }
  out << '\n';
  out << "sim.drops = " << config.drops << '\n';
  out << "sim.schemes = ";
  for (std::size_t k = 0; k < config.schemes.size(); ++k) {
    out << (k == 0 ? "" : ",") << to_string(config.schemes[k]);
  }
  out << '\n';
  out << "sim.c_fixed = " << format_exact(config.fixed_price) << '\n';
  out << "sim.master_seed = " << config.master_seed << '\n';
  out << "sim.condition_outage = " << (config.condition_outage ? "true" : "false")
      << '\n';
  out << "sim.count_unmatched_direct_rate = "
      << (config.count_unmatched_direct_rate ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace leasematch
