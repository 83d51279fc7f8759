#include "leasematch/report.hpp"

#include <charconv>
#include <ctime>
#include <sstream>

#include "leasematch/version.hpp"

namespace leasematch {

std::string format_double(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 12);
  return std::string(buffer, result.ptr);
}

std::string render_csv(const SweepResult& result, std::uint64_t master_seed) {
  std::ostringstream out;
  out << "scheme,n,metric,mean,stderr,drops,seed\n";
  for (const CellResult& cell : result.cells) {
    for (int k = 0; k < kMetricCount; ++k) {
      const Metric metric = static_cast<Metric>(k);
      out << to_string(cell.scheme) << ',' << cell.d2d_count << ','
          << metric_name(metric) << ',' << format_double(cell[metric].mean) << ','
          << format_double(cell[metric].stderr_mean) << ',' << cell.drops << ','
          << master_seed << '\n';
    }
  }
  return out.str();
}

std::string render_manifest(const ScenarioConfig& config, const SweepResult& result,
                            const std::string& timestamp) {
  std::ostringstream out;
  out << "# leasematch sweep manifest\n";
  out << "# version: " << kVersion << '\n';
  out << "# generated: " << timestamp << '\n';
  for (const CellResult& cell : result.cells) {
    out << "# cell: scheme=" << to_string(cell.scheme) << " n=" << cell.d2d_count
        << " drops=" << cell.drops << '\n';
  }
  out << serialize_config(config);
  return out.str();
}

std::string current_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

}  // namespace leasematch
