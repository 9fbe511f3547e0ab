#ifndef VACUUMPROBE_OUTPUT_HPP
#define VACUUMPROBE_OUTPUT_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vacuumprobe/sweep.hpp"

namespace vacuumprobe::output {

using Json = nlohmann::ordered_json;

/// Full result envelope written to disk: versioned schema, parameter
/// echo, results (sweep or named scalars), and provenance.
struct OutputRecord {
  std::string schema_version = "1";
  Json inputs = Json::object();
  std::optional<SweepResult> sweep;
  std::vector<std::pair<std::string, double>> scalars;
  std::string tool_version;
  std::string timestamp;  // excluded from determinism comparisons
};

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

std::string to_csv(const OutputRecord& record);
Json to_json(const OutputRecord& record);

/// Strict parse: unknown fields anywhere in the document are rejected
/// with IoError.
OutputRecord from_json(const Json& j);

/// Minimal line chart, one polyline per observable; presentation only.
std::string to_svg(const OutputRecord& record);

enum class Format { Csv, Json, Svg };

/// Writes <path_base>.csv/.json/.svg for the selected formats.
void write_outputs(const OutputRecord& record, const std::string& path_base,
                   const std::set<Format>& formats);

}  // namespace vacuumprobe::output

#endif
