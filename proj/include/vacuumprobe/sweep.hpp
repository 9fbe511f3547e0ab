#ifndef VACUUMPROBE_SWEEP_HPP
#define VACUUMPROBE_SWEEP_HPP

#include <string>
#include <utility>
#include <vector>

namespace vacuumprobe {

/// Labeled grid of one independent variable against one or more computed
/// observables, with a parameter echo for serialization.  Observable and
/// metadata order is insertion order (deterministic).
struct SweepResult {
  std::string axis_name;
  std::vector<double> axis_values;
  std::vector<std::pair<std::string, std::vector<double>>> observables;
  std::vector<std::pair<std::string, std::string>> metadata;

  const std::vector<double>& observable(const std::string& name) const;
  void add_metadata(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
  }
};

}  // namespace vacuumprobe

#endif
