#ifndef VACUUMPROBE_CLI_HPP
#define VACUUMPROBE_CLI_HPP

#include <functional>
#include <string>
#include <vector>

namespace vacuumprobe::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Frequency input: a plain number is taken as an angular frequency in
/// natural units; an SI-suffixed value ("10MHz", "400THz", ...) is an
/// ordinary frequency in Hz and is converted to angular (x 2 pi).
double parse_frequency(const std::string& text);

/// Grid syntax "start:stop:count" with count >= 1 equally spaced points.
std::vector<double> parse_grid(const std::string& text);

/// Number of sweep workers: hardware concurrency capped by the
/// VACUUMPROBE_THREADS environment variable (minimum 1).
int worker_count();

/// Runs fn(i) for i in [0, n) on worker_count() threads.  Results must
/// be written into per-index slots; the merge is then order-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Full CLI entry point; returns the process exit code
/// (0 success, 1 computation error, 2 usage error).
int run_main(int argc, const char* const* argv);

}  // namespace vacuumprobe::cli

#endif
