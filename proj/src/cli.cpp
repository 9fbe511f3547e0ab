#include "vacuumprobe/cli.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "vacuumprobe/dynamics.hpp"
#include "vacuumprobe/errors.hpp"
#include "vacuumprobe/modes.hpp"
#include "vacuumprobe/output.hpp"
#include "vacuumprobe/switching.hpp"

namespace vacuumprobe::cli {

namespace {

constexpr double kTwoPi = 6.28318530717958647693;
using Json = nlohmann::ordered_json;

double parse_plain_double(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " value '" + text + "'");
  }
}

}  // namespace

double parse_frequency(const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("cannot parse frequency '" + text + "'");
  }
  std::string suffix = text.substr(pos);
  while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front()))) {
    suffix.erase(suffix.begin());
  }
  if (suffix.empty()) return v;  // angular, natural units
  double mult = 0.0;
  if (suffix == "Hz") mult = 1.0;
  else if (suffix == "kHz") mult = 1e3;
  else if (suffix == "MHz") mult = 1e6;
  else if (suffix == "GHz") mult = 1e9;
  else if (suffix == "THz") mult = 1e12;
  else throw UsageError("unknown frequency suffix '" + suffix + "' in '" + text + "'");
  return kTwoPi * v * mult;
}

std::vector<double> parse_grid(const std::string& text) {
  std::size_t c1 = text.find(':');
  std::size_t c2 = (c1 == std::string::npos) ? std::string::npos
                                             : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw UsageError("grid '" + text + "' is not of the form start:stop:count");
  }
  double start = parse_plain_double(text.substr(0, c1), "grid start");
  double stop = parse_plain_double(text.substr(c1 + 1, c2 - c1 - 1), "grid stop");
  std::string count_s = text.substr(c2 + 1);
  long count = 0;
  try {
    std::size_t pos = 0;
    count = std::stol(count_s, &pos);
    if (pos != count_s.size()) throw std::invalid_argument(count_s);
  } catch (const std::exception&) {
    throw UsageError("cannot parse grid count '" + count_s + "'");
  }
  if (count < 1) throw UsageError("grid count must be >= 1 (grid is empty)");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = start;
  } else {
    for (long i = 0; i < count; ++i) {
      grid[i] = start + (stop - start) * static_cast<double>(i) / (count - 1);
    }
  }
  return grid;
}

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("VACUUMPROBE_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap < 1) cap = 1;
      n = std::min(n, cap);
    } catch (const std::exception&) {
      throw UsageError("VACUUMPROBE_THREADS is not an integer");
    }
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  int workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::set<output::Format> parse_formats(const std::string& text) {
  std::set<output::Format> formats;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") formats.insert(output::Format::Csv);
    else if (item == "json") formats.insert(output::Format::Json);
    else if (item == "svg") formats.insert(output::Format::Svg);
    else if (!item.empty()) throw UsageError("unknown output format '" + item + "'");
  }
  if (formats.empty()) throw UsageError("no output format selected");
  return formats;
}

// Converts JSON config values to CLI tokens so that a config file acts
// as defaults; command-line flags come later and win (TakeLast policy).
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file '" + path + "'");
  Json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  std::vector<std::string> tokens;
  for (auto it = j.begin(); it != j.end(); ++it) {
    tokens.push_back("--" + it.key());
    const Json& v = it.value();
    if (v.is_string()) tokens.push_back(v.get<std::string>());
    else if (v.is_boolean()) {
      if (!v.get<bool>()) tokens.pop_back();  // false flag: omit
    } else if (v.is_number_integer()) {
      tokens.push_back(std::to_string(v.get<long long>()));
    } else if (v.is_number()) {
      tokens.push_back(output::format_double(v.get<double>()));
    } else {
      throw UsageError("config key '" + it.key() + "' has unsupported type");
    }
  }
  return tokens;
}

struct CommonOpts {
  std::string config;
  std::string output_path = "vacuumprobe_out";
  std::string formats = "csv,json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config,
                  "JSON config file; flags override file values");
  cmd->add_option("--output", opts.output_path,
                  "Output path base (extension added per format)");
  cmd->add_option("--format", opts.formats,
                  "Comma-separated subset of csv,json,svg");
}

void emit(const output::OutputRecord& base, const CommonOpts& opts) {
  output::OutputRecord record = base;
  record.tool_version = kToolVersion;
  record.timestamp = utc_timestamp();
  output::write_outputs(record, opts.output_path, parse_formats(opts.formats));
  // Scalar results also go to stdout for interactive use.
  for (const auto& [name, value] : record.scalars) {
    std::cout << name << " = " << output::format_double(value) << "\n";
  }
}

int run_impl(int argc, const char* const* argv) {
  CLI::App app{
      "vacuumprobe: vacuum particle content, frequency shift and driven "
      "dynamics of a cavity divided by a quantum-controlled mirror"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // --- bogoliubov ---------------------------------------------------
  auto* cmd_bog = app.add_subcommand(
      "bogoliubov", "Single mode-mixing coefficient (closed form)");
  CommonOpts bog_common;
  std::string bog_side = "left", bog_kind;
  int bog_j = 1, bog_n = 1;
  double bog_ratio = 0.0;
  bool bog_oracle = false;
  cmd_bog->add_option("--side", bog_side, "left or right sub-cavity")
      ->check(CLI::IsMember({"left", "right"}));
  cmd_bog->add_option("--kind", bog_kind, "alpha or beta")
      ->required()
      ->check(CLI::IsMember({"alpha", "beta"}));
  cmd_bog->add_option("--j", bog_j, "sub-cavity mode index (default 1)");
  cmd_bog->add_option("--n", bog_n, "global mode index")->required();
  cmd_bog->add_option("--ratio", bog_ratio, "length ratio a = r/L")->required();
  cmd_bog->add_flag("--check-oracle", bog_oracle,
                    "Also evaluate the quadrature oracle");
  add_common(cmd_bog, bog_common);

  // --- photons ------------------------------------------------------
  auto* cmd_ph = app.add_subcommand(
      "photons", "Vacuum photon content of a sub-cavity mode");
  CommonOpts ph_common;
  int ph_mode = 1;
  long ph_trunc = 10000;
  double ph_ratio = 0.0;
  bool ph_convergence = false;
  cmd_ph->add_option("--mode", ph_mode, "sub-cavity mode index (default 1)");
  cmd_ph->add_option("--ratio", ph_ratio, "length ratio a = r/L")->required();
  cmd_ph->add_option("--truncation", ph_trunc, "number of global modes summed");
  cmd_ph->add_flag("--convergence", ph_convergence,
                   "Also report the value at doubled truncation");
  add_common(cmd_ph, ph_common);

  // --- shift --------------------------------------------------------
  auto* cmd_sh = app.add_subcommand(
      "shift", "Vacuum frequency shift delta_R of the control atom");
  CommonOpts sh_common;
  std::string sh_omega1 = "1", sh_nu = "0", sh_gamma = "0";
  double sh_ratio = 0.0;
  long sh_trunc = 10000;
  cmd_sh->add_option("--omega1", sh_omega1,
                     "sub-cavity fundamental (angular; or SI-suffixed Hz)");
  cmd_sh->add_option("--ratio", sh_ratio, "length ratio a = r/L")->required();
  cmd_sh->add_option("--truncation", sh_trunc, "number of global modes summed");
  cmd_sh->add_option("--nu", sh_nu,
                     "atom transition frequency for the delta_R/nu ratio");
  cmd_sh->add_option("--gamma", sh_gamma,
                     "atom linewidth for the delta_R/gamma ratio");
  add_common(cmd_sh, sh_common);

  // --- dynamics -----------------------------------------------------
  auto* cmd_dy = app.add_subcommand(
      "dynamics", "Two-level Rabi evolution P_R(t) at an effective detuning");
  CommonOpts dy_common;
  std::string dy_g, dy_detuning = "0", dy_shift = "0", dy_tgrid;
  cmd_dy->add_option("--g", dy_g, "drive coupling (angular; or SI-suffixed)")
      ->required();
  cmd_dy->add_option("--detuning", dy_detuning, "bare detuning nu - omega_D");
  cmd_dy->add_option("--shift", dy_shift, "effective shift added to detuning");
  cmd_dy->add_option("--t-grid", dy_tgrid, "time grid start:stop:count")
      ->required();
  add_common(cmd_dy, dy_common);

  // --- sweep --------------------------------------------------------
  auto* cmd_sw = app.add_subcommand(
      "sweep", "Detuning sweep of the perturbative transition probability");
  CommonOpts sw_common;
  std::string sw_axis = "detuning", sw_grid, sw_omega1 = "1", sw_method = "deltar";
  std::string sw_g = "1e-6";
  double sw_ratio = 0.5, sw_t = 0.0;
  long sw_trunc = 10000;
  int sw_cutoff = 20;
  cmd_sw->add_option("--axis", sw_axis, "sweep axis (detuning)")
      ->check(CLI::IsMember({"detuning"}));
  cmd_sw->add_option("--grid", sw_grid, "detuning grid start:stop:count")
      ->required();
  cmd_sw->add_option("--t", sw_t, "drive time")->required();
  cmd_sw->add_option("--omega1", sw_omega1, "sub-cavity fundamental");
  cmd_sw->add_option("--g", sw_g, "drive coupling");
  cmd_sw->add_option("--ratio", sw_ratio, "length ratio a = r/L");
  cmd_sw->add_option("--truncation", sw_trunc, "Bogoliubov truncation");
  cmd_sw->add_option("--cutoff", sw_cutoff, "Fock cutoff for gaussian method");
  cmd_sw->add_option("--method", sw_method, "deltar or gaussian")
      ->check(CLI::IsMember({"deltar", "gaussian"}));
  add_common(cmd_sw, sw_common);

  // --- reflectivity -------------------------------------------------
  auto* cmd_rf = app.add_subcommand(
      "reflectivity", "Mirror-created particle number vs effective reflectivity");
  CommonOpts rf_common;
  std::string rf_grid;
  int rf_mode = 1;
  long rf_trunc = 2000;
  cmd_rf->add_option("--reff-grid", rf_grid, "r_eff grid start:stop:count")
      ->required();
  cmd_rf->add_option("--mode", rf_mode, "cavity mode index");
  cmd_rf->add_option("--truncation", rf_trunc, "switched-mode sum truncation");
  add_common(cmd_rf, rf_common);

  // --- intensity ----------------------------------------------------
  auto* cmd_in = app.add_subcommand(
      "intensity", "Lorentzian-comb intracavity intensity");
  CommonOpts in_common;
  std::string in_pump, in_omega1;
  double in_finesse = 100.0, in_ratt = 0.0, in_crsq = 1.0, in_i0 = 1.0;
  cmd_in->add_option("--pump", in_pump, "pump frequency")->required();
  cmd_in->add_option("--omega1", in_omega1, "sub-cavity fundamental")
      ->required();
  cmd_in->add_option("--finesse", in_finesse, "cavity finesse");
  cmd_in->add_option("--ratt", in_ratt, "attenuation reflectivity r_att");
  cmd_in->add_option("--crsq", in_crsq, "reflective weight |c_R|^2");
  cmd_in->add_option("--i0", in_i0, "input intensity scale");
  add_common(cmd_in, in_common);

  // Assemble the token list, splicing config-file tokens in right after
  // the subcommand name so explicit flags (later tokens) override them.
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string value;
    if (args[i] == "--config" && i + 1 < args.size()) value = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) value = args[i].substr(9);
    else continue;
    std::vector<std::string> extra = config_tokens(value);
    args.insert(args.begin() + 1, extra.begin(), extra.end());
    break;
  }
  // CLI11 consumes tokens in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cmd_bog->parsed()) {
    modes::Side side = (bog_side == "left") ? modes::Side::Left : modes::Side::Right;
    modes::Kind kind = (bog_kind == "alpha") ? modes::Kind::Alpha : modes::Kind::Beta;
    output::OutputRecord record;
    record.inputs = {{"command", "bogoliubov"}, {"side", bog_side},
                     {"kind", bog_kind},        {"j", bog_j},
                     {"n", bog_n},              {"ratio", bog_ratio}};
    record.scalars.emplace_back(
        "coefficient",
        modes::bogoliubov_coefficient(side, kind, bog_j, bog_n, bog_ratio));
    if (bog_oracle) {
      record.scalars.emplace_back(
          "oracle", modes::overlap_oracle(side, kind, bog_j, bog_n, bog_ratio));
    }
    emit(record, bog_common);
  } else if (cmd_ph->parsed()) {
    if (!(ph_ratio > 0.0) || !(ph_ratio < 1.0)) {
      throw UsageError("--ratio must lie in (0, 1)");
    }
    modes::PhotonNumberResult r =
        modes::subcavity_photon_number(ph_mode, ph_ratio, ph_trunc);
    output::OutputRecord record;
    record.inputs = {{"command", "photons"},
                     {"mode", ph_mode},
                     {"ratio", ph_ratio},
                     {"truncation", ph_trunc}};
    record.scalars.emplace_back("value", r.value);
    record.scalars.emplace_back("tail_estimate", r.tail_estimate);
    record.scalars.emplace_back("total", r.total());
    if (ph_convergence) {
      modes::PhotonNumberResult r2 =
          modes::subcavity_photon_number(ph_mode, ph_ratio, 2 * ph_trunc);
      record.scalars.emplace_back("value_doubled", r2.value);
      record.scalars.emplace_back("relative_change",
                                  (r2.value - r.value) / r2.value);
    }
    emit(record, ph_common);
  } else if (cmd_sh->parsed()) {
    if (!(sh_ratio > 0.0) || !(sh_ratio < 1.0)) {
      throw UsageError("--ratio must lie in (0, 1)");
    }
    double w1 = parse_frequency(sh_omega1);
    double nu = parse_frequency(sh_nu);
    double gamma = parse_frequency(sh_gamma);
    double pi = 3.14159265358979323846;
    modes::CavityGeometry geom(pi / w1 / sh_ratio, pi / w1);
    double dR = modes::delta_R(geom, sh_trunc);
    output::OutputRecord record;
    record.inputs = {{"command", "shift"},   {"omega1", w1},
                     {"ratio", sh_ratio},    {"truncation", sh_trunc},
                     {"nu", nu},             {"gamma", gamma}};
    record.scalars.emplace_back("delta_R", dR);
    if (nu > 0.0) record.scalars.emplace_back("delta_R_over_nu", dR / nu);
    if (gamma > 0.0) record.scalars.emplace_back("delta_R_over_gamma", dR / gamma);
    emit(record, sh_common);
  } else if (cmd_dy->parsed()) {
    dynamics::QubitDrive drive;
    drive.coupling = parse_frequency(dy_g);
    drive.transition_frequency = parse_frequency(dy_detuning);
    drive.drive_frequency = 0.0;  // detuning given directly
    double shift = parse_frequency(dy_shift);
    std::vector<double> tgrid = parse_grid(dy_tgrid);
    output::OutputRecord record;
    record.inputs = {{"command", "dynamics"},
                     {"g", drive.coupling},
                     {"detuning", drive.detuning()},
                     {"shift", shift},
                     {"t_grid", dy_tgrid}};
    record.sweep = dynamics::rabi_evolve(drive, shift, tgrid);
    emit(record, dy_common);
  } else if (cmd_sw->parsed()) {
    double w1 = parse_frequency(sw_omega1);
    double g = parse_frequency(sw_g);
    std::vector<double> grid = parse_grid(sw_grid);
    if (grid.size() < 3) throw UsageError("--grid needs at least 3 points");
    if (!(sw_ratio > 0.0) || !(sw_ratio < 1.0)) {
      throw UsageError("--ratio must lie in (0, 1)");
    }
    double pi = 3.14159265358979323846;
    modes::CavityGeometry geom(pi / w1 / sw_ratio, pi / w1);
    modes::BogoliubovTable table =
        modes::BogoliubovTable::build(geom, static_cast<int>(sw_trunc));
    dynamics::ReducedVacuumState state =
        dynamics::reduced_vacuum_state(table, sw_cutoff);
    dynamics::PerturbativeMethod method =
        (sw_method == "gaussian") ? dynamics::PerturbativeMethod::GaussianExact
                                  : dynamics::PerturbativeMethod::DeltaRApprox;
    std::vector<double> pr(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
      dynamics::QubitDrive d;
      d.coupling = g;
      d.transition_frequency = 0.0;
      d.drive_frequency = -grid[i];  // detuning = grid value
      pr[i] = dynamics::pr_perturbative(d, state, w1, sw_t, method).value;
    });
    double peak = dynamics::quadratic_peak(grid, pr);
    SweepResult sweep;
    sweep.axis_name = "detuning";
    sweep.axis_values = grid;
    sweep.observables.emplace_back("P_R", std::move(pr));
    sweep.add_metadata("peak_detuning", output::format_double(peak));
    sweep.add_metadata("method", sw_method);
    sweep.add_metadata("t", output::format_double(sw_t));
    output::OutputRecord record;
    record.inputs = {{"command", "sweep"},      {"axis", sw_axis},
                     {"grid", sw_grid},         {"t", sw_t},
                     {"omega1", w1},            {"g", g},
                     {"ratio", sw_ratio},       {"truncation", sw_trunc},
                     {"cutoff", sw_cutoff},     {"method", sw_method}};
    record.sweep = std::move(sweep);
    emit(record, sw_common);
  } else if (cmd_rf->parsed()) {
    std::vector<double> grid = parse_grid(rf_grid);
    std::vector<double> values(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
      values[i] =
          switching::particle_number_imperfect(rf_mode, grid[i], rf_trunc)
              .total();
    });
    SweepResult sweep;
    sweep.axis_name = "r_eff";
    sweep.axis_values = grid;
    sweep.observables.emplace_back("particle_number", std::move(values));
    output::OutputRecord record;
    record.inputs = {{"command", "reflectivity"},
                     {"reff_grid", rf_grid},
                     {"mode", rf_mode},
                     {"truncation", rf_trunc}};
    record.sweep = std::move(sweep);
    emit(record, rf_common);
  } else if (cmd_in->parsed()) {
    double pump = parse_frequency(in_pump);
    double w1 = parse_frequency(in_omega1);
    output::OutputRecord record;
    record.inputs = {{"command", "intensity"}, {"pump", pump},
                     {"omega1", w1},           {"finesse", in_finesse},
                     {"ratt", in_ratt},        {"crsq", in_crsq},
                     {"i0", in_i0}};
    record.scalars.emplace_back(
        "intensity", dynamics::cavity_intensity(pump, w1, in_finesse, in_ratt,
                                                in_crsq, in_i0));
    emit(record, in_common);
  }
  return 0;
}

}  // namespace

int run_main(int argc, const char* const* argv) {
  try {
    return run_impl(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace vacuumprobe::cli
