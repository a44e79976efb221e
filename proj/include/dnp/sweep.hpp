#pragma once

// Declarative experiment runner: JSON sweep configs, seed-averaged PROPI
// sweeps, CSV + manifest output, and one-command figure presets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnp/analysis.hpp"

namespace dnp {

enum class Protocol { Novel, Ise, DqtNovel, DqtIse };
enum class SweepParameter { Rabi, LockDuration, SweepRange, SweepRate, Amplitude, Theta };

struct BathSpec {
  bool sampled = true;
  double radius_m = 1.2e-9;
  double min_coupling = kTwoPi * 2e3;
  int max_spins = 4;
  std::vector<BathNucleus> nuclei;  // used when sampled == false
};

struct SweepConfig {
  Protocol protocol = Protocol::Novel;
  SweepParameter parameter = SweepParameter::Rabi;
  std::vector<double> grid;  // config units: Hz, s, Hz/s, alpha, degrees
  double field_tesla = 0.175;
  double theta = 0.0;  // [rad]
  BathSpec bath;
  PropiPlan plan;
  std::vector<std::uint64_t> seeds;
  bool imperfections = false;
  ResetModel reset;
  bool amplitude_jitter = false;
  std::string output_path = "sweep.csv";
  nlohmann::json resolved;  // fully resolved config echoed into the manifest
};

struct ValidationResult {
  std::optional<SweepConfig> config;
  std::vector<std::string> errors;  // "<json pointer>: message"
  nlohmann::json echo;              // resolved config + derived quantities

  bool ok() const { return errors.empty(); }
};

ValidationResult validate_config(const nlohmann::json& doc);
ValidationResult validate_config_file(const std::string& path);

struct SweepPoint {
  double sweep_value = 0.0;
  double mean_quanta = 0.0;
  double stderr_quanta = 0.0;
  double mean_offset = 0.0;
  std::string flags;
  int seeds_ok = 0;
};

struct SweepTable {
  std::vector<SweepPoint> points;
  std::vector<std::string> failures;  // recorded per-task, sweep continues

  bool all_failed() const;
  std::string to_csv() const;
};

struct RunOptions {
  int threads = 1;
  std::optional<std::uint64_t> seed_override;
  bool ideal = false;           // disables ResetModel imperfections and jitter
  std::string dump_states_dir;  // empty disables state dumps
};

SweepTable run_sweep(const SweepConfig& config, const RunOptions& options = {});

void write_sweep_outputs(const SweepConfig& config, const SweepTable& table,
                         const RunOptions& options, double wall_seconds);

// one-command reproductions of the reference experiments, desk scale;
// "mode" is "sweep" or "record" (single cycle-resolved PROPI run)
nlohmann::json figure_preset(const std::string& name);
std::vector<std::string> figure_preset_names();

inline constexpr const char* kVersion = "dnp 0.1.0";

}  // namespace dnp
