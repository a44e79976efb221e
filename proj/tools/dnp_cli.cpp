// Command-line driver: validate and run sweep configs, reproduce the
// reference figures at desk scale.
//
// Exit codes: 0 success, 2 config error, 3 physics-run failure.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dnp/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;

int execute_sweep(const dnp::SweepConfig& config, const dnp::RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const dnp::SweepTable table = dnp::run_sweep(config, options);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  dnp::write_sweep_outputs(config, table, options, wall);

  for (const auto& f : table.failures) std::cerr << "warning: " << f << "\n";
  if (table.all_failed()) {
    std::cerr << "error: every sweep point failed\n";
    return kExitPhysics;
  }
  std::cout << "wrote " << config.output_path << " (" << table.points.size() << " points, "
            << wall << " s)\n";
  return kExitOk;
}

// single cycle-resolved PROPI run (the build-up figure preset)
int execute_record(const nlohmann::json& doc, const dnp::RunOptions& options) {
  using nlohmann::json;
  try {
    dnp::SpinSystem system;
    system.field_tesla = doc.at(json::json_pointer("/system/field_tesla")).get<double>();
    const auto& bath = doc.at(json::json_pointer("/system/bath"));
    system.nuclei = dnp::sample_bath(
        doc.value(json::json_pointer("/seeds/master"), std::uint64_t{7}),
        bath.value("radius_nm", 1.1) * 1e-9, dnp::kTwoPi * bath.value("min_coupling_hz", 10e3),
        bath.value("max_spins", 3), system.constants);
    system.validate();

    dnp::PropiPlan plan;
    plan.n_polarize = doc.value(json::json_pointer("/plan/n_polarize"), 200);
    plan.m_readout = doc.value(json::json_pointer("/plan/m_readout"), 200);
    plan.tail_points = doc.value(json::json_pointer("/plan/tail_points"), 30);
    dnp::NovelParams novel;
    novel.rabi = system.nuclear_larmor();
    plan.polarize_cycle = novel;
    plan.readout_cycle = novel;
    plan.readout_cycle.polarize_direction = dnp::Direction::Down;

    const bool imperfect =
        doc.value(json::json_pointer("/imperfections/enabled"), false) && !options.ideal;
    const dnp::ResetModel reset = imperfect ? dnp::ResetModel{} : dnp::ResetModel::ideal();

    const dnp::PropiRecord record = dnp::run_propi(system, plan, reset);
    const dnp::PropiResult result = dnp::analyze_propi(record, plan.tail_points, reset);

    const std::string out = doc.value("output_path", "record.csv");
    std::ofstream csv(out);
    csv << record.to_csv();
    std::ofstream js(out + ".result.json");
    js << result.to_json() << "\n";
    std::cout << "wrote " << out << " (" << record.rows.size() << " cycles); quanta "
              << result.corrected_quanta << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPhysics;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NV-center nuclear-spin-bath DNP simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string figure_name;
  dnp::RunOptions options;
  std::uint64_t seed_override = 0;
  bool have_seed_override = false;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--threads", options.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--ideal", options.ideal, "disable reset imperfections and jitter");
    cmd->add_option("--dump-states", options.dump_states_dir, "dump final states to DIR");
    cmd->add_option("--seed-override", seed_override, "replace the seed list")
        ->each([&](const std::string&) { have_seed_override = true; });
  };

  CLI::App* run = app.add_subcommand("run", "execute a sweep config");
  run->add_option("config", config_path, "JSON sweep config")->required();
  add_run_flags(run);

  CLI::App* validate = app.add_subcommand("validate", "validate a config and echo derived values");
  validate->add_option("config", config_path, "JSON sweep config")->required();

  CLI::App* figure = app.add_subcommand("figure", "run a desk-scale figure preset");
  figure->add_option("name", figure_name, "preset name, or 'list'")->required();
  add_run_flags(figure);

  CLI11_PARSE(app, argc, argv);
  if (have_seed_override) options.seed_override = seed_override;

  if (validate->parsed()) {
    const dnp::ValidationResult v = dnp::validate_config_file(config_path);
    if (!v.ok()) {
      for (const auto& e : v.errors) std::cerr << "error: " << e << "\n";
      return kExitConfig;
    }
    std::cout << v.echo.dump(2) << "\n";
    return kExitOk;
  }

  if (run->parsed()) {
    const dnp::ValidationResult v = dnp::validate_config_file(config_path);
    if (!v.ok()) {
      for (const auto& e : v.errors) std::cerr << "error: " << e << "\n";
      return kExitConfig;
    }
    try {
      return execute_sweep(*v.config, options);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitPhysics;
    }
  }

  // figure presets
  if (figure_name == "list") {
    for (const auto& n : dnp::figure_preset_names()) std::cout << n << "\n";
    return kExitOk;
  }
  nlohmann::json preset;
  try {
    preset = dnp::figure_preset(figure_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (preset.value("mode", "sweep") == "record") return execute_record(preset, options);

  const dnp::ValidationResult v = dnp::validate_config(preset);
  if (!v.ok()) {
    for (const auto& e : v.errors) std::cerr << "error: " << e << "\n";
    return kExitConfig;
  }
  try {
    return execute_sweep(*v.config, options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPhysics;
  }
}
