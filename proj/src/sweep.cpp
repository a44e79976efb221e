#include "dnp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dnp {

namespace {

const std::vector<std::string> kProtocolNames = {"novel", "ise", "dqt_novel", "dqt_ise"};
const std::vector<std::string> kParameterNames = {"rabi",       "lock_duration", "sweep_range",
                                                  "sweep_rate", "amplitude",     "theta"};

std::optional<Protocol> parse_protocol(const std::string& s) {
  for (std::size_t i = 0; i < kProtocolNames.size(); ++i)
    if (s == kProtocolNames[i]) return static_cast<Protocol>(i);
  return {};
}

std::optional<SweepParameter> parse_parameter(const std::string& s) {
  for (std::size_t i = 0; i < kParameterNames.size(); ++i)
    if (s == kParameterNames[i]) return static_cast<SweepParameter>(i);
  return {};
}

bool parameter_valid_for(Protocol p, SweepParameter param) {
  switch (param) {
    case SweepParameter::Rabi:
      return p != Protocol::DqtIse;
    case SweepParameter::LockDuration:
      return p == Protocol::Novel || p == Protocol::DqtNovel;
    case SweepParameter::SweepRange:
    case SweepParameter::SweepRate:
      return p == Protocol::Ise || p == Protocol::DqtIse;
    case SweepParameter::Amplitude:
      return p == Protocol::DqtNovel || p == Protocol::DqtIse;
    case SweepParameter::Theta:
      return true;
  }
  return false;
}

struct ConfigReader {
  const nlohmann::json& doc;
  std::vector<std::string>* errors;

  const nlohmann::json* find(const std::string& pointer) const {
    const auto ptr = nlohmann::json::json_pointer(pointer);
    if (!doc.contains(ptr)) return nullptr;
    return &doc.at(ptr);
  }

  void error(const std::string& pointer, const std::string& message) const {
    errors->push_back(pointer + ": " + message);
  }

  double number(const std::string& pointer, double fallback, bool required = false) const {
    const auto* j = find(pointer);
    if (j == nullptr) {
      if (required) error(pointer, "required field");
      return fallback;
    }
    if (!j->is_number()) {
      error(pointer, "expected a number");
      return fallback;
    }
    return j->get<double>();
  }

  int integer(const std::string& pointer, int fallback) const {
    const auto* j = find(pointer);
    if (j == nullptr) return fallback;
    if (!j->is_number_integer()) {
      error(pointer, "expected an integer");
      return fallback;
    }
    return j->get<int>();
  }

  bool boolean(const std::string& pointer, bool fallback) const {
    const auto* j = find(pointer);
    if (j == nullptr) return fallback;
    if (!j->is_boolean()) {
      error(pointer, "expected a boolean");
      return fallback;
    }
    return j->get<bool>();
  }

  std::string text(const std::string& pointer, const std::string& fallback,
                   bool required = false) const {
    const auto* j = find(pointer);
    if (j == nullptr) {
      if (required) error(pointer, "required field");
      return fallback;
    }
    if (!j->is_string()) {
      error(pointer, "expected a string");
      return fallback;
    }
    return j->get<std::string>();
  }
};

std::vector<double> parse_grid(const ConfigReader& r) {
  std::vector<double> grid;
  const auto* g = r.find("/grid");
  if (g == nullptr) {
    r.error("/grid", "required field");
    return grid;
  }
  if (g->contains("values")) {
    if (!(*g)["values"].is_array() || (*g)["values"].empty()) {
      r.error("/grid/values", "expected a nonempty array");
      return grid;
    }
    for (const auto& v : (*g)["values"]) {
      if (!v.is_number()) {
        r.error("/grid/values", "expected numbers");
        return {};
      }
      grid.push_back(v.get<double>());
    }
  } else {
    const double lo = r.number("/grid/min", 0.0, true);
    const double hi = r.number("/grid/max", 0.0, true);
    const int points = r.integer("/grid/points", 0);
    if (points < 1) {
      r.error("/grid/points", "must be >= 1");
      return grid;
    }
    for (int i = 0; i < points; ++i)
      grid.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
  }
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) {
      r.error("/grid", "grid must be strictly increasing");
      break;
    }
  return grid;
}

// cycle parameters resolved from the config, before the sweep value is applied
struct CycleDefaults {
  NovelParams novel;
  IseParams ise;
  double omega_sqt = kTwoPi * 10e6;
  double Delta = kTwoPi * 40e6;
  double alpha = 1.0;
  bool use_effective_model = false;
  double pi_pulse_duration = kDefaultPiDuration;
};

CycleDefaults parse_cycle(const ConfigReader& r, Protocol protocol, double larmor) {
  CycleDefaults c;
  c.novel.rabi = kTwoPi * r.number("/cycle/rabi_hz", larmor / kTwoPi);
  c.novel.lock_duration = r.number("/cycle/lock_duration_s", 10e-6);
  c.novel.pi_half_duration = r.number("/cycle/pi_half_duration_s", kDefaultPiHalfDuration);

  c.ise.f_range_hz = r.number("/cycle/f_range_hz", 10e6);
  c.ise.duration = r.number("/cycle/duration_s", 30e-6);
  // default drive: effective Rabi Omega_M / sqrt(2) on the Hartmann-Hahn match
  c.ise.rabi = kTwoPi * r.number("/cycle/rabi_hz", std::sqrt(2.0) * larmor / kTwoPi);

  c.omega_sqt = kTwoPi * r.number("/cycle/omega_sqt_hz", 10e6);
  c.Delta = kTwoPi * r.number("/cycle/delta_hz", 40e6);
  const double default_alpha =
      protocol == Protocol::DqtNovel
          ? alpha_for_effective_rabi(larmor, c.omega_sqt, c.Delta)
          : 1.0;
  c.alpha = r.number("/cycle/alpha", default_alpha);
  c.use_effective_model = r.boolean("/cycle/use_effective_model", false);
  c.pi_pulse_duration = r.number("/cycle/pi_pulse_duration_s", kDefaultPiDuration);

  if (c.novel.lock_duration <= 0) r.error("/cycle/lock_duration_s", "must be > 0");
  if (c.ise.f_range_hz <= 0) r.error("/cycle/f_range_hz", "must be > 0");
  if (c.ise.duration <= 0) r.error("/cycle/duration_s", "must be > 0");
  return c;
}

CycleParams make_cycle_params(Protocol protocol, const CycleDefaults& c) {
  switch (protocol) {
    case Protocol::Novel:
      return c.novel;
    case Protocol::Ise:
      return c.ise;
    case Protocol::DqtNovel: {
      DqtCycleParams d;
      d.base = c.novel;
      d.omega_sqt = c.omega_sqt;
      d.Delta = c.Delta;
      d.alpha = c.alpha;
      d.use_effective_model = c.use_effective_model;
      d.pi_pulse_duration = c.pi_pulse_duration;
      return d;
    }
    case Protocol::DqtIse: {
      DqtCycleParams d;
      d.base = c.ise;
      d.omega_sqt = c.omega_sqt;
      d.Delta = c.Delta;
      d.alpha = c.alpha;
      d.use_effective_model = c.use_effective_model;
      d.pi_pulse_duration = c.pi_pulse_duration;
      return d;
    }
  }
  throw std::logic_error("make_cycle_params: unknown protocol");
}

// apply one sweep-grid value (config units) to the cycle parameters
void apply_sweep_value(CycleParams& cycle, SweepParameter parameter, double value,
                       double& theta) {
  switch (parameter) {
    case SweepParameter::Theta:
      theta = value * kPi / 180.0;
      return;
    case SweepParameter::Rabi:
      if (auto* n = std::get_if<NovelParams>(&cycle)) {
        n->rabi = kTwoPi * value;
      } else if (auto* i = std::get_if<IseParams>(&cycle)) {
        i->rabi = kTwoPi * value;
      } else {
        auto& d = std::get<DqtCycleParams>(cycle);
        d.alpha = alpha_for_effective_rabi(kTwoPi * value, d.omega_sqt, d.Delta);
      }
      return;
    case SweepParameter::LockDuration: {
      if (auto* n = std::get_if<NovelParams>(&cycle)) {
        n->lock_duration = value;
      } else {
        auto& d = std::get<DqtCycleParams>(cycle);
        std::get<NovelParams>(d.base).lock_duration = value;
      }
      return;
    }
    case SweepParameter::SweepRange: {
      IseParams& i = std::holds_alternative<IseParams>(cycle)
                         ? std::get<IseParams>(cycle)
                         : std::get<IseParams>(std::get<DqtCycleParams>(cycle).base);
      // hold the sweep rate fixed while the range changes
      const double rate = i.sweep_rate_hz_per_s();
      i.f_range_hz = value;
      i.duration = value / rate;
      return;
    }
    case SweepParameter::SweepRate: {
      IseParams& i = std::holds_alternative<IseParams>(cycle)
                         ? std::get<IseParams>(cycle)
                         : std::get<IseParams>(std::get<DqtCycleParams>(cycle).base);
      i.duration = i.f_range_hz / value;
      return;
    }
    case SweepParameter::Amplitude: {
      auto& d = std::get<DqtCycleParams>(cycle);
      d.alpha = value;
      return;
    }
  }
}

BathSpec parse_bath(const ConfigReader& r) {
  BathSpec b;
  const auto* nuclei = r.find("/system/bath/nuclei");
  if (nuclei != nullptr) {
    b.sampled = false;
    if (!nuclei->is_array() || nuclei->empty()) {
      r.error("/system/bath/nuclei", "expected a nonempty array");
      return b;
    }
    for (const auto& j : *nuclei) {
      BathNucleus n;
      if (!j.contains("a_par_hz") || !j.contains("a_perp_hz")) {
        r.error("/system/bath/nuclei", "each nucleus needs a_par_hz and a_perp_hz");
        return b;
      }
      n.a_par = kTwoPi * j["a_par_hz"].get<double>();
      n.a_perp = kTwoPi * j["a_perp_hz"].get<double>();
      b.nuclei.push_back(n);
    }
    return b;
  }
  b.radius_m = r.number("/system/bath/radius_nm", 1.2) * 1e-9;
  b.min_coupling = kTwoPi * r.number("/system/bath/min_coupling_hz", 2e3);
  b.max_spins = r.integer("/system/bath/max_spins", 4);
  if (b.radius_m <= 0) r.error("/system/bath/radius_nm", "must be > 0");
  if (b.max_spins < 0 || b.max_spins > 12) r.error("/system/bath/max_spins", "must lie in [0,12]");
  return b;
}

std::vector<std::uint64_t> parse_seeds(const ConfigReader& r) {
  std::vector<std::uint64_t> seeds;
  const auto* s = r.find("/seeds");
  if (s == nullptr) {
    // 30 bath configurations by default, as in the reference experiments
    for (int i = 0; i < 30; ++i) seeds.push_back(mix_seed(12345, i));
    return seeds;
  }
  if (s->is_array()) {
    for (const auto& v : *s) seeds.push_back(v.get<std::uint64_t>());
    if (seeds.empty()) r.error("/seeds", "expected a nonempty array");
    return seeds;
  }
  const std::uint64_t master = r.number("/seeds/master", 12345);
  const int count = r.integer("/seeds/count", 30);
  if (count < 1) {
    r.error("/seeds/count", "must be >= 1");
    return seeds;
  }
  for (int i = 0; i < count; ++i) seeds.push_back(mix_seed(master, i));
  return seeds;
}

NovelParams make_readout_cycle(const ConfigReader& r, double larmor) {
  NovelParams read;
  read.rabi = kTwoPi * r.number("/plan/readout_rabi_hz", larmor / kTwoPi);
  read.lock_duration = r.number("/plan/readout_lock_duration_s", 10e-6);
  read.polarize_direction = Direction::Down;
  return read;
}

SpinSystem make_system(const SweepConfig& config, std::uint64_t seed, double theta) {
  SpinSystem system;
  system.field_tesla = config.field_tesla;
  system.theta = theta;
  if (config.bath.sampled) {
    system.nuclei = sample_bath(seed, config.bath.radius_m, config.bath.min_coupling,
                                config.bath.max_spins, system.constants);
  } else {
    system.nuclei = config.bath.nuclei;
  }
  system.validate();
  return system;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

ValidationResult validate_config(const nlohmann::json& doc) {
  ValidationResult out;
  SweepConfig config;
  ConfigReader r{doc, &out.errors};

  const std::string protocol_name = r.text("/protocol", "", true);
  const auto protocol = parse_protocol(protocol_name);
  if (!protocol_name.empty() && !protocol)
    r.error("/protocol", "must be one of novel|ise|dqt_novel|dqt_ise");
  if (protocol) config.protocol = *protocol;

  const std::string parameter_name = r.text("/parameter", "", true);
  const auto parameter = parse_parameter(parameter_name);
  if (!parameter_name.empty() && !parameter)
    r.error("/parameter", "must be one of rabi|lock_duration|sweep_range|sweep_rate|amplitude|theta");
  if (parameter) config.parameter = *parameter;
  if (protocol && parameter && !parameter_valid_for(*protocol, *parameter))
    r.error("/parameter", "parameter '" + parameter_name + "' does not apply to protocol '" +
                              protocol_name + "'");

  config.grid = parse_grid(r);

  config.field_tesla = r.number("/system/field_tesla", 0.175);
  if (config.field_tesla < 0) r.error("/system/field_tesla", "must be >= 0");
  const double theta_deg = r.number("/system/theta_deg", 0.0);
  if (theta_deg < 0 || theta_deg > 90) r.error("/system/theta_deg", "must lie in [0,90]");
  config.theta = theta_deg * kPi / 180.0;
  config.bath = parse_bath(r);
  config.seeds = parse_seeds(r);

  PhysicalConstants constants;
  const double larmor = constants.nuclear_larmor(config.field_tesla);

  config.plan.n_polarize = r.integer("/plan/n_polarize", 50);
  // misaligned runs need more readout cycles to reinitialize the bath
  const int default_m = theta_deg > 1.0 ? 300 : 200;
  config.plan.m_readout = r.integer("/plan/m_readout", default_m);
  config.plan.tail_points = r.integer("/plan/tail_points", 30);
  config.plan.warmup_reps = r.integer("/plan/warmup", 0);
  if (config.plan.n_polarize < 0) r.error("/plan/n_polarize", "must be >= 0");
  if (config.plan.m_readout < 1) r.error("/plan/m_readout", "must be >= 1");
  if (config.plan.tail_points < 1 || config.plan.tail_points >= config.plan.m_readout)
    r.error("/plan/tail_points", "must lie in [1, m_readout)");
  if (config.plan.warmup_reps < 0) r.error("/plan/warmup", "must be >= 0");

  const CycleDefaults cycle = parse_cycle(r, config.protocol, larmor);
  config.plan.polarize_cycle = make_cycle_params(config.protocol, cycle);
  config.plan.readout_cycle = make_readout_cycle(r, larmor);

  config.imperfections = r.boolean("/imperfections/enabled", false);
  config.reset.p_charge = r.number("/imperfections/p_charge", 0.70);
  config.reset.p_spin = r.number("/imperfections/p_spin", 0.92);
  if (config.reset.p_charge < 0 || config.reset.p_charge > 1)
    r.error("/imperfections/p_charge", "must lie in [0,1]");
  if (config.reset.p_spin < 0 || config.reset.p_spin > 1)
    r.error("/imperfections/p_spin", "must lie in [0,1]");
  config.amplitude_jitter = r.boolean("/imperfections/amplitude_jitter", false);
  config.output_path = r.text("/output_path", "sweep.csv");

  // effective-model precondition from the adiabatic elimination
  if (protocol && (*protocol == Protocol::DqtNovel || *protocol == Protocol::DqtIse)) {
    double alpha_max = cycle.alpha;
    if (parameter && *parameter == SweepParameter::Amplitude && !config.grid.empty())
      alpha_max = std::max(alpha_max, config.grid.back());
    if (parameter && *parameter == SweepParameter::Rabi && !config.grid.empty())
      alpha_max = std::max(alpha_max, alpha_for_effective_rabi(kTwoPi * config.grid.back(),
                                                               cycle.omega_sqt, cycle.Delta));
    if (!(cycle.Delta > std::sqrt(alpha_max) * cycle.omega_sqt))
      r.error("/cycle/delta_hz",
              "effective-model precondition violated: Delta must exceed the drive "
              "amplitude sqrt(alpha)*Omega_SQT");
  }

  // resolved echo with derived quantities; never runs physics
  nlohmann::json echo;
  echo["protocol"] = protocol_name;
  echo["parameter"] = parameter_name;
  echo["grid"] = config.grid;
  echo["system"] = {{"field_tesla", config.field_tesla},
                    {"theta_deg", theta_deg},
                    {"nuclear_larmor_hz", larmor / kTwoPi}};
  if (config.bath.sampled) {
    echo["system"]["bath"] = {{"radius_nm", config.bath.radius_m * 1e9},
                              {"min_coupling_hz", config.bath.min_coupling / kTwoPi},
                              {"max_spins", config.bath.max_spins}};
  } else {
    echo["system"]["bath"] = {{"explicit_nuclei", config.bath.nuclei.size()}};
  }
  echo["plan"] = {{"n_polarize", config.plan.n_polarize},
                  {"m_readout", config.plan.m_readout},
                  {"tail_points", config.plan.tail_points},
                  {"warmup", config.plan.warmup_reps}};
  echo["seeds"] = config.seeds.size();
  echo["imperfections"] = {{"enabled", config.imperfections},
                           {"p_charge", config.reset.p_charge},
                           {"p_spin", config.reset.p_spin},
                           {"amplitude_jitter", config.amplitude_jitter}};
  nlohmann::json derived;
  derived["hh_rabi_hz"] = larmor / kTwoPi;
  if (config.protocol == Protocol::Ise || config.protocol == Protocol::DqtIse) {
    const double v_hz_per_s = cycle.ise.sweep_rate_hz_per_s();
    const double omega_eff = config.protocol == Protocol::Ise
                                 ? cycle.ise.rabi / std::sqrt(2.0)
                                 : dqt_effective_rabi(cycle.omega_sqt, cycle.Delta, cycle.alpha);
    derived["sweep_rate_hz_per_s"] = v_hz_per_s;
    derived["adiabaticity_factor"] =
        adiabaticity_factor(omega_eff, kTwoPi * v_hz_per_s);
    derived["hh_mismatch_hz"] = std::abs(omega_eff - larmor) / kTwoPi;
  }
  if (config.protocol == Protocol::Novel) {
    derived["hh_mismatch_hz"] = std::abs(cycle.novel.rabi - larmor) / kTwoPi;
  }
  if (config.protocol == Protocol::DqtNovel || config.protocol == Protocol::DqtIse) {
    derived["omega_eff_hz"] =
        dqt_effective_rabi(cycle.omega_sqt, cycle.Delta, cycle.alpha) / kTwoPi;
    DqtParams p;
    p.Omega_p1 = p.Omega_m1 = cycle.omega_sqt;
    p.Delta = cycle.Delta;
    p.alpha = cycle.alpha;
    derived["delta_so_hz"] = dqt_stark_shift(p) / kTwoPi;
  }
  echo["derived"] = derived;
  echo["output_path"] = config.output_path;
  config.resolved = echo;
  out.echo = echo;

  if (out.errors.empty()) out.config = std::move(config);
  return out;
}

ValidationResult validate_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ValidationResult out;
    out.errors.push_back("/: cannot open config file '" + path + "'");
    return out;
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    ValidationResult out;
    out.errors.push_back(std::string("/: JSON parse error: ") + e.what());
    return out;
  }
  return validate_config(doc);
}

bool SweepTable::all_failed() const {
  for (const auto& p : points)
    if (p.seeds_ok > 0) return false;
  return true;
}

std::string SweepTable::to_csv() const {
  std::ostringstream os;
  os << "sweep_value,mean_quanta,stderr_quanta,mean_offset,flags\n";
  for (const auto& p : points) {
    os << format_double(p.sweep_value) << "," << format_double(p.mean_quanta) << ","
       << format_double(p.stderr_quanta) << "," << format_double(p.mean_offset) << ","
       << p.flags << "\n";
  }
  return os.str();
}

SweepTable run_sweep(const SweepConfig& config, const RunOptions& options) {
  std::vector<std::uint64_t> seeds = config.seeds;
  if (options.seed_override) {
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = mix_seed(*options.seed_override, i);
  }
  const ResetModel reset =
      (config.imperfections && !options.ideal) ? config.reset : ResetModel::ideal();
  const bool jitter = config.amplitude_jitter && !options.ideal;

  struct TaskResult {
    bool ok = false;
    double quanta = 0.0;
    double offset = 0.0;
    std::vector<std::string> flags;
    std::string failure;
  };
  const std::size_t n_points = config.grid.size();
  const std::size_t n_seeds = seeds.size();
  std::vector<TaskResult> results(n_points * n_seeds);

  auto run_task = [&](std::size_t task) {
    const std::size_t point = task / n_seeds;
    const std::size_t seed_idx = task % n_seeds;
    TaskResult& out = results[task];
    try {
      double theta = config.theta;
      CycleParams cycle = config.plan.polarize_cycle;
      apply_sweep_value(cycle, config.parameter, config.grid[point], theta);

      const SpinSystem system = make_system(config, seeds[seed_idx], theta);
      PropiPlan plan = config.plan;
      plan.polarize_cycle = cycle;
      plan.amplitude_jitter = jitter;
      plan.jitter_seed = mix_seed(seeds[seed_idx], point);

      const PropiRecord record = run_propi(system, plan, reset);
      const PropiResult analysis = analyze_propi(record, plan.tail_points, reset);
      out.quanta = analysis.corrected_quanta;
      out.offset = analysis.offset;
      out.flags = analysis.flags;
      out.ok = true;

      if (!options.dump_states_dir.empty()) {
        // terminal state of this task, for debugging
        std::ostringstream name;
        name << options.dump_states_dir << "/point" << point << "_seed" << seed_idx;
        dump_state(record.final_state, name.str());
      }
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "point=" << point << " seed_index=" << seed_idx << ": " << e.what();
      out.failure = msg.str();
    }
  };

  const int n_threads = std::max(1, options.threads);
  if (n_threads == 1) {
    for (std::size_t t = 0; t < results.size(); ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < n_threads; ++w)
      workers.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < results.size(); t = next.fetch_add(1))
          run_task(t);
      });
    for (auto& w : workers) w.join();
  }

  // merge by index, not completion order
  SweepTable table;
  for (std::size_t p = 0; p < n_points; ++p) {
    SweepPoint point;
    point.sweep_value = config.grid[p];
    std::vector<double> quanta;
    std::vector<std::string> flags;
    double offset_sum = 0.0;
    for (std::size_t s = 0; s < n_seeds; ++s) {
      const TaskResult& r = results[p * n_seeds + s];
      if (!r.ok) {
        table.failures.push_back(r.failure);
        continue;
      }
      quanta.push_back(r.quanta);
      offset_sum += r.offset;
      for (const auto& f : r.flags)
        if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
    }
    point.seeds_ok = static_cast<int>(quanta.size());
    if (!quanta.empty()) {
      const double mean =
          std::accumulate(quanta.begin(), quanta.end(), 0.0) / quanta.size();
      double var = 0.0;
      for (double q : quanta) var += (q - mean) * (q - mean);
      point.mean_quanta = mean;
      point.stderr_quanta =
          quanta.size() > 1 ? std::sqrt(var / (quanta.size() - 1)) / std::sqrt(quanta.size())
                            : 0.0;
      point.mean_offset = offset_sum / quanta.size();
    }
    std::string joined;
    for (const auto& f : flags) joined += (joined.empty() ? "" : ";") + f;
    point.flags = joined;
    table.points.push_back(std::move(point));
  }
  return table;
}

void write_sweep_outputs(const SweepConfig& config, const SweepTable& table,
                         const RunOptions& options, double wall_seconds) {
  std::ofstream csv(config.output_path);
  if (!csv) throw std::runtime_error("cannot open output file " + config.output_path);
  csv << table.to_csv();

  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = config.resolved;
  manifest["ideal_override"] = options.ideal;
  manifest["threads"] = options.threads;
  manifest["wall_time_s"] = wall_seconds;
  manifest["timestamp"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  manifest["failures"] = table.failures;
  std::ofstream mf(config.output_path + ".manifest.json");
  mf << manifest.dump(2) << "\n";
}

std::vector<std::string> figure_preset_names() {
  return {"fig2e", "fig3a", "fig3b", "fig4b", "fig4c", "fig4d",
          "fig5b", "fig5c", "fig6b", "fig6c", "fig6d"};
}

nlohmann::json figure_preset(const std::string& name) {
  using nlohmann::json;
  json doc;
  // shared desk-scale defaults: the reference field, small sampled baths,
  // a handful of bath configurations
  doc["system"] = {{"field_tesla", 0.175},
                   {"theta_deg", 0.0},
                   {"bath", {{"radius_nm", 1.1}, {"min_coupling_hz", 10e3}, {"max_spins", 3}}}};
  doc["seeds"] = {{"master", 7}, {"count", 3}};
  doc["plan"] = {{"n_polarize", 10}, {"m_readout", 60}, {"tail_points", 15}, {"warmup", 1}};
  doc["imperfections"] = {{"enabled", false}};
  doc["output_path"] = name + ".csv";

  auto rate_values = [](double f_range_hz, double t_min, double t_max, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) {
      const double t = t_min + (t_max - t_min) * i / (n - 1);
      v.push_back(f_range_hz / t);
    }
    std::sort(v.begin(), v.end());
    return v;
  };

  if (name == "fig2e") {
    doc["mode"] = "record";
    doc["protocol"] = "novel";
    doc["plan"] = {{"n_polarize", 200}, {"m_readout", 200}, {"tail_points", 30}, {"warmup", 0}};
    doc["imperfections"] = {{"enabled", true}};
    doc["output_path"] = "fig2e_record.csv";
    return doc;
  }
  doc["mode"] = "sweep";
  if (name == "fig3a") {
    doc["protocol"] = "novel";
    doc["parameter"] = "rabi";
    doc["grid"] = {{"min", 1.0e6}, {"max", 2.8e6}, {"points", 46}};
  } else if (name == "fig3b") {
    doc["protocol"] = "novel";
    doc["parameter"] = "lock_duration";
    doc["grid"] = {{"min", 0.5e-6}, {"max", 20e-6}, {"points", 40}};
  } else if (name == "fig4b") {
    doc["protocol"] = "ise";
    doc["parameter"] = "sweep_range";
    doc["grid"] = {{"min", 1.0e6}, {"max", 20e6}, {"points", 20}};
    doc["cycle"] = {{"f_range_hz", 10e6}, {"duration_s", 10e-6}};
  } else if (name == "fig4c") {
    doc["protocol"] = "ise";
    doc["parameter"] = "sweep_rate";
    doc["grid"]["values"] = rate_values(10e6, 2e-6, 20e-6, 21);
    doc["cycle"] = {{"f_range_hz", 10e6}};
    doc["plan"] = {{"n_polarize", 20}, {"m_readout", 60}, {"tail_points", 15}, {"warmup", 0}};
  } else if (name == "fig4d") {
    doc["protocol"] = "ise";
    doc["parameter"] = "rabi";
    doc["grid"] = {{"min", 0.8e6}, {"max", 4.0e6}, {"points", 25}};
    doc["cycle"] = {{"f_range_hz", 10e6}, {"duration_s", 10e-6}};
    doc["plan"] = {{"n_polarize", 20}, {"m_readout", 60}, {"tail_points", 15}, {"warmup", 0}};
  } else if (name == "fig5b") {
    doc["protocol"] = "dqt_novel";
    doc["parameter"] = "rabi";
    doc["grid"] = {{"min", 1.0e6}, {"max", 2.8e6}, {"points", 37}};
  } else if (name == "fig5c") {
    doc["protocol"] = "dqt_novel";
    doc["parameter"] = "lock_duration";
    doc["grid"] = {{"min", 0.5e-6}, {"max", 20e-6}, {"points", 40}};
  } else if (name == "fig6b") {
    doc["protocol"] = "dqt_ise";
    doc["parameter"] = "sweep_range";
    doc["grid"] = {{"min", 0.25e6}, {"max", 10e6}, {"points", 20}};
    doc["cycle"] = {{"f_range_hz", 5e6}, {"duration_s", 10e-6}};
  } else if (name == "fig6c") {
    doc["protocol"] = "dqt_ise";
    doc["parameter"] = "sweep_rate";
    doc["grid"]["values"] = rate_values(5e6, 2e-6, 20e-6, 21);
    doc["cycle"] = {{"f_range_hz", 5e6}};
    doc["plan"] = {{"n_polarize", 20}, {"m_readout", 60}, {"tail_points", 15}, {"warmup", 0}};
  } else if (name == "fig6d") {
    doc["protocol"] = "dqt_ise";
    doc["parameter"] = "amplitude";
    doc["grid"] = {{"min", 0.2}, {"max", 3.0}, {"points", 25}};
    doc["cycle"] = {{"f_range_hz", 5e6}, {"duration_s", 10e-6}, {"delta_hz", 40e6},
                    {"omega_sqt_hz", 10e6}};
    doc["imperfections"] = {{"enabled", false}, {"amplitude_jitter", true}};
    doc["plan"] = {{"n_polarize", 20}, {"m_readout", 60}, {"tail_points", 15}, {"warmup", 0}};
  } else {
    throw std::invalid_argument("unknown figure preset '" + name + "'");
  }
  return doc;
}

}  // namespace dnp
