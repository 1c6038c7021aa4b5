#include <precollapse/cli.hpp>

#include <precollapse/constants.hpp>
#include <precollapse/error.hpp>
#include <precollapse/experiment.hpp>
#include <precollapse/format.hpp>
#include <precollapse/radiation.hpp>
#include <precollapse/spacetime.hpp>

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

namespace precollapse::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Collects output files; every write goes through here so the manifest is complete.
class OutputDir {
public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void write(const std::string &name, const std::string &content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) {
      throw Error(ErrorKind::InvalidArgument, "cannot write " + (dir_ / name).string());
    }
    out << content;
    files_.push_back(name);
  }
  void write_json(const std::string &name, const ordered_json &j) { write(name, j.dump(2) + "\n"); }

  const std::vector<std::string> &files() const { return files_; }

private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string num(double v) { return format_double(v); }

std::string speed_label(spacetime::ExtendedSpeed s) {
  return s.is_infinite() ? "infinite" : num(s.value());
}

ordered_json speed_json(spacetime::ExtendedSpeed s) {
  return s.is_infinite() ? ordered_json("infinite") : ordered_json(s.value());
}

ordered_json config_json(const InputBundle &inputs) {
  ordered_json j;
  std::istringstream lines(serialize_config(inputs));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

ordered_json stats_json(const experiment::ExperimentStats &s) {
  return ordered_json{{"n_atoms", s.n_atoms},
                      {"n_photons", s.n_photons},
                      {"photon_rate", s.photon_rate},
                      {"photon_rate_stderr", s.photon_rate_stderr},
                      {"left_count", s.left_count},
                      {"right_count", s.right_count},
                      {"noise_counts", s.noise_counts},
                      {"run_duration_s", s.run_duration},
                      {"side_mismatches", s.side_mismatches}};
}

ordered_json timing_json(const design::TimingReport &t) {
  return ordered_json{{"crossing_time_s", t.crossing_time},
                      {"crossing_time_ns", t.crossing_time * 1e9},
                      {"precollapse_window_s", t.precollapse_window},
                      {"precollapse_window_ns", t.precollapse_window * 1e9},
                      {"decay_time_available_s", t.decay_time_available},
                      {"decay_time_available_ns", t.decay_time_available * 1e9},
                      {"decay_efficiency", t.decay_efficiency},
                      {"shortfall", t.shortfall}};
}

void run_simulate(const InputBundle &inputs, const DispatchOptions &opt, OutputDir &out) {
  const ExperimentConfig &cfg = inputs.experiment;
  std::vector<experiment::AtomOutcome> trace;
  const auto stats = experiment::run(cfg, opt.threads, opt.trace ? &trace : nullptr);

  ExperimentConfig hk = cfg;
  hk.scenario = ScenarioKind::hellwig_kraus();
  experiment::NullTestOptions nt;
  nt.expected_signal_per_atom = experiment::expected_photon_rate(hk);
  const auto verdict = experiment::null_test(stats, cfg.dark_rate, nt);

  ordered_json j;
  j["config"] = config_json(inputs);
  j["notes"] = inputs.notes;
  j["stats"] = stats_json(stats);
  j["expected_photon_rate"] = experiment::expected_photon_rate(cfg);
  j["null_test"] = {{"verdict", experiment::to_string(verdict.verdict)},
                    {"observed_counts", verdict.observed},
                    {"expected_noise", verdict.expected_noise},
                    {"p_value", verdict.p_value},
                    {"critical_count", verdict.critical_count},
                    {"power", verdict.power},
                    {"hk_signal_per_atom", nt.expected_signal_per_atom},
                    {"significance", nt.significance}};
  out.write_json("simulate.json", j);

  std::string summary = "scenario,n_atoms,n_photons,photon_rate,photon_rate_stderr,left_count,right_count,"
                        "noise_counts,verdict\n";
  summary += cfg.scenario.to_string() + "," + std::to_string(stats.n_atoms) + "," +
             std::to_string(stats.n_photons) + "," + num(stats.photon_rate) + "," +
             num(stats.photon_rate_stderr) + "," + std::to_string(stats.left_count) + "," +
             std::to_string(stats.right_count) + "," + std::to_string(stats.noise_counts) + "," +
             experiment::to_string(verdict.verdict) + "\n";
  out.write("simulate_summary.csv", summary);

  if (opt.trace) {
    std::string csv = "atom_index,detected_side,excited,photon_emitted,emission_side,emission_time_ns\n";
    csv.reserve(trace.size() * 24);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const auto &o = trace[i];
      csv += std::to_string(i);
      csv += ',';
      csv += side_letter(o.detected_side);
      csv += o.excited ? ",1" : ",0";
      csv += o.photon_emitted ? ",1," : ",0,";
      csv += o.emission_side ? std::string(1, side_letter(*o.emission_side)) : std::string("none");
      csv += ',';
      if (o.emission_time_before_detection) {
        csv += num(*o.emission_time_before_detection * 1e9);
      }
      csv += '\n';
    }
    out.write("atoms.csv", csv);
  }
}

void run_sweep(const InputBundle &inputs, const DispatchOptions &opt, OutputDir &out) {
  std::vector<spacetime::ExtendedSpeed> speeds;
  for (const auto &tok : opt.sweep_speeds) {
    speeds.push_back(parse_speed_token(tok));
  }
  std::vector<double> leads;
  for (double ns : opt.sweep_leads_ns) {
    leads.push_back(ns * 1e-9);
  }
  const auto cells = experiment::scenario_sweep(inputs.experiment, speeds, leads, opt.threads);

  std::string csv = "collapse_speed_m_per_s,lead_time_s,lead_time_ns,n_atoms,n_photons,photon_rate,"
                    "photon_rate_stderr,predicted_precollapse\n";
  ordered_json rows = ordered_json::array();
  for (const auto &c : cells) {
    csv += speed_label(c.speed) + "," + num(c.lead_time) + "," + num(c.lead_time * 1e9) + "," +
           std::to_string(c.stats.n_atoms) + "," + std::to_string(c.stats.n_photons) + "," +
           num(c.stats.photon_rate) + "," + num(c.stats.photon_rate_stderr) + "," +
           (c.predicted_precollapse ? "1" : "0") + "\n";
    rows.push_back({{"collapse_speed_m_per_s", speed_json(c.speed)},
                    {"lead_time_s", c.lead_time},
                    {"stats", stats_json(c.stats)},
                    {"predicted_precollapse", c.predicted_precollapse}});
  }
  out.write("sweep.csv", csv);
  out.write_json("sweep.json", ordered_json{{"config", config_json(inputs)}, {"cells", rows}});
}

void run_pattern(const InputBundle &inputs, const DispatchOptions &opt, OutputDir &out) {
  const ExperimentConfig &cfg = inputs.experiment;
  radiation::EmitterPair pair;
  pair.separation = Vec3{opt.pattern_separation.value_or(cfg.separation), 0.0, 0.0};
  pair.axis = Vec3{0.0, 1.0, 0.0};
  pair.wavenumber = constants::two_pi / cfg.wavelength;
  pair.relative_phase = opt.pattern_delta.value_or(experiment::laser_phase(cfg));
  if (opt.pattern_mode == "coherent") {
    pair.mode = radiation::EmitterMode::Coherent;
  } else if (opt.pattern_mode == "incoherent") {
    pair.mode = radiation::EmitterMode::Incoherent;
  } else {
    throw Error(ErrorKind::Config, "pattern mode must be coherent or incoherent");
  }
  const auto samples = radiation::pattern_scan(pair, opt.pattern_n_theta, opt.pattern_n_phi);
  std::string csv = "theta_rad,phi_rad,intensity\n";
  double peak = 0.0;
  for (const auto &s : samples) {
    csv += num(s.theta) + "," + num(s.phi) + "," + num(s.intensity) + "\n";
    peak = std::max(peak, s.intensity);
  }
  out.write("pattern.csv", csv);
  out.write_json("pattern.json", ordered_json{{"mode", opt.pattern_mode},
                                              {"separation_m", pair.separation.x},
                                              {"wavenumber_per_m", pair.wavenumber},
                                              {"relative_phase_rad", pair.relative_phase},
                                              {"n_theta", opt.pattern_n_theta},
                                              {"n_phi", opt.pattern_n_phi},
                                              {"peak_intensity", peak}});
}

void run_design(const InputBundle &inputs, OutputDir &out) {
  const auto r = design::feasibility_report(inputs.beam, inputs.experiment);
  const char *parity = r.tuning.parity == laser::Parity::Odd ? "odd" : "detuned";
  ordered_json j{{"de_broglie_wavelength_m", r.de_broglie_wavelength},
                 {"diffraction_angle_rad", r.diffraction_angle},
                 {"achievable_separation_m", r.achievable_separation},
                 {"tuning",
                  {{"separation_m", r.tuning.separation},
                   {"half_waves", r.tuning.half_waves},
                   {"parity", parity},
                   {"adjustment_m", r.tuning.adjustment}}},
                 {"timing", timing_json(r.timing)},
                 {"lifetime_s", inputs.experiment.lifetime},
                 {"lifetime_ns", inputs.experiment.lifetime * 1e9},
                 {"beam_current_limit_per_s", r.beam_current_limit},
                 {"flux_margin", r.flux_margin},
                 {"parallelism_tolerance_rad", r.parallelism_tolerance},
                 {"parallelism_margin", r.parallelism_margin},
                 {"feasible", r.feasible},
                 {"verdict", r.verdict}};
  out.write_json("design.json", j);

  const std::vector<std::pair<std::string, std::string>> rows{
      {"de_broglie_wavelength_m", num(r.de_broglie_wavelength)},
      {"diffraction_angle_rad", num(r.diffraction_angle)},
      {"achievable_separation_m", num(r.achievable_separation)},
      {"tuned_separation_m", num(r.tuning.separation)},
      {"tuned_half_waves", std::to_string(r.tuning.half_waves)},
      {"crossing_time_ns", num(r.timing.crossing_time * 1e9)},
      {"precollapse_window_ns", num(r.timing.precollapse_window * 1e9)},
      {"lifetime_ns", num(inputs.experiment.lifetime * 1e9)},
      {"decay_time_available_ns", num(r.timing.decay_time_available * 1e9)},
      {"decay_efficiency", num(r.timing.decay_efficiency)},
      {"shortfall", r.timing.shortfall ? "true" : "false"},
      {"beam_current_limit_per_s", num(r.beam_current_limit)},
      {"flux_margin", num(r.flux_margin)},
      {"parallelism_tolerance_rad", num(r.parallelism_tolerance)},
  };
  std::string csv = "quantity,value\n";
  std::string text;
  for (const auto &[k, v] : rows) {
    csv += k + "," + v + "\n";
    char line[128];
    std::snprintf(line, sizeof line, "%-28s %s\n", k.c_str(), v.c_str());
    text += line;
  }
  text += "verdict: " + r.verdict + "\n";
  out.write("design.csv", csv);
  out.write("design.txt", text);
}

void run_geometry(const InputBundle &inputs, OutputDir &out) {
  const ExperimentConfig &cfg = inputs.experiment;
  const auto [a, b] = detector_events(cfg);
  const auto apex = spacetime::precollapse_apex(a, b);
  const spacetime::Worldline mid{spacetime::Event{0.0, 0.0, 0.0, 0.0}, Vec3{0.0, 0.0, cfg.beam_speed}};

  struct Row {
    std::string quantity;
    spacetime::ExtendedSpeed speed;
    double value;
  };
  const auto c = spacetime::ExtendedSpeed::finite(constants::c);
  std::vector<Row> rows{{"apex_lead_time", c, a.t - apex.t}};
  for (auto speed : {c, spacetime::ExtendedSpeed::finite(2.0 * constants::c), spacetime::ExtendedSpeed::infinite()}) {
    rows.push_back({"twin_peak_window", speed,
                    spacetime::precollapse_duration(beam_worldline(cfg, Side::Left), a, b, speed).duration});
    rows.push_back({"midpoint_window", speed, spacetime::precollapse_duration(mid, a, b, speed).duration});
  }
  std::string csv = "quantity,collapse_speed_m_per_s,value_s,value_ns\n";
  ordered_json arr = ordered_json::array();
  for (const auto &r : rows) {
    csv += r.quantity + "," + speed_label(r.speed) + "," + num(r.value) + "," + num(r.value * 1e9) + "\n";
    arr.push_back({{"quantity", r.quantity},
                   {"collapse_speed_m_per_s", speed_json(r.speed)},
                   {"value_s", r.value},
                   {"value_ns", r.value * 1e9}});
  }
  out.write("geometry.csv", csv);
  out.write_json("geometry.json", ordered_json{{"separation_m", cfg.separation},
                                               {"apex", {{"t_s", apex.t}, {"x_m", apex.x}}},
                                               {"rows", arr}});
}

void run_decohere(const InputBundle &inputs, OutputDir &out) {
  const auto &env = inputs.collisions;
  const double sigma = decoherence::phase_step(env.kinetic_energy(), env.collision_interval());
  const auto n = decoherence::collisions_to_collapse(env);
  const double t = decoherence::time_to_collapse(env);
  const double limit = design::beam_current_limit(t);
  out.write_json("decohere.json", ordered_json{{"kinetic_energy_J", env.kinetic_energy()},
                                               {"collision_interval_s", env.collision_interval()},
                                               {"phase_step_rad", sigma},
                                               {"phase_threshold_rad", env.phase_threshold},
                                               {"collisions_to_collapse", n},
                                               {"coherence_after_collapse", decoherence::coherence_after(n, sigma)},
                                               {"time_to_collapse_s", t},
                                               {"time_to_collapse_ns", t * 1e9},
                                               {"beam_current_limit_per_s", limit}});
  std::string csv = "quantity,value\n";
  csv += "phase_step_rad," + num(sigma) + "\n";
  csv += "collisions_to_collapse," + std::to_string(n) + "\n";
  csv += "time_to_collapse_s," + num(t) + "\n";
  csv += "time_to_collapse_ns," + num(t * 1e9) + "\n";
  csv += "beam_current_limit_per_s," + num(limit) + "\n";
  out.write("decohere.csv", csv);
}

} // namespace

spacetime::ExtendedSpeed parse_speed_token(const std::string &token) {
  if (token == "inf" || token == "infinite") {
    return spacetime::ExtendedSpeed::infinite();
  }
  std::string number = token;
  double scale = 1.0;
  if (!number.empty() && number.back() == 'c') {
    number.pop_back();
    scale = constants::c;
    if (number.empty()) {
      number = "1";
    }
  }
  char *end = nullptr;
  const double v = std::strtod(number.c_str(), &end);
  if (number.empty() || end != number.c_str() + number.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::Config, "cannot parse collapse speed '" + token + "'");
  }
  const double speed = v * scale;
  if (!(speed >= constants::c)) {
    throw Error(ErrorKind::Config, "collapse speed '" + token + "' is below c");
  }
  return spacetime::ExtendedSpeed::finite(speed);
}

int dispatch(const std::string &subcommand, const InputBundle &inputs, const fs::path &out_dir,
             const DispatchOptions &options) {
  RunManifest manifest;
  manifest.subcommand = subcommand;
  manifest.config_hash = config_hash(inputs);
  manifest.master_seed = inputs.experiment.master_seed;
  manifest.started_utc = utc_now();
  try {
    OutputDir out(out_dir);
    if (subcommand == "simulate") {
      run_simulate(inputs, options, out);
    } else if (subcommand == "sweep") {
      run_sweep(inputs, options, out);
    } else if (subcommand == "pattern") {
      run_pattern(inputs, options, out);
    } else if (subcommand == "design") {
      run_design(inputs, out);
    } else if (subcommand == "geometry") {
      run_geometry(inputs, out);
    } else if (subcommand == "decohere") {
      run_decohere(inputs, out);
    } else {
      std::cerr << "unknown subcommand '" << subcommand << "'\n";
      return kExitUsage;
    }
    manifest.outputs = out.files();
    manifest.finished_utc = utc_now();
    ordered_json m{{"config_hash", manifest.config_hash},
                   {"master_seed", manifest.master_seed},
                   {"tool_version", manifest.tool_version},
                   {"subcommand", manifest.subcommand},
                   {"started_utc", manifest.started_utc},
                   {"finished_utc", manifest.finished_utc},
                   {"outputs", manifest.outputs}};
    out.write_json("manifest.json", m);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Config ? kExitValidation : kExitRuntime;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

} // namespace precollapse::cli
