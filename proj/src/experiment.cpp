#include <precollapse/experiment.hpp>

#include <precollapse/constants.hpp>
#include <precollapse/error.hpp>
#include <precollapse/laser_probe.hpp>
#include <precollapse/quantum_state.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

namespace precollapse::experiment {

namespace {

constexpr std::uint64_t kNoiseStream = ~std::uint64_t{0};

struct Tally {
  std::uint64_t photons{0};
  std::uint64_t left{0};
  std::uint64_t mismatches{0};
};

void tally(Tally &t, const AtomOutcome &o) {
  if (o.detected_side == Side::Left) {
    ++t.left;
  }
  if (o.photon_emitted) {
    ++t.photons;
    if (o.collapsed_at_laser && o.emission_side != o.detected_side) {
      ++t.mismatches;
    }
  }
}

} // namespace

double laser_phase(const ExperimentConfig &config) {
  const double projected = config.separation * std::cos(config.laser_angle);
  return laser::classify_separation(projected, config.wavelength).phase;
}

AtomOutcome simulate_atom(const ExperimentConfig &config, StreamRng &rng) {
  const double u_side = rng.uniform();
  const double u_efficiency = rng.uniform();
  const double u_excite = rng.uniform();
  const double u_decay = rng.uniform();
  const double u_emit_side = rng.uniform();

  AtomOutcome out;
  out.detected_side = u_side < 0.5 ? Side::Left : Side::Right;

  const double lead = config.evaluation_lead_time();
  // A failed non-detection voids the double collapse; the atom stays coherent.
  const bool precollapse_voided = u_efficiency >= config.detector_efficiency;
  const quantum::DensityMatrix2 rho =
      precollapse_voided ? quantum::coherent_twin(0.0)
                         : quantum::state_at(config.scenario, lead, config, out.detected_side);
  out.collapsed_at_laser = !rho.is_coherent();

  const double p_excite = laser::excitation_probability(rho, laser_phase(config), config.p0);
  out.excited = u_excite < p_excite;
  if (!out.excited) {
    return out;
  }
  const double decay_time = -config.lifetime * std::log1p(-u_decay);
  if (decay_time < lead) {
    out.photon_emitted = true;
    out.emission_time_before_detection = lead - decay_time;
    if (out.collapsed_at_laser) {
      out.emission_side = out.detected_side;
    } else {
      out.emission_side = u_emit_side < 0.5 ? Side::Left : Side::Right;
    }
  }
  return out;
}

AtomOutcome simulate_atom_at(const ExperimentConfig &config, std::uint64_t index) {
  StreamRng rng(config.master_seed, index);
  return simulate_atom(config, rng);
}

unsigned default_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("PRECOLLAPSE_SIM_THREADS")) {
    char *end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) {
      n = std::min(n, static_cast<unsigned>(cap));
    }
  }
  return n;
}

ExperimentStats run(const ExperimentConfig &config, unsigned threads, std::vector<AtomOutcome> *trace) {
  config.validate();
  const std::uint64_t n_atoms = config.atom_count;
  if (threads == 0) {
    threads = default_thread_count();
  }
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_atoms));
  if (trace != nullptr) {
    trace->assign(n_atoms, AtomOutcome{});
  }

  // Fail on configuration errors (saturation) before spawning workers.
  (void)simulate_atom_at(config, 0);

  std::vector<Tally> partial(threads);
  auto work = [&](unsigned worker) {
    const std::uint64_t begin = n_atoms * worker / threads;
    const std::uint64_t end = n_atoms * (worker + 1) / threads;
    Tally &t = partial[worker];
    for (std::uint64_t i = begin; i < end; ++i) {
      const AtomOutcome o = simulate_atom_at(config, i);
      tally(t, o);
      if (trace != nullptr) {
        (*trace)[i] = o;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back(work, w);
    }
  }

  ExperimentStats stats;
  stats.n_atoms = n_atoms;
  for (const Tally &t : partial) {
    stats.n_photons += t.photons;
    stats.left_count += t.left;
    stats.side_mismatches += t.mismatches;
  }
  stats.right_count = n_atoms - stats.left_count;
  const double n = static_cast<double>(n_atoms);
  stats.photon_rate = static_cast<double>(stats.n_photons) / n;
  stats.photon_rate_stderr = std::sqrt(stats.photon_rate * (1.0 - stats.photon_rate) / n);
  stats.run_duration = config.run_duration();

  const double expected_noise = config.dark_rate * stats.run_duration;
  if (expected_noise > 0.0) {
    StreamRng noise_rng(config.master_seed, kNoiseStream);
    std::poisson_distribution<std::uint64_t> poisson(expected_noise);
    stats.noise_counts = poisson(noise_rng);
  }
  return stats;
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::HkConfirmed:
    return "hk-confirmed";
  case Verdict::Null:
    return "null";
  case Verdict::Inconclusive:
    break;
  }
  return "inconclusive";
}

double poisson_upper_tail(std::uint64_t k, double mean) {
  if (k == 0) {
    return 1.0;
  }
  if (mean <= 0.0) {
    return 0.0;
  }
  // P(X >= k) = regularized lower incomplete gamma P(k, mean).
  return boost::math::gamma_p(static_cast<double>(k), mean);
}

NullTestResult null_test(const ExperimentStats &stats, double dark_rate, const NullTestOptions &options) {
  if (!(dark_rate >= 0.0) || !(options.significance > 0.0 && options.significance < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "null_test needs dark_rate >= 0 and significance in (0, 1)");
  }
  NullTestResult r;
  r.observed = stats.n_photons + stats.noise_counts;
  r.expected_noise = dark_rate * stats.run_duration;
  if (stats.n_atoms == 0) {
    return r;
  }
  r.p_value = poisson_upper_tail(r.observed, r.expected_noise);

  std::uint64_t k = static_cast<std::uint64_t>(std::floor(r.expected_noise));
  while (poisson_upper_tail(k, r.expected_noise) >= options.significance) {
    ++k;
  }
  r.critical_count = k;
  const double signal = options.expected_signal_per_atom * static_cast<double>(stats.n_atoms);
  r.power = signal > 0.0 ? poisson_upper_tail(k, r.expected_noise + signal) : 0.0;

  if (r.p_value < options.significance) {
    r.verdict = Verdict::HkConfirmed;
  } else if (signal > 0.0 && r.power >= options.required_power) {
    r.verdict = Verdict::Null;
  }
  return r;
}

ScenarioKind scenario_for_speed(spacetime::ExtendedSpeed speed) {
  if (speed.is_infinite()) {
    return ScenarioKind::conventional();
  }
  if (speed.value() == constants::c) {
    return ScenarioKind::hellwig_kraus();
  }
  return ScenarioKind::finite_speed(speed.value());
}

std::vector<SweepCell> scenario_sweep(const ExperimentConfig &base,
                                      const std::vector<spacetime::ExtendedSpeed> &speeds,
                                      const std::vector<double> &leads, unsigned threads) {
  if (speeds.empty() || leads.empty()) {
    throw Error(ErrorKind::InvalidArgument, "scenario_sweep needs non-empty speed and lead lists");
  }
  std::vector<SweepCell> cells;
  cells.reserve(speeds.size() * leads.size());
  for (const auto &speed : speeds) {
    for (double lead : leads) {
      ExperimentConfig cfg = base;
      cfg.scenario = scenario_for_speed(speed);
      cfg.laser_lead_time = lead;
      SweepCell cell{speed, lead, run(cfg, threads), false};
      if (!speed.is_infinite()) {
        const double bound = spacetime::collapse_speed_bound(cfg.separation, cfg.evaluation_lead_time());
        cell.predicted_precollapse = speed.value() <= bound;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

} // namespace precollapse::experiment

namespace precollapse::experiment {

double expected_photon_rate(const ExperimentConfig &config) {
  config.validate();
  const double lead = config.evaluation_lead_time();
  const double phase = laser_phase(config);
  const double p_decay = laser::decay_probability(lead, config.lifetime);
  const double p_coherent = laser::excitation_probability(quantum::coherent_twin(0.0), phase, config.p0);
  double rate = 0.0;
  for (Side side : {Side::Left, Side::Right}) {
    const auto rho = quantum::state_at(config.scenario, lead, config, side);
    const double p_state = laser::excitation_probability(rho, phase, config.p0);
    rate += 0.5 * (config.detector_efficiency * p_state + (1.0 - config.detector_efficiency) * p_coherent);
  }
  return rate * p_decay;
}

} // namespace precollapse::experiment
