#include <precollapse/cli.hpp>
#include <precollapse/decoherence.hpp>
#include <precollapse/design.hpp>
#include <precollapse/error.hpp>
#include <precollapse/format.hpp>
#include <precollapse/experiment.hpp>
#include <precollapse/laser_probe.hpp>
#include <precollapse/quantum_state.hpp>
#include <precollapse/radiation.hpp>
#include <precollapse/spacetime.hpp>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

namespace py = pybind11;
namespace pc = precollapse;
namespace st = precollapse::spacetime;

namespace {

st::ExtendedSpeed to_speed(double v) {
  return std::isinf(v) && v > 0 ? st::ExtendedSpeed::infinite() : st::ExtendedSpeed::finite(v);
}

double from_speed(st::ExtendedSpeed s) { return s.value(); }

pc::Side to_side(const std::string &s) {
  if (s == "L" || s == "left") {
    return pc::Side::Left;
  }
  if (s == "R" || s == "right") {
    return pc::Side::Right;
  }
  throw py::value_error("side must be 'L' or 'R'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relativistic pre-collapse simulator: geometry, which-beam states, laser probe and Monte Carlo engine.";
  m.attr("c") = pc::constants::c;
  m.attr("__version__") = pc::cli::kToolVersion;

  static py::exception<pc::Error> error(m, "PrecollapseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const pc::Error &e) {
      py::set_error(error, e.what());
    }
  });

  // spacetime
  py::class_<st::Event>(m, "Event")
      .def(py::init([](double t, double x, double y, double z) { return st::Event{t, x, y, z}; }), py::arg("t"),
           py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("z") = 0.0)
      .def_readwrite("t", &st::Event::t)
      .def_readwrite("x", &st::Event::x)
      .def_readwrite("y", &st::Event::y)
      .def_readwrite("z", &st::Event::z)
      .def("__repr__", [](const st::Event &e) {
        return "Event(t=" + pc::format_double(e.t) + ", x=" + pc::format_double(e.x) + ")";
      });

  m.def("boost_event", &st::boost_event, py::arg("event"), py::arg("boost_speed"));
  m.def(
      "transform_velocity", [](double v, double boost) { return from_speed(st::transform_velocity(to_speed(v), boost)); },
      py::arg("v"), py::arg("boost_speed"), "Velocity addition; pass math.inf for an infinite signal speed.");
  m.def(
      "classify_interval",
      [](const st::Event &a, const st::Event &b) {
        switch (st::classify_interval(a, b)) {
        case st::IntervalKind::Timelike:
          return "timelike";
        case st::IntervalKind::Spacelike:
          return "spacelike";
        case st::IntervalKind::Lightlike:
          break;
        }
        return "lightlike";
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "in_collapsed_region",
      [](const st::Event &p, const st::Event &apex, double speed) {
        return st::in_collapsed_region(p, st::CollapseFront(apex, to_speed(speed)));
      },
      py::arg("p"), py::arg("apex"), py::arg("speed"));
  m.def(
      "coherent_region_contains",
      [](const st::Event &p, const st::Event &a, const st::Event &b, double speed) {
        return st::coherent_region_contains(p, a, b, to_speed(speed));
      },
      py::arg("p"), py::arg("a"), py::arg("b"), py::arg("speed"));
  m.def("precollapse_apex", &st::precollapse_apex, py::arg("a"), py::arg("b"));
  m.def(
      "precollapse_duration",
      [](const st::Event &anchor, std::array<double, 3> velocity, const st::Event &a, const st::Event &b,
         double speed) {
        const st::Worldline w{anchor, pc::Vec3{velocity[0], velocity[1], velocity[2]}};
        const auto r = st::precollapse_duration(w, a, b, to_speed(speed));
        return py::make_tuple(r.duration, r.degenerate);
      },
      py::arg("anchor"), py::arg("velocity"), py::arg("a"), py::arg("b"), py::arg("speed"),
      "Returns (duration_s, degenerate).");
  m.def("collapse_speed_bound", &st::collapse_speed_bound, py::arg("separation"), py::arg("lead_time"));

  // quantum_state
  py::class_<pc::quantum::DensityMatrix2>(m, "DensityMatrix2")
      .def(py::init(&pc::quantum::DensityMatrix2::make), py::arg("p_ll"), py::arg("p_rr"), py::arg("rho_lr"))
      .def_property_readonly("p_ll", &pc::quantum::DensityMatrix2::p_ll)
      .def_property_readonly("p_rr", &pc::quantum::DensityMatrix2::p_rr)
      .def_property_readonly("rho_lr", &pc::quantum::DensityMatrix2::rho_lr)
      .def("purity", &pc::quantum::DensityMatrix2::purity);
  m.def("coherent_twin", &pc::quantum::coherent_twin, py::arg("relative_phase") = 0.0);
  m.def(
      "selective_collapse",
      [](const pc::quantum::DensityMatrix2 &rho, const std::string &side) {
        return pc::quantum::selective_collapse(rho, to_side(side));
      },
      py::arg("rho"), py::arg("side"));
  m.def("nonselective_collapse", &pc::quantum::nonselective_collapse, py::arg("rho"));

  // laser_probe
  m.def("excitation_probability", &pc::laser::excitation_probability, py::arg("rho"), py::arg("phase"),
        py::arg("p0"));
  m.def(
      "tune_separation",
      [](double target, double wavelength) {
        const auto t = pc::laser::tune_separation(target, wavelength);
        return py::dict(py::arg("separation") = t.separation, py::arg("half_waves") = t.half_waves,
                        py::arg("phase") = t.phase, py::arg("adjustment") = t.adjustment);
      },
      py::arg("target"), py::arg("wavelength"));
  m.def("decay_probability", &pc::laser::decay_probability, py::arg("t_available"), py::arg("lifetime"));

  // decoherence
  m.def("phase_step", &pc::decoherence::phase_step, py::arg("kinetic_energy"), py::arg("time_between_collisions"));
  m.def("coherence_after", &pc::decoherence::coherence_after, py::arg("n_collisions"), py::arg("phase_step_rms"));
  m.def(
      "time_to_collapse",
      [](double mass, double speed, double mean_free_path, double threshold) {
        return pc::decoherence::time_to_collapse({mass, speed, mean_free_path, threshold});
      },
      py::arg("atom_mass") = pc::constants::sodium_mass, py::arg("atom_speed") = 500.0,
      py::arg("mean_free_path") = 0.1e-9, py::arg("phase_threshold") = pc::constants::two_pi);

  // radiation
  m.def(
      "pair_pattern",
      [](std::array<double, 3> n, std::array<double, 3> d, std::array<double, 3> axis, double k, double delta,
         bool coherent) {
        pc::radiation::EmitterPair pair{{d[0], d[1], d[2]},
                                        {axis[0], axis[1], axis[2]},
                                        k,
                                        delta,
                                        coherent ? pc::radiation::EmitterMode::Coherent
                                                 : pc::radiation::EmitterMode::Incoherent};
        return pc::radiation::pair_pattern(pair, {n[0], n[1], n[2]});
      },
      py::arg("direction"), py::arg("separation"), py::arg("axis"), py::arg("wavenumber"), py::arg("delta"),
      py::arg("coherent") = true);

  // experiment
  py::class_<pc::ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("beam_speed", &pc::ExperimentConfig::beam_speed)
      .def_readwrite("separation", &pc::ExperimentConfig::separation)
      .def_readwrite("wavelength", &pc::ExperimentConfig::wavelength)
      .def_readwrite("laser_angle", &pc::ExperimentConfig::laser_angle)
      .def_readwrite("laser_lead_time", &pc::ExperimentConfig::laser_lead_time)
      .def_readwrite("focal_spot_width", &pc::ExperimentConfig::focal_spot_width)
      .def_readwrite("p0", &pc::ExperimentConfig::p0)
      .def_readwrite("lifetime", &pc::ExperimentConfig::lifetime)
      .def_readwrite("detector_efficiency", &pc::ExperimentConfig::detector_efficiency)
      .def_readwrite("dark_rate", &pc::ExperimentConfig::dark_rate)
      .def_readwrite("atom_count", &pc::ExperimentConfig::atom_count)
      .def_readwrite("atom_flux", &pc::ExperimentConfig::atom_flux)
      .def_readwrite("master_seed", &pc::ExperimentConfig::master_seed)
      .def_readwrite("evaluate_at_spot_entry", &pc::ExperimentConfig::evaluate_at_spot_entry)
      .def_property(
          "scenario", [](const pc::ExperimentConfig &c) { return c.scenario.to_string(); },
          [](pc::ExperimentConfig &c, const std::string &s) { c.scenario = pc::ScenarioKind::parse(s); })
      .def("validate", &pc::ExperimentConfig::validate);

  py::class_<pc::experiment::ExperimentStats>(m, "ExperimentStats")
      .def_readonly("n_atoms", &pc::experiment::ExperimentStats::n_atoms)
      .def_readonly("n_photons", &pc::experiment::ExperimentStats::n_photons)
      .def_readonly("photon_rate", &pc::experiment::ExperimentStats::photon_rate)
      .def_readonly("photon_rate_stderr", &pc::experiment::ExperimentStats::photon_rate_stderr)
      .def_readonly("left_count", &pc::experiment::ExperimentStats::left_count)
      .def_readonly("right_count", &pc::experiment::ExperimentStats::right_count)
      .def_readonly("noise_counts", &pc::experiment::ExperimentStats::noise_counts)
      .def_readonly("run_duration", &pc::experiment::ExperimentStats::run_duration)
      .def_readonly("side_mismatches", &pc::experiment::ExperimentStats::side_mismatches);

  m.def(
      "run", [](const pc::ExperimentConfig &c, unsigned threads) { return pc::experiment::run(c, threads); },
      py::arg("config"), py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("expected_photon_rate", &pc::experiment::expected_photon_rate, py::arg("config"));
  m.def(
      "null_test",
      [](const pc::experiment::ExperimentStats &s, double dark_rate, double significance, double signal) {
        pc::experiment::NullTestOptions o;
        o.significance = significance;
        o.expected_signal_per_atom = signal;
        const auto r = pc::experiment::null_test(s, dark_rate, o);
        return py::dict(py::arg("verdict") = pc::experiment::to_string(r.verdict), py::arg("p_value") = r.p_value,
                        py::arg("observed") = r.observed, py::arg("expected_noise") = r.expected_noise,
                        py::arg("power") = r.power);
      },
      py::arg("stats"), py::arg("dark_rate"), py::arg("significance") = 0.01,
      py::arg("expected_signal_per_atom") = 0.0);

  // design
  py::class_<pc::design::TimingReport>(m, "TimingReport")
      .def_readonly("crossing_time", &pc::design::TimingReport::crossing_time)
      .def_readonly("precollapse_window", &pc::design::TimingReport::precollapse_window)
      .def_readonly("decay_time_available", &pc::design::TimingReport::decay_time_available)
      .def_readonly("decay_efficiency", &pc::design::TimingReport::decay_efficiency)
      .def_readonly("shortfall", &pc::design::TimingReport::shortfall);
  m.def("timing_budget", &pc::design::timing_budget, py::arg("config"));
  m.def("de_broglie", &pc::design::de_broglie, py::arg("mass"), py::arg("speed"));
  m.def("diffraction_angle", &pc::design::diffraction_angle, py::arg("wavelength"), py::arg("period"),
        py::arg("order"));
  m.def("beam_current_limit", &pc::design::beam_current_limit, py::arg("detection_time"));
  m.def("parallelism_tolerance", &pc::design::parallelism_tolerance, py::arg("focal_spot_width"),
        py::arg("wavelength"));

  m.def(
      "parse_config_text", [](const std::string &text) { return pc::cli::parse_config_text(text).experiment; },
      py::arg("text"), "Experiment section of a flat key = value config.");
}
