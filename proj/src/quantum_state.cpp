#include <precollapse/quantum_state.hpp>

#include <precollapse/error.hpp>
#include <precollapse/format.hpp>

#include <cmath>

namespace precollapse::quantum {

DensityMatrix2 DensityMatrix2::make(double p_ll, double p_rr, std::complex<double> rho_lr) {
  if (!(p_ll >= 0.0) || !(p_rr >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "density matrix diagonals must be >= 0");
  }
  if (std::abs(p_ll + p_rr - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument,
                "density matrix trace must be 1, got " + format_double(p_ll + p_rr));
  }
  if (std::norm(rho_lr) > p_ll * p_rr * (1.0 + 1e-12) + 1e-300) {
    throw Error(ErrorKind::InvalidArgument, "density matrix violates |rho_LR|^2 <= p_LL p_RR");
  }
  return DensityMatrix2{p_ll, p_rr, rho_lr};
}

DensityMatrix2 coherent_twin(double relative_phase) {
  return DensityMatrix2::make(0.5, 0.5, std::polar(0.5, relative_phase));
}

DensityMatrix2 selective_collapse(const DensityMatrix2 &rho, Side side) {
  if (!(rho.probability(side) > 0.0)) {
    throw Error(ErrorKind::InvalidCollapse,
                std::string("cannot collapse onto side ") + side_letter(side) + " with zero probability");
  }
  return side == Side::Left ? DensityMatrix2::make(1.0, 0.0, 0.0) : DensityMatrix2::make(0.0, 1.0, 0.0);
}

DensityMatrix2 nonselective_collapse(const DensityMatrix2 &rho) {
  return DensityMatrix2::make(rho.p_ll(), rho.p_rr(), 0.0);
}

double precollapse_window(const ScenarioKind &scenario, const ExperimentConfig &config,
                          Side detected_side) {
  if (scenario.kind() == ScenarioKind::Kind::Conventional) {
    return 0.0;
  }
  const auto [a, b] = detector_events(config);
  return spacetime::precollapse_duration(beam_worldline(config, detected_side), a, b,
                                         scenario.collapse_speed())
      .duration;
}

DensityMatrix2 state_at(const ScenarioKind &scenario, double dt_before_detection,
                        const ExperimentConfig &config, Side detected_side) {
  if (!(dt_before_detection >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "dt before detection must be >= 0");
  }
  const DensityMatrix2 twin = coherent_twin(0.0);
  if (dt_before_detection == 0.0) {
    return selective_collapse(twin, detected_side);
  }
  // Points on the cone boundary count as collapsed.
  if (dt_before_detection > precollapse_window(scenario, config, detected_side)) {
    return twin;
  }
  return selective_collapse(twin, detected_side);
}

} // namespace precollapse::quantum
