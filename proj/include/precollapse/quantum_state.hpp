#pragma once

#include <precollapse/experiment_config.hpp>
#include <precollapse/scenario.hpp>

#include <complex>

namespace precollapse::quantum {

/// Which-beam density matrix in the {L, R} basis.
class DensityMatrix2 {
public:
  /// Validates trace (1e-12), non-negative diagonals and positivity.
  static DensityMatrix2 make(double p_ll, double p_rr, std::complex<double> rho_lr);

  double p_ll() const { return p_ll_; }
  double p_rr() const { return p_rr_; }
  std::complex<double> rho_lr() const { return rho_lr_; }
  double probability(Side side) const { return side == Side::Left ? p_ll_ : p_rr_; }

  double purity() const { return p_ll_ * p_ll_ + p_rr_ * p_rr_ + 2.0 * std::norm(rho_lr_); }
  bool is_coherent() const { return rho_lr_ != 0.0; }

  bool operator==(const DensityMatrix2 &) const = default;

private:
  DensityMatrix2(double p_ll, double p_rr, std::complex<double> rho)
      : p_ll_(p_ll), p_rr_(p_rr), rho_lr_(rho) {}
  double p_ll_, p_rr_;
  std::complex<double> rho_lr_;
};

/// Equal superposition with rho_LR = e^{i phase} / 2.
DensityMatrix2 coherent_twin(double relative_phase);

/// Throws InvalidCollapse if the chosen side has zero probability.
DensityMatrix2 selective_collapse(const DensityMatrix2 &rho, Side side);

DensityMatrix2 nonselective_collapse(const DensityMatrix2 &rho);

/// Which-beam state a time dt before detection under the given scenario,
/// for an atom eventually detected on detected_side.
DensityMatrix2 state_at(const ScenarioKind &scenario, double dt_before_detection,
                        const ExperimentConfig &config, Side detected_side);

/// Lead time below which the scenario has pre-collapsed the atom (0 for Conventional).
double precollapse_window(const ScenarioKind &scenario, const ExperimentConfig &config,
                          Side detected_side);

} // namespace precollapse::quantum
