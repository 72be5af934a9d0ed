#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctqec/density_matrix.hpp"
#include "ctqec/dynamics.hpp"
#include "ctqec/linalg.hpp"
#include "ctqec/rng.hpp"

namespace ctqec {

/// Scenario and run parameters. Rates are in inverse time units; dt = 0
/// selects the default 0.01 / max(kappa, lambda, gamma).
struct SimConfig {
  std::string scenario;
  double kappa = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  double dt = 0.0;
  double t_max = 1.0;
  int n_traj = 1;
  std::uint64_t seed = 0;
  int store_stride = 1;
  double filter_time_constant = 0.0;  // 0 selects 1/kappa
  double feedback_strength = 0.0;
  double x_threshold = 0.0;  // 0 disables the stopping rule
  int n_workers = 0;         // 0 = hardware concurrency
  std::string mode;          // scenario-specific switch
  std::string engine;        // scenario-specific switch

  double max_rate() const;
  double effective_dt() const;
  double effective_filter_tau() const;
  int n_steps() const;
  int effective_store_stride(int n_steps) const;

  /// Stability guard on dt * max rate: warning to stderr above 0.05, throws
  /// std::domain_error above 0.5.
  void validate() const;
};

/// Thrown when a stochastic step produces a state outside the relaxed
/// diagnostics tolerances.
struct TrajectoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Time series of one run. States are stored every `store_stride` steps (the
/// initial and final states always included). Wiener increments are kept per
/// diffusion channel for every step; x_path carries the accumulated
/// log-likelihood coordinate of weak Z measurement runs.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<std::vector<double>> wiener_increments;
  std::vector<double> x_path;
  std::vector<double> current_estimate;
  bool terminated_early = false;
  double max_trace_correction = 0.0;  // largest |Tr - 1| removed per step
};

using Generator = std::function<Mat(const Mat&)>;

/// Classical fixed-step fourth-order integration of d(rho)/dt = sum of
/// generators. The state is re-hermitized and trace-renormalized after every
/// step (no eigenvalue clipping).
TrajectoryRecord evolve_deterministic(const std::vector<Generator>& generators,
                                      const DensityMatrix& rho0, const SimConfig& config);

/// Euler-Maruyama step of the measurement-conditioned master equation
///   d(rho) = drift(rho) dt
///          + sum_l sqrt(kappa)/2 F[M_l](rho) dW_l
///          - i sum_r lambda_r(est) [H_r, rho] dt,
/// dW_l ~ Normal(0, dt) independent per channel and step. The drift must
/// already include the kappa/4 D[M_l] deterministic parts. When a feedback
/// law with the filtered-estimate policy is given, the estimate starts from
/// the code projector normalized to unit trace and is driven by the realized
/// measurement record dx_l = kappa <M_l> dt + sqrt(kappa) dW_l.
struct SdeOptions {
  std::vector<Mat> diffusion_ops;
  double kappa = 0.0;
  std::optional<FeedbackLaw> feedback;
  /// When set, consumed instead of the rng (per channel, per step); used for
  /// strong-convergence checks with shared Brownian paths.
  const std::vector<std::vector<double>>* presampled_increments = nullptr;
};

TrajectoryRecord evolve_sde(const Generator& drift, const SdeOptions& options,
                            const DensityMatrix& rho0, const SimConfig& config,
                            CounterRng& rng);

/// Repeated application of a finite-strength averaged weak map (one map
/// application per dt).
using StepMap = std::function<Mat(const Mat&)>;
TrajectoryRecord evolve_weak_steps(const StepMap& step, const DensityMatrix& rho0,
                                   const SimConfig& config);

/// Outcome-sampled variant. The sampler returns the normalized post state and
/// adds the step's coordinate increment to *dx. Stops early once
/// |x| >= x_threshold (when the threshold is positive). The filtered current
/// estimate is attached to the record.
using StepSampler = std::function<Mat(const Mat&, CounterRng&, double* dx)>;
TrajectoryRecord evolve_weak_steps(const StepSampler& sampler, const DensityMatrix& rho0,
                                   const SimConfig& config, CounterRng& rng);

struct NamedObservable {
  std::string name;
  std::function<double(const DensityMatrix&)> fn;
};

/// Per-time-point sample mean and standard error over an ensemble of
/// trajectories. Trajectory i runs on the counter-based stream (seed, i);
/// results are reduced in trajectory order and are therefore identical for
/// any worker count.
struct EnsembleStats {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> mean;       // [observable][time]
  std::vector<std::vector<double>> std_error;  // [observable][time]
  int n_traj = 0;
};

using TrajectoryFactory = std::function<TrajectoryRecord(int index, CounterRng& rng)>;

EnsembleStats ensemble_average(const SimConfig& config, const TrajectoryFactory& factory,
                               const std::vector<NamedObservable>& observables);

/// Exponential moving average of dx/dt with the configured time constant;
/// estimates the mean measurement current (kappa <Z> for the weak Z scheme).
std::vector<double> measurement_current(const std::vector<double>& x_path,
                                        const SimConfig& config);

}  // namespace ctqec
