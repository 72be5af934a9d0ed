#include "ctqec/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ctqec {

double SimConfig::max_rate() const { return std::max({kappa, lambda, gamma}); }

double SimConfig::effective_dt() const {
  if (dt > 0.0) return dt;
  const double rate = max_rate();
  if (rate > 0.0) return 0.01 / rate;
  return t_max / 1000.0;
}

double SimConfig::effective_filter_tau() const {
  if (filter_time_constant > 0.0) return filter_time_constant;
  if (kappa > 0.0) return 1.0 / kappa;
  return t_max;
}

void SimConfig::validate() const {
  if (t_max <= 0.0) throw std::domain_error("SimConfig: t_max must be positive");
  if (n_traj < 1) throw std::domain_error("SimConfig: n_traj must be >= 1");
  if (store_stride < 0) throw std::domain_error("SimConfig: store_stride must be >= 0");
  const double step = effective_dt();
  if (step <= 0.0) throw std::domain_error("SimConfig: dt must be positive");
  const double product = step * max_rate();
  if (product > 0.5) {
    std::ostringstream msg;
    msg << "SimConfig: dt * max rate = " << product << " exceeds the 0.5 stability bound";
    throw std::domain_error(msg.str());
  }
  if (product > 0.05)
    std::fprintf(stderr, "warning: dt * max rate = %g above the 0.05 stability guard\n",
                 product);
}

int SimConfig::n_steps() const {
  const double step = effective_dt();
  int n = static_cast<int>(std::llround(t_max / step));
  return std::max(n, 1);
}

int SimConfig::effective_store_stride(int steps) const {
  if (store_stride > 0) return store_stride;
  return std::max(1, steps / 5000);
}

namespace {

int step_count(const SimConfig& config) { return config.n_steps(); }

int effective_stride(const SimConfig& config, int n_steps) {
  return config.effective_store_stride(n_steps);
}

void store_state(TrajectoryRecord& record, double t, const std::vector<int>& dims,
                 const Mat& rho) {
  DensityDiagnostics d = check_density(rho);
  if (!d.ok(numerics().psd_tol_stochastic)) {
    std::ostringstream msg;
    msg << "trajectory state failed diagnostics at t=" << t
        << " (herm=" << d.herm_residual << ", trace=" << d.trace_residual
        << ", min_eig=" << d.min_eigenvalue << ")";
    throw TrajectoryError(msg.str());
  }
  record.times.push_back(t);
  record.states.push_back(DensityMatrix::unchecked(dims, rho));
}

}  // namespace

TrajectoryRecord evolve_deterministic(const std::vector<Generator>& generators,
                                      const DensityMatrix& rho0, const SimConfig& config) {
  config.validate();
  const double dt = config.effective_dt();
  const int n_steps = step_count(config);
  const int stride = effective_stride(config, n_steps);

  auto rhs = [&generators](const Mat& rho) {
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (const Generator& g : generators) out += g(rho);
    return out;
  };

  TrajectoryRecord record;
  Mat rho = rho0.matrix();
  store_state(record, 0.0, rho0.dims(), rho);
  for (int step = 1; step <= n_steps; ++step) {
    Mat k1 = rhs(rho);
    Mat k2 = rhs(rho + (0.5 * dt) * k1);
    Mat k3 = rhs(rho + (0.5 * dt) * k2);
    Mat k4 = rhs(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = hermitize(rho);
    const double tr = rho.trace().real();
    record.max_trace_correction = std::max(record.max_trace_correction, std::abs(tr - 1.0));
    rho /= tr;
    if (step % stride == 0 || step == n_steps)
      store_state(record, step * dt, rho0.dims(), rho);
  }
  return record;
}

TrajectoryRecord evolve_sde(const Generator& drift, const SdeOptions& options,
                            const DensityMatrix& rho0, const SimConfig& config,
                            CounterRng& rng) {
  config.validate();
  const double dt = config.effective_dt();
  const double sqrt_dt = std::sqrt(dt);
  const double sqrt_kappa = std::sqrt(options.kappa);
  const int n_steps = step_count(config);
  const int stride = effective_stride(config, n_steps);
  const std::size_t n_channels = options.diffusion_ops.size();

  if (options.presampled_increments &&
      options.presampled_increments->size() != n_channels)
    throw std::invalid_argument("evolve_sde: presampled increments channel mismatch");

  const bool has_feedback =
      options.feedback.has_value() && options.feedback->max_strength != 0.0;
  const bool filtered = has_feedback &&
                        options.feedback->policy == EstimatePolicy::kFiltered;

  TrajectoryRecord record;
  record.wiener_increments.resize(n_channels);
  Mat rho = rho0.matrix();
  Mat est;
  if (filtered) {
    const Mat& pc = options.feedback->code_projector;
    est = pc / pc.trace().real();
  }
  store_state(record, 0.0, rho0.dims(), rho);

  std::vector<double> dw(n_channels);
  for (int step = 1; step <= n_steps; ++step) {
    for (std::size_t l = 0; l < n_channels; ++l) {
      if (options.presampled_increments) {
        const auto& path = (*options.presampled_increments)[l];
        if (static_cast<int>(path.size()) < n_steps)
          throw std::invalid_argument("evolve_sde: presampled path too short");
        dw[l] = path[step - 1];
      } else {
        dw[l] = rng.normal() * sqrt_dt;
      }
      record.wiener_increments[l].push_back(dw[l]);
    }

    Mat delta = drift(rho) * dt;
    for (std::size_t l = 0; l < n_channels; ++l)
      delta += (0.5 * sqrt_kappa * dw[l]) * innovation(options.diffusion_ops[l], rho);

    std::vector<double> strengths;
    if (has_feedback) {
      const Mat& reference = filtered ? est : rho;
      strengths = adl_feedback(*options.feedback, reference);
      for (std::size_t r = 0; r < strengths.size(); ++r) {
        if (strengths[r] == 0.0) continue;
        delta += Complex(0, -1) * strengths[r] * dt *
                 commutator(options.feedback->hamiltonians[r], rho);
      }
    }

    if (filtered) {
      Mat delta_est = drift(est) * dt;
      for (std::size_t l = 0; l < n_channels; ++l) {
        const Mat& m = options.diffusion_ops[l];
        // Innovation seen by the filter: the realized record increment minus
        // the filter's own prediction.
        const double expect_true = (m * rho).trace().real();
        const double expect_est = (m * est).trace().real();
        const double dw_est = dw[l] + sqrt_kappa * (expect_true - expect_est) * dt;
        delta_est += (0.5 * sqrt_kappa * dw_est) * innovation(m, est);
      }
      for (std::size_t r = 0; r < strengths.size(); ++r) {
        if (strengths[r] == 0.0) continue;
        delta_est += Complex(0, -1) * strengths[r] * dt *
                     commutator(options.feedback->hamiltonians[r], est);
      }
      est = hermitize(est + delta_est);
      est /= est.trace().real();
    }

    rho += delta;
    rho = hermitize(rho);
    const double tr = rho.trace().real();
    record.max_trace_correction = std::max(record.max_trace_correction, std::abs(tr - 1.0));
    rho /= tr;
    if (step % stride == 0 || step == n_steps)
      store_state(record, step * dt, rho0.dims(), rho);
  }
  return record;
}

TrajectoryRecord evolve_weak_steps(const StepMap& step, const DensityMatrix& rho0,
                                   const SimConfig& config) {
  config.validate();
  const double dt = config.effective_dt();
  const int n_steps = step_count(config);
  const int stride = effective_stride(config, n_steps);

  TrajectoryRecord record;
  Mat rho = rho0.matrix();
  store_state(record, 0.0, rho0.dims(), rho);
  for (int k = 1; k <= n_steps; ++k) {
    rho = step(rho);
    rho = hermitize(rho);
    const double tr = rho.trace().real();
    record.max_trace_correction = std::max(record.max_trace_correction, std::abs(tr - 1.0));
    rho /= tr;
    if (k % stride == 0 || k == n_steps) store_state(record, k * dt, rho0.dims(), rho);
  }
  return record;
}

TrajectoryRecord evolve_weak_steps(const StepSampler& sampler, const DensityMatrix& rho0,
                                   const SimConfig& config, CounterRng& rng) {
  config.validate();
  const double dt = config.effective_dt();
  const int n_steps = step_count(config);
  const int stride = effective_stride(config, n_steps);

  TrajectoryRecord record;
  Mat rho = rho0.matrix();
  double x = 0.0;
  record.x_path.push_back(x);
  store_state(record, 0.0, rho0.dims(), rho);
  for (int k = 1; k <= n_steps; ++k) {
    double dx = 0.0;
    rho = sampler(rho, rng, &dx);
    x += dx;
    record.x_path.push_back(x);
    const bool done = config.x_threshold > 0.0 && std::abs(x) >= config.x_threshold;
    if (k % stride == 0 || k == n_steps || done)
      store_state(record, k * dt, rho0.dims(), rho);
    if (done) {
      record.terminated_early = true;
      break;
    }
  }
  record.current_estimate = measurement_current(record.x_path, config);
  return record;
}

EnsembleStats ensemble_average(const SimConfig& config, const TrajectoryFactory& factory,
                               const std::vector<NamedObservable>& observables) {
  config.validate();
  const int n_traj = config.n_traj;
  const std::size_t n_obs = observables.size();

  // Trajectory 0 fixes the time grid.
  CounterRng rng0(config.seed, 0);
  TrajectoryRecord first = factory(0, rng0);
  const std::size_t n_times = first.times.size();

  EnsembleStats stats;
  stats.times = first.times;
  stats.n_traj = n_traj;
  for (const auto& obs : observables) stats.names.push_back(obs.name);

  // values[o][i*n_times + k]
  std::vector<std::vector<double>> values(n_obs,
                                          std::vector<double>(n_traj * n_times, 0.0));
  auto fill = [&](int index, const TrajectoryRecord& record) {
    if (record.times.size() != n_times)
      throw std::runtime_error("ensemble_average: trajectories differ in length");
    for (std::size_t o = 0; o < n_obs; ++o)
      for (std::size_t k = 0; k < n_times; ++k)
        values[o][static_cast<std::size_t>(index) * n_times + k] =
            observables[o].fn(record.states[k]);
  };
  fill(0, first);

  int n_workers = config.n_workers > 0
                      ? config.n_workers
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_workers = std::clamp(n_workers, 1, std::max(1, n_traj - 1));

  if (n_traj > 1) {
    std::vector<std::thread> pool;
    std::mutex error_mutex;
    std::exception_ptr error;
    const int remaining = n_traj - 1;
    for (int w = 0; w < n_workers; ++w) {
      const int begin = 1 + (remaining * w) / n_workers;
      const int end = 1 + (remaining * (w + 1)) / n_workers;
      pool.emplace_back([&, begin, end]() {
        try {
          for (int i = begin; i < end; ++i) {
            CounterRng rng(config.seed, static_cast<std::uint64_t>(i));
            TrajectoryRecord record = factory(i, rng);
            fill(i, record);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  // Order-fixed sequential reduction keeps results independent of n_workers.
  stats.mean.assign(n_obs, std::vector<double>(n_times, 0.0));
  stats.std_error.assign(n_obs, std::vector<double>(n_times, 0.0));
  for (std::size_t o = 0; o < n_obs; ++o) {
    for (std::size_t k = 0; k < n_times; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n_traj; ++i)
        sum += values[o][static_cast<std::size_t>(i) * n_times + k];
      const double mean = sum / n_traj;
      stats.mean[o][k] = mean;
      if (n_traj > 1) {
        double ss = 0.0;
        for (int i = 0; i < n_traj; ++i) {
          const double d = values[o][static_cast<std::size_t>(i) * n_times + k] - mean;
          ss += d * d;
        }
        stats.std_error[o][k] =
            std::sqrt(ss / (static_cast<double>(n_traj) * (n_traj - 1)));
      }
    }
  }
  return stats;
}

std::vector<double> measurement_current(const std::vector<double>& x_path,
                                        const SimConfig& config) {
  const double tau = config.effective_filter_tau();
  if (tau <= 0.0) throw std::domain_error("measurement_current: filter time constant");
  const double dt = config.effective_dt();
  const double alpha = 1.0 - std::exp(-dt / tau);
  std::vector<double> current(x_path.size(), 0.0);
  for (std::size_t k = 1; k < x_path.size(); ++k) {
    const double rate = (x_path[k] - x_path[k - 1]) / dt;
    current[k] = current[k - 1] + alpha * (rate - current[k - 1]);
  }
  return current;
}

}  // namespace ctqec
