#include "ctqec/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "ctqec/analytic.hpp"
#include "ctqec/dynamics.hpp"
#include "ctqec/fit.hpp"
#include "ctqec/nonmarkov_reduced.hpp"

namespace ctqec {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse '" + value + "' as a number for key '" + key + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse '" + value + "' as an integer for key '" + key + "'");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void apply_override(SimConfig& config, const std::string& key, const std::string& value) {
  if (key == "scenario") config.scenario = value;
  else if (key == "kappa") config.kappa = parse_double(key, value);
  else if (key == "lambda") config.lambda = parse_double(key, value);
  else if (key == "gamma") config.gamma = parse_double(key, value);
  else if (key == "dt") config.dt = parse_double(key, value);
  else if (key == "t_max") config.t_max = parse_double(key, value);
  else if (key == "n_traj") config.n_traj = static_cast<int>(parse_int(key, value));
  else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "store_stride") config.store_stride = static_cast<int>(parse_int(key, value));
  else if (key == "filter_time_constant") config.filter_time_constant = parse_double(key, value);
  else if (key == "feedback_strength") config.feedback_strength = parse_double(key, value);
  else if (key == "x_threshold") config.x_threshold = parse_double(key, value);
  else if (key == "n_workers") config.n_workers = static_cast<int>(parse_int(key, value));
  else if (key == "mode") config.mode = value;
  else if (key == "engine") config.engine = value;
  else throw ConfigError("config: unknown key '" + key + "'");
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  SimConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    apply_override(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

std::vector<std::pair<std::string, std::string>> config_echo(const SimConfig& config) {
  std::vector<std::pair<std::string, std::string>> echo;
  echo.emplace_back("scenario", config.scenario);
  echo.emplace_back("kappa", format_double(config.kappa));
  echo.emplace_back("lambda", format_double(config.lambda));
  echo.emplace_back("gamma", format_double(config.gamma));
  echo.emplace_back("dt", format_double(config.effective_dt()));
  echo.emplace_back("t_max", format_double(config.t_max));
  echo.emplace_back("n_traj", std::to_string(config.n_traj));
  echo.emplace_back("seed", std::to_string(config.seed));
  echo.emplace_back("store_stride", std::to_string(config.store_stride));
  echo.emplace_back("filter_time_constant", format_double(config.effective_filter_tau()));
  echo.emplace_back("feedback_strength", format_double(config.feedback_strength));
  echo.emplace_back("x_threshold", format_double(config.x_threshold));
  if (!config.mode.empty()) echo.emplace_back("mode", config.mode);
  if (!config.engine.empty()) echo.emplace_back("engine", config.engine);
  return echo;
}

bool is_known_scenario(const std::string& name) {
  static const char* names[] = {"markov-1q",    "markov-3q",     "nonmarkov-1q",
                                "nonmarkov-3q", "adl-sme",       "jump-weakmeas",
                                "zeno-probe"};
  return std::find(std::begin(names), std::end(names), name) != std::end(names);
}

namespace {

// ---- shared pieces --------------------------------------------------------

Generator lindblad_generator_fn(LindbladGenerator gen) {
  return [gen = std::move(gen)](const Mat& rho) { return lindblad_apply(gen, rho); };
}

Generator jump_generator_fn(JumpCorrection jump) {
  return [jump = std::move(jump)](const Mat& rho) { return jump_apply(jump, rho); };
}

/// Recovery of the code's system factor, extended with identity on bath
/// factors.
JumpCorrection joint_jump(const CodeSpec& code, int bath_dim, double kappa) {
  KrausMap recovery = strong_recovery(code);
  std::vector<Mat> ops;
  for (const Mat& k : recovery.ops())
    ops.push_back(tensor(k, Mat::Identity(bath_dim, bath_dim)));
  return JumpCorrection(KrausMap(std::move(ops)), kappa);
}

struct ClassWeights {
  double a, b, c, d;
};

// Populations of the zero-, one-, two-, three-flip classes relative to |000>.
ClassWeights class_weights(const Mat& rho) {
  auto diag = [&rho](int k) { return rho(k, k).real(); };
  ClassWeights w{};
  w.a = diag(0);
  w.b = diag(1) + diag(2) + diag(4);
  w.c = diag(3) + diag(5) + diag(6);
  w.d = diag(7);
  return w;
}

double tail_mean(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                 double t_hi) {
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t_lo && t[i] <= t_hi) {
      sum += y[i];
      ++n;
    }
  }
  return n > 0 ? sum / n : 0.0;
}

// ---- scenarios ------------------------------------------------------------

ScenarioReport scenario_markov_1q(const SimConfig& config) {
  std::vector<Generator> gens;
  gens.push_back(lindblad_generator_fn(bitflip_lindblad(1, {config.lambda})));
  if (config.kappa > 0.0)
    gens.push_back(jump_generator_fn(JumpCorrection(strong_recovery(trivial_code()), config.kappa)));

  auto record = evolve_deterministic(gens, DensityMatrix::basis_state({2}, 0), config);
  const Vec ket0 = basis_vec(2, 0);

  ScenarioReport report;
  report.columns = {"t", "alpha", "alpha_oracle", "abs_err"};
  double max_err = 0.0;
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    const double t = record.times[k];
    const double alpha = state_fidelity(record.states[k], ket0);
    const double oracle = markov_1q_alpha(t, config.kappa, config.lambda);
    const double err = std::abs(alpha - oracle);
    max_err = std::max(max_err, err);
    report.rows.push_back({t, alpha, oracle, err});
  }
  const double alpha_final = state_fidelity(record.states.back(), ket0);
  const double alpha_star = markov_1q_alpha_star(config.kappa, config.lambda);
  report.summary = {{"max_abs_err", max_err},
                    {"alpha_final", alpha_final},
                    {"alpha_star_oracle", alpha_star},
                    {"equilibrium_abs_err", std::abs(alpha_final - alpha_star)},
                    {"max_trace_correction", record.max_trace_correction}};
  return report;
}

ScenarioReport scenario_markov_3q(const SimConfig& config) {
  CodeSpec code = bitflip_code();
  std::vector<Generator> gens;
  gens.push_back(lindblad_generator_fn(
      bitflip_lindblad(3, {config.lambda, config.lambda, config.lambda})));
  if (config.kappa > 0.0)
    gens.push_back(jump_generator_fn(JumpCorrection(strong_recovery(code), config.kappa)));

  auto record = evolve_deterministic(gens, DensityMatrix::basis_state({2, 2, 2}, 0), config);

  // Reference integration of the four-component class system on the same
  // grid; the class decomposition is exact, so the two runs agree to
  // roundoff when the reduction is correct.
  const double dt = config.effective_dt();
  const int n_steps = config.n_steps();
  const int stride = config.effective_store_stride(n_steps);
  auto rhs4 = [&config](const Eigen::Vector4d& w) {
    auto d = markov_3q_ode_rhs(w(0), w(1), w(2), w(3), config.kappa, config.lambda);
    return Eigen::Vector4d(d[0], d[1], d[2], d[3]);
  };
  std::vector<Eigen::Vector4d> reference;
  Eigen::Vector4d w(1.0, 0.0, 0.0, 0.0);
  reference.push_back(w);
  for (int step = 1; step <= n_steps; ++step) {
    Eigen::Vector4d k1 = rhs4(w);
    Eigen::Vector4d k2 = rhs4(w + 0.5 * dt * k1);
    Eigen::Vector4d k3 = rhs4(w + 0.5 * dt * k2);
    Eigen::Vector4d k4 = rhs4(w + dt * k3);
    w += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % stride == 0 || step == n_steps) reference.push_back(w);
  }

  const bool with_drift = config.mode == "drift";
  DriftSeries drift;
  if (with_drift) drift = drift_diagnostic(record, code, 0);

  ScenarioReport report;
  report.columns = {"t",     "a",     "b",           "c",
                    "d",     "outside_weight", "outside_oracle", "outside_abs_err",
                    "alpha", "codeword_fidelity", "reduction_abs_err"};
  if (with_drift) {
    report.columns.push_back("drift_rate");
    report.columns.push_back("bound_term");
  }
  double max_outside_err = 0.0, max_reduction_err = 0.0;
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    const double t = record.times[k];
    const Mat& rho = record.states[k].matrix();
    ClassWeights cw = class_weights(rho);
    const double outside = cw.b + cw.c;
    const double oracle = markov_3q_outside_weight(t, config.kappa, config.lambda);
    const double err = std::abs(outside - oracle);
    const Eigen::Vector4d& ref = reference[k];
    const double red_err = std::max({std::abs(cw.a - ref(0)), std::abs(cw.b - ref(1)),
                                     std::abs(cw.c - ref(2)), std::abs(cw.d - ref(3))});
    max_outside_err = std::max(max_outside_err, err);
    max_reduction_err = std::max(max_reduction_err, red_err);
    std::vector<double> row = {t,
                               cw.a,
                               cw.b,
                               cw.c,
                               cw.d,
                               outside,
                               oracle,
                               err,
                               code_space_fidelity(rho, code),
                               codeword_fidelity(rho, code.logical_zero),
                               red_err};
    if (with_drift) {
      row.push_back(drift.drift[k]);
      row.push_back(drift.bound_term[k]);
    }
    report.rows.push_back(std::move(row));
  }
  ClassWeights final_cw = class_weights(record.states.back().matrix());
  const double r = config.lambda > 0.0 ? config.kappa / config.lambda : 0.0;
  report.summary = {{"max_outside_abs_err", max_outside_err},
                    {"max_reduction_abs_err", max_reduction_err},
                    {"outside_final", final_cw.b + final_cw.c},
                    {"outside_asymptote_oracle", config.lambda > 0.0 ? 3.0 / (4.0 + r) : 0.0},
                    {"max_trace_correction", record.max_trace_correction}};
  return report;
}

ScenarioReport scenario_nonmarkov_1q(const SimConfig& config) {
  std::vector<Generator> gens;
  gens.push_back(lindblad_generator_fn(joint_bath_generator(config.gamma, 1)));
  if (config.kappa > 0.0)
    gens.push_back(jump_generator_fn(joint_jump(trivial_code(), 2, config.kappa)));

  Mat rho0 = tensor(projector(basis_vec(2, 0)), Mat::Identity(2, 2) / 2.0);
  auto record =
      evolve_deterministic(gens, DensityMatrix({2, 2}, std::move(rho0)), config);

  const Mat alpha_op = tensor(projector(basis_vec(2, 0)), Mat::Identity(2, 2));
  const Mat beta_op = tensor(pauli_matrix(Pauli::Y), pauli_matrix(Pauli::X));

  ScenarioReport report;
  report.columns = {"t", "alpha", "beta", "alpha_oracle", "abs_err"};
  double max_err = 0.0;
  std::vector<double> alphas;
  std::vector<double> early_alphas;
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    const double t = record.times[k];
    const Mat& rho = record.states[k].matrix();
    const double alpha = (alpha_op * rho).trace().real();
    const double beta = -0.5 * (beta_op * rho).trace().real();
    const double oracle = nonmarkov_1q_alpha(t, config.kappa, config.gamma);
    const double err = std::abs(alpha - oracle);
    max_err = std::max(max_err, err);
    alphas.push_back(alpha);
    if (t * config.gamma <= 5.0) early_alphas.push_back(alpha);
    report.rows.push_back({t, alpha, beta, oracle, err});
  }
  const double alpha_star = nonmarkov_1q_alpha_star(config.kappa, config.gamma);
  report.summary = {{"max_abs_err", max_err},
                    {"alpha_final", alphas.back()},
                    {"alpha_star_oracle", alpha_star},
                    {"equilibrium_abs_err", std::abs(alphas.back() - alpha_star)},
                    {"n_recurrences",
                     static_cast<double>(count_local_maxima(early_alphas, 1e-9))},
                    {"max_trace_correction", record.max_trace_correction}};
  return report;
}

ScenarioReport scenario_nonmarkov_3q(const SimConfig& config) {
  if (config.gamma <= 0.0)
    throw ConfigError("nonmarkov-3q: gamma must be positive");
  const double r = config.kappa / config.gamma;

  if (config.engine == "full") {
    // Direct integration of the 64-dimensional joint master equation;
    // intended for short horizons as a cross check of the reduced engine.
    std::vector<Generator> gens;
    gens.push_back(lindblad_generator_fn(joint_bath_generator(config.gamma, 3)));
    if (config.kappa > 0.0)
      gens.push_back(jump_generator_fn(joint_jump(bitflip_code(), 8, config.kappa)));
    Mat rho0 = tensor(projector(basis_vec(8, 0)), Mat::Identity(8, 8) / 8.0);
    auto record = evolve_deterministic(
        gens, DensityMatrix::unchecked({2, 2, 2, 2, 2, 2}, std::move(rho0)), config);

    NonMarkov3qReduced reduced(config.kappa, config.gamma);
    Eigen::MatrixXd propagator;  // reuse evolve on the stored grid
    ScenarioReport report;
    report.columns = {"t", "codeword_fidelity", "reduced_fidelity", "abs_err"};
    double max_err = 0.0;
    for (std::size_t k = 0; k < record.times.size(); ++k) {
      const double t = record.times[k];
      Mat sys = partial_trace(record.states[k].matrix(), {2, 2, 2, 2, 2, 2}, {0, 1, 2});
      const double fid = sys(0, 0).real();
      Eigen::MatrixXd prop = (reduced.rate_matrix() * t).exp();
      Eigen::VectorXd c0 = Eigen::VectorXd::Zero(64);
      c0(0) = 1.0;
      const double reduced_fid = (prop * c0)(0);
      const double err = std::abs(fid - reduced_fid);
      max_err = std::max(max_err, err);
      report.rows.push_back({t, fid, reduced_fid, err});
    }
    report.summary = {{"max_reduced_abs_err", max_err},
                      {"derivation_residual", reduced.derivation_residual()},
                      {"max_trace_correction", record.max_trace_correction}};
    return report;
  }

  NonMarkov3qReduced reduced(config.kappa, config.gamma);
  const double dt_out =
      config.dt > 0.0 ? config.dt : std::max(config.t_max / 30000.0, 1e-12);
  auto series = reduced.evolve(config.t_max, dt_out);

  ScenarioReport report;
  report.columns = {"t", "codeword_fidelity", "approx2", "approx4", "abs_err2", "abs_err4"};
  std::vector<double> signal;  // 2 C - 1
  double max_err4 = 0.0;
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const double t = series.times[k];
    const double fid = NonMarkov3qReduced::codeword_coefficient(series.coeffs[k]);
    const double a2 = nonmarkov_3q_fidelity_approx(t, config.kappa, config.gamma, 2);
    const double a4 = nonmarkov_3q_fidelity_approx(t, config.kappa, config.gamma, 4);
    max_err4 = std::max(max_err4, std::abs(fid - a4));
    signal.push_back(2.0 * fid - 1.0);
    report.rows.push_back({t, fid, a2, a4, std::abs(fid - a2), std::abs(fid - a4)});
  }

  double fit_valid = 0.0, omega_fit = 0.0, envelope_fit = 0.0;
  try {
    omega_fit = zero_crossing_frequency(series.times, signal);
    envelope_fit = envelope_decay_rate(series.times, signal);
    fit_valid = 1.0;
  } catch (const std::invalid_argument&) {
    // horizon too short for a frequency fit; summary reports fit_valid = 0
  }
  const double omega_ref = 24.0 / (r * r) * config.gamma;
  const double envelope_ref = 144.0 / (r * r * r) * config.gamma;

  // Short-horizon pass at fine resolution for the initial fast transient.
  const double t_fine = std::min(config.t_max, 2.0 / config.gamma);
  auto fine = reduced.evolve(t_fine, 0.0025 / config.gamma);
  std::vector<double> fine_fid;
  for (const auto& c : fine.coeffs)
    fine_fid.push_back(NonMarkov3qReduced::codeword_coefficient(c));
  const int dip_index = first_local_minimum(fine_fid);
  const double dip_found = dip_index >= 0 ? 1.0 : 0.0;
  const double dip_time = dip_index >= 0 ? fine.times[dip_index] : 0.0;
  const double dip_magnitude = dip_index >= 0 ? 1.0 - fine_fid[dip_index] : 0.0;

  report.summary = {{"fit_valid", fit_valid},
                    {"fitted_omega", omega_fit},
                    {"omega_ref", omega_ref},
                    {"omega_rel_err",
                     fit_valid > 0.0 ? std::abs(omega_fit - omega_ref) / omega_ref : 0.0},
                    {"fitted_envelope_rate", envelope_fit},
                    {"envelope_ref", envelope_ref},
                    {"envelope_rel_err",
                     fit_valid > 0.0 ? std::abs(envelope_fit - envelope_ref) / envelope_ref
                                     : 0.0},
                    {"dip_found", dip_found},
                    {"dip_time", dip_time},
                    {"dip_magnitude", dip_magnitude},
                    {"max_abs_err4", max_err4},
                    {"derivation_residual", reduced.derivation_residual()}};
  return report;
}

ScenarioReport scenario_adl_sme(const SimConfig& config) {
  const Mat z = pauli_matrix(Pauli::Z);
  LindbladGenerator noise = bitflip_lindblad(1, {config.lambda});
  const double kappa = config.kappa;
  Generator drift = [noise, z, kappa](const Mat& rho) {
    return lindblad_apply(noise, rho) + (kappa / 4.0) * dissipator(z, rho);
  };

  SdeOptions options;
  options.diffusion_ops = {z};
  options.kappa = kappa;
  if (config.feedback_strength > 0.0) {
    FeedbackLaw law;
    law.hamiltonians = {pauli_matrix(Pauli::X)};
    law.max_strength = config.feedback_strength;
    law.code_projector = projector(basis_vec(2, 0));
    law.policy = EstimatePolicy::kFiltered;
    options.feedback = law;
  }

  Mat rho0_mat = projector(basis_vec(2, 0));
  if (config.mode == "tilted") {
    rho0_mat = Mat::Zero(2, 2);
    rho0_mat(0, 0) = 0.65;
    rho0_mat(1, 1) = 0.35;
  }
  DensityMatrix rho0({2}, rho0_mat);

  const Vec ket0 = basis_vec(2, 0);
  std::vector<NamedObservable> observables = {
      {"alpha", [ket0](const DensityMatrix& s) { return state_fidelity(s, ket0); }},
      {"z", [z](const DensityMatrix& s) { return (z * s.matrix()).trace().real(); }}};

  auto factory = [&](int, CounterRng& rng) {
    return evolve_sde(drift, options, rho0, config, rng);
  };
  EnsembleStats stats = ensemble_average(config, factory, observables);

  auto det = evolve_deterministic({drift}, rho0, config);

  ScenarioReport report;
  report.columns = {"t",        "mean_alpha", "stderr_alpha",  "mean_z",
                    "stderr_z", "det_alpha",  "mean_minus_det"};
  double max_dev = 0.0, max_zscore = 0.0;
  for (std::size_t k = 0; k < stats.times.size(); ++k) {
    const double det_alpha = state_fidelity(det.states[k], ket0);
    const double dev = stats.mean[0][k] - det_alpha;
    max_dev = std::max(max_dev, std::abs(dev));
    if (stats.std_error[0][k] > 0.0)
      max_zscore = std::max(max_zscore, std::abs(dev) / stats.std_error[0][k]);
    report.rows.push_back({stats.times[k], stats.mean[0][k], stats.std_error[0][k],
                           stats.mean[1][k], stats.std_error[1][k], det_alpha, dev});
  }
  report.summary = {{"max_abs_dev", max_dev},
                    {"max_z_score", max_zscore},
                    {"final_mean_alpha", stats.mean[0].back()},
                    {"final_det_alpha", state_fidelity(det.states.back(), ket0)}};
  return report;
}

ScenarioReport scenario_jump_weakmeas(const SimConfig& config) {
  const double dt = config.effective_dt();
  const double eps = std::sqrt(config.kappa * dt);
  if (!(eps > 0.0 && eps < 1.0))
    throw ConfigError("jump-weakmeas: eps = sqrt(kappa dt) must be in (0,1)");

  if (config.mode.empty() || config.mode == "direct") {
    KrausMap weak = weak_jump_map(eps);
    const double stay = (1.0 + std::exp(-2.0 * config.lambda * dt)) / 2.0;
    const Mat x = pauli_matrix(Pauli::X);
    StepMap step = [weak, stay, x](const Mat& rho) {
      Mat after_noise = stay * rho + (1.0 - stay) * x * rho * x;
      return apply_kraus(weak, after_noise);
    };
    auto record = evolve_weak_steps(step, DensityMatrix::basis_state({2}, 0), config);

    const Vec ket0 = basis_vec(2, 0);
    ScenarioReport report;
    report.columns = {"t", "alpha_weak", "alpha_oracle", "abs_err"};
    double max_err = 0.0;
    for (std::size_t k = 0; k < record.times.size(); ++k) {
      const double alpha = state_fidelity(record.states[k], ket0);
      const double oracle = markov_1q_alpha(record.times[k], config.kappa, config.lambda);
      const double err = std::abs(alpha - oracle);
      max_err = std::max(max_err, err);
      report.rows.push_back({record.times[k], alpha, oracle, err});
    }
    report.summary = {{"eps", eps},
                      {"max_abs_err", max_err},
                      {"alpha_final", state_fidelity(record.states.back(), ket0)}};
    return report;
  }

  if (config.mode != "zwalk")
    throw ConfigError("jump-weakmeas: mode must be 'direct' or 'zwalk'");

  // Repeated weak Z measurement random walk; no correction.
  WeakMeasurement meas = weak_z_measurement(eps);
  StepSampler sampler = [meas, eps](const Mat& rho, CounterRng& rng, double* dx) {
    Mat plus = meas.m_plus * rho * meas.m_plus.adjoint();
    const double p_plus = plus.trace().real();
    if (rng.uniform01() <= p_plus) {
      *dx = eps;
      return Mat(plus / p_plus);
    }
    Mat minus = meas.m_minus * rho * meas.m_minus.adjoint();
    *dx = -eps;
    return Mat(minus / minus.trace().real());
  };

  Mat rho0_mat = config.mode == "zwalk" && config.feedback_strength < 0.0
                     ? Mat::Identity(2, 2) / 2.0
                     : projector(basis_vec(2, 0));
  DensityMatrix rho0({2}, rho0_mat);
  const Mat z = pauli_matrix(Pauli::Z);

  ScenarioReport report;
  report.columns = {"traj",        "final_x",   "final_z",    "eigen_dist",
                    "current_tail", "terminated", "n_steps"};
  double current_sum = 0.0, current_sq = 0.0, eigen_sum = 0.0;
  int terminated = 0;
  for (int i = 0; i < config.n_traj; ++i) {
    CounterRng rng(config.seed, static_cast<std::uint64_t>(i));
    auto record = evolve_weak_steps(sampler, rho0, config, rng);
    const Mat& rho_end = record.states.back().matrix();
    const double fz = (z * rho_end).trace().real();
    const double d0 = max_abs(rho_end - projector(basis_vec(2, 0)));
    const double d1 = max_abs(rho_end - projector(basis_vec(2, 1)));
    const double eigen_dist = std::min(d0, d1);
    const double t_end = record.times.back();
    const double t_lo = config.kappa > 0.0 ? 5.0 / config.kappa : 0.0;
    const double t_hi = config.kappa > 0.0 ? 10.0 / config.kappa : t_end;
    std::vector<double> step_times(record.x_path.size());
    for (std::size_t k = 0; k < step_times.size(); ++k) step_times[k] = k * dt;
    const double tail = tail_mean(step_times, record.current_estimate, t_lo,
                                  std::min(t_hi, t_end));
    current_sum += tail;
    current_sq += tail * tail;
    eigen_sum += eigen_dist;
    if (record.terminated_early) ++terminated;
    report.rows.push_back({static_cast<double>(i), record.x_path.back(), fz, eigen_dist,
                           tail, record.terminated_early ? 1.0 : 0.0,
                           static_cast<double>(record.x_path.size() - 1)});
  }
  const double n = config.n_traj;
  const double mean_current = current_sum / n;
  const double var =
      n > 1 ? std::max(0.0, (current_sq - n * mean_current * mean_current) / (n - 1.0)) : 0.0;
  report.summary = {{"eps", eps},
                    {"mean_current_tail", mean_current},
                    {"stderr_current_tail", n > 1 ? std::sqrt(var / n) : 0.0},
                    {"mean_eigen_dist", eigen_sum / n},
                    {"frac_terminated", terminated / n}};
  return report;
}

ScenarioReport scenario_zeno_probe(const SimConfig& config) {
  if (config.gamma <= 0.0) throw ConfigError("zeno-probe: gamma must be positive");
  LindbladGenerator joint = joint_bath_generator(config.gamma, 1);
  const double c_exact =
      zeno_coefficient(joint.hamiltonian, Mat::Identity(2, 2) / 2.0, basis_vec(2, 0));

  // Short-time quadratic regime without correction.
  SimConfig zeno_cfg = config;
  zeno_cfg.kappa = 0.0;
  zeno_cfg.t_max = 0.01 / config.gamma;
  zeno_cfg.dt = zeno_cfg.t_max / 100.0;
  zeno_cfg.store_stride = 1;
  Mat rho0 = tensor(projector(basis_vec(2, 0)), Mat::Identity(2, 2) / 2.0);
  auto record = evolve_deterministic({lindblad_generator_fn(joint)},
                                     DensityMatrix({2, 2}, rho0), zeno_cfg);

  const Mat alpha_op = tensor(projector(basis_vec(2, 0)), Mat::Identity(2, 2));
  ScenarioReport report;
  report.columns = {"t", "one_minus_alpha", "quadratic_ref", "abs_err"};
  std::vector<double> t2, loss;
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    const double t = record.times[k];
    const double one_minus = 1.0 - (alpha_op * record.states[k].matrix()).trace().real();
    const double ref = c_exact * t * t;
    t2.push_back(t * t);
    loss.push_back(one_minus);
    report.rows.push_back({t, one_minus, ref, std::abs(one_minus - ref)});
  }
  const double c_fit = linear_fit(t2, loss).slope;

  double alpha_star_sim = 1.0;
  if (config.kappa > 0.0) {
    std::vector<Generator> gens = {lindblad_generator_fn(joint),
                                   jump_generator_fn(joint_jump(trivial_code(), 2, config.kappa))};
    auto long_run = evolve_deterministic(gens, DensityMatrix({2, 2}, rho0), config);
    alpha_star_sim = (alpha_op * long_run.states.back().matrix()).trace().real();
  }

  report.summary = {
      {"c_fit", c_fit},
      {"c_exact", c_exact},
      {"c_rel_err", c_exact > 0.0 ? std::abs(c_fit - c_exact) / c_exact : 0.0},
      {"alpha_star_sim", alpha_star_sim},
      {"zeno_equilibrium_approx",
       config.kappa > 0.0 ? zeno_equilibrium(config.kappa, c_exact) : 1.0},
      {"alpha_star_exact", nonmarkov_1q_alpha_star(config.kappa, config.gamma)}};
  return report;
}

void check_finite(const ScenarioReport& report) {
  for (const auto& row : report.rows)
    for (double v : row)
      if (!std::isfinite(v))
        throw NumericGuardError("scenario produced a non-finite value in output rows");
  for (const auto& [key, v] : report.summary)
    if (!std::isfinite(v))
      throw NumericGuardError("scenario produced a non-finite summary value: " + key);
}

}  // namespace

ScenarioReport run_scenario(const SimConfig& config) {
  if (!is_known_scenario(config.scenario))
    throw ConfigError("unknown scenario '" + config.scenario + "'");
  const auto start = std::chrono::steady_clock::now();

  ScenarioReport report;
  try {
    if (config.scenario == "markov-1q") report = scenario_markov_1q(config);
    else if (config.scenario == "markov-3q") report = scenario_markov_3q(config);
    else if (config.scenario == "nonmarkov-1q") report = scenario_nonmarkov_1q(config);
    else if (config.scenario == "nonmarkov-3q") report = scenario_nonmarkov_3q(config);
    else if (config.scenario == "adl-sme") report = scenario_adl_sme(config);
    else if (config.scenario == "jump-weakmeas") report = scenario_jump_weakmeas(config);
    else report = scenario_zeno_probe(config);
  } catch (const std::domain_error& e) {
    throw NumericGuardError(e.what());
  } catch (const TrajectoryError& e) {
    throw NumericGuardError(e.what());
  }

  report.scenario = config.scenario;
  report.config_echo = config_echo(config);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check_finite(report);
  return report;
}

void write_csv(const ScenarioReport& report, std::ostream& out) {
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out << ',';
    out << report.columns[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

void write_csv_file(const ScenarioReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  write_csv(report, out);
}

void print_summary(const ScenarioReport& report, std::ostream& out) {
  out << "scenario: " << report.scenario << "\n";
  for (const auto& [key, value] : report.config_echo)
    out << "  config " << key << " = " << value << "\n";
  for (const auto& [key, value] : report.summary)
    out << "  " << key << " = " << format_double(value) << "\n";
  out << "  rows = " << report.rows.size() << "\n";
  out << "  wall_time_s = " << format_double(report.wall_time_seconds) << "\n";
}

SweepResult run_sweep(const SimConfig& base, const std::string& param,
                      const std::vector<double>& values) {
  static const char* sweepable[] = {"kappa", "lambda", "gamma", "dt", "n_traj"};
  if (std::find(std::begin(sweepable), std::end(sweepable), param) == std::end(sweepable))
    throw ConfigError("sweep: parameter must be one of kappa, lambda, gamma, dt, n_traj");

  SweepResult result;
  result.columns = {"run", param};
  for (std::size_t i = 0; i < values.size(); ++i) {
    SimConfig config = base;
    if (param == "kappa") config.kappa = values[i];
    else if (param == "lambda") config.lambda = values[i];
    else if (param == "gamma") config.gamma = values[i];
    else if (param == "dt") config.dt = values[i];
    else config.n_traj = static_cast<int>(std::llround(values[i]));
    config.seed = CounterRng::derive_seed(base.seed, i);

    ScenarioReport report = run_scenario(config);
    if (i == 0)
      for (const auto& [key, value] : report.summary) result.columns.push_back(key);
    std::vector<double> row = {static_cast<double>(i), values[i]};
    for (const auto& [key, value] : report.summary) row.push_back(value);
    result.rows.push_back(std::move(row));
  }
  return result;
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
  for (std::size_t i = 0; i < sweep.columns.size(); ++i) {
    if (i) out << ',';
    out << sweep.columns[i];
  }
  out << '\n';
  for (const auto& row : sweep.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

void write_sweep_csv_file(const SweepResult& sweep, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  write_sweep_csv(sweep, out);
}

DriftSeries drift_diagnostic(const TrajectoryRecord& record, const CodeSpec& code,
                             int n_bath_qubits) {
  DriftSeries series;
  std::vector<Mat> logical_states;
  for (std::size_t k = 0; k < record.states.size(); ++k) {
    Mat sys = record.states[k].matrix();
    if (n_bath_qubits > 0) {
      std::vector<int> dims(code.n_qubits + n_bath_qubits, 2);
      std::vector<int> keep;
      for (int i = 0; i < code.n_qubits; ++i) keep.push_back(i);
      sys = partial_trace(sys, dims, keep);
    }
    const double alpha = code_space_fidelity(sys, code);
    Mat encoded = code.basis_unitary * sys * code.basis_unitary.adjoint();
    Mat logical = partial_trace(encoded, {2, code.syndrome_dim}, {0});
    logical_states.push_back(std::move(logical));
    series.times.push_back(record.times[k]);
    series.one_minus_alpha.push_back(1.0 - alpha);
    series.bound_term.push_back(std::sqrt(std::max(0.0, alpha * (1.0 - alpha))));
    if (k == 0) {
      series.drift.push_back(0.0);
    } else {
      const double dt = record.times[k] - record.times[k - 1];
      series.drift.push_back(trace_norm(logical_states[k] - logical_states[k - 1]) / dt);
    }
  }
  return series;
}

}  // namespace ctqec
