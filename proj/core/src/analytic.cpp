#include "ctqec/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace ctqec {

double markov_1q_alpha_star(double kappa, double lambda) {
  if (kappa < 0.0 || lambda < 0.0) throw std::domain_error("markov_1q_alpha_star: rates");
  if (lambda == 0.0) return 1.0;
  const double r = kappa / lambda;
  return 1.0 - 1.0 / (2.0 + r);
}

double markov_1q_alpha(double t, double kappa, double lambda) {
  const double a_star = markov_1q_alpha_star(kappa, lambda);
  return (1.0 - a_star) * std::exp(-(kappa + 2.0 * lambda) * t) + a_star;
}

double markov_3q_outside_weight(double t, double kappa, double lambda) {
  if (kappa < 0.0 || lambda < 0.0) throw std::domain_error("markov_3q_outside_weight: rates");
  if (lambda == 0.0) return 0.0;
  const double r = kappa / lambda;
  return 3.0 / (4.0 + r) * (1.0 - std::exp(-(4.0 + r) * lambda * t));
}

std::array<double, 4> markov_3q_ode_rhs(double a, double b, double c, double d,
                                        double kappa, double lambda) {
  return {
      -3.0 * lambda * a + (lambda + kappa) * b,
      3.0 * lambda * a - (3.0 * lambda + kappa) * b + 2.0 * lambda * c,
      2.0 * lambda * b - (3.0 * lambda + kappa) * c + 3.0 * lambda * d,
      (lambda + kappa) * c - 3.0 * lambda * d,
  };
}

Eigen::Matrix4d markov_3q_rate_matrix(double kappa, double lambda) {
  Eigen::Matrix4d m;
  m << -3.0 * lambda, lambda + kappa, 0.0, 0.0,
      3.0 * lambda, -(3.0 * lambda + kappa), 2.0 * lambda, 0.0,
      0.0, 2.0 * lambda, -(3.0 * lambda + kappa), 3.0 * lambda,
      0.0, 0.0, lambda + kappa, -3.0 * lambda;
  return m;
}

std::array<double, 4> markov_3q_solution(double t, double kappa, double lambda) {
  Eigen::Matrix4d propagator = (markov_3q_rate_matrix(kappa, lambda) * t).exp();
  Eigen::Vector4d v = propagator * Eigen::Vector4d(1.0, 0.0, 0.0, 0.0);
  return {v(0), v(1), v(2), v(3)};
}

std::array<double, 2> markov_3q_codespace_decay(double t, double kappa, double lambda) {
  if (lambda <= 0.0) return {1.0, 0.0};
  const double r = kappa / lambda;
  if (r <= 0.0) throw std::domain_error("markov_3q_codespace_decay: requires kappa > 0");
  const double decay = std::exp(-(6.0 / r) * 2.0 * lambda * t);
  return {(1.0 + decay) / 2.0, (1.0 - decay) / 2.0};
}

double nonmarkov_1q_alpha_star(double kappa, double gamma) {
  if (gamma <= 0.0) throw std::domain_error("nonmarkov_1q_alpha_star: gamma must be positive");
  const double r2 = (kappa / gamma) * (kappa / gamma);
  return (2.0 + r2) / (4.0 + r2);
}

double nonmarkov_1q_alpha(double t, double kappa, double gamma) {
  if (gamma <= 0.0) throw std::domain_error("nonmarkov_1q_alpha: gamma must be positive");
  const double g2 = gamma * gamma;
  const double k2 = kappa * kappa;
  const double denom = 4.0 * g2 + k2;
  return (2.0 * g2 + k2) / denom +
         std::exp(-kappa * t) * (kappa * gamma / denom * std::sin(2.0 * gamma * t) +
                                 2.0 * g2 / denom * std::cos(2.0 * gamma * t));
}

std::array<double, 2> nonmarkov_1q_ode_rhs(double alpha, double beta, double kappa,
                                           double gamma) {
  return {kappa * (1.0 - alpha) - 2.0 * gamma * beta,
          gamma * (2.0 * alpha - 1.0) - kappa * beta};
}

double nonmarkov_3q_fidelity_approx(double t, double kappa, double gamma, int order) {
  if (gamma <= 0.0) throw std::domain_error("nonmarkov_3q_fidelity_approx: gamma");
  const double r = kappa / gamma;
  const double phase = 24.0 / (r * r) * gamma * t;
  if (order == 2) return (1.0 + std::cos(phase)) / 2.0;
  if (order == 4)
    return (1.0 + std::exp(-144.0 / (r * r * r) * gamma * t) * std::cos(phase)) / 2.0;
  throw std::domain_error("nonmarkov_3q_fidelity_approx: order must be 2 or 4");
}

double zeno_coefficient(const Mat& h_total, const Mat& rho_bath, const Vec& psi0) {
  const int ds = static_cast<int>(psi0.size());
  const int db = static_cast<int>(rho_bath.rows());
  if (h_total.rows() != ds * db)
    throw std::domain_error("zeno_coefficient: dimension mismatch");
  Mat p0 = projector(psi0);
  Mat joint0 = tensor(p0, rho_bath);
  Mat proj_full = tensor(p0, Mat::Identity(db, db));
  const double first = (h_total * h_total * joint0).trace().real();
  const double second = (h_total * proj_full * h_total * joint0).trace().real();
  return first - second;
}

double zeno_equilibrium(double kappa, double c) {
  if (kappa <= 0.0) throw std::domain_error("zeno_equilibrium: kappa must be positive");
  return 1.0 - 4.0 * c / (kappa * kappa);
}

std::vector<double> error_rate(const std::vector<double>& fidelity, double dt) {
  if (dt <= 0.0) throw std::domain_error("error_rate: dt must be positive");
  const std::size_t n = fidelity.size();
  std::vector<double> rate(n, 0.0);
  if (n < 3) return rate;
  // Second-order one-sided stencils at the ends, central in the interior.
  rate[0] = -(-3.0 * fidelity[0] + 4.0 * fidelity[1] - fidelity[2]) / (2.0 * dt);
  for (std::size_t k = 1; k + 1 < n; ++k)
    rate[k] = -(fidelity[k + 1] - fidelity[k - 1]) / (2.0 * dt);
  rate[n - 1] =
      -(3.0 * fidelity[n - 1] - 4.0 * fidelity[n - 2] + fidelity[n - 3]) / (2.0 * dt);
  return rate;
}

}  // namespace ctqec
