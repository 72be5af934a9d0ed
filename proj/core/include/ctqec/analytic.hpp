#pragma once

#include <array>
#include <vector>

#include "ctqec/linalg.hpp"

namespace ctqec {

// Closed-form reference solutions used as oracles by tests and the CLI.

/// Fidelity of the single qubit under Markovian bit flips at rate lambda with
/// continuous correction at rate kappa:
///   alpha(t) = (1 - alpha*) exp(-(kappa + 2 lambda) t) + alpha*,
///   alpha* = 1 - 1/(2 + r), r = kappa/lambda.
double markov_1q_alpha(double t, double kappa, double lambda);
double markov_1q_alpha_star(double kappa, double lambda);

/// Weight outside the code space of the three-qubit code, equal single-qubit
/// rates lambda: 3/(4+r) * (1 - exp(-(4+r) lambda t)).
double markov_3q_outside_weight(double t, double kappa, double lambda);

/// Right-hand side of the four-component error-class system (a, b, c, d):
/// populations of the zero-, one-, two-, and three-flip classes. Row sums
/// vanish so a+b+c+d is conserved.
std::array<double, 4> markov_3q_ode_rhs(double a, double b, double c, double d,
                                        double kappa, double lambda);

/// 4x4 rate matrix of the same system (column vector convention).
Eigen::Matrix4d markov_3q_rate_matrix(double kappa, double lambda);

/// Exact (a,b,c,d) at time t from the matrix exponential of the rate matrix,
/// initial condition (1,0,0,0).
std::array<double, 4> markov_3q_solution(double t, double kappa, double lambda);

/// Large-r approximation: the encoded qubit decays like a single qubit with
/// rate (6/r) lambda; returns (a, d).
std::array<double, 2> markov_3q_codespace_decay(double t, double kappa, double lambda);

/// Fidelity of a single qubit coupled to one bath qubit (H = gamma X (x) X,
/// bath maximally mixed) under continuous correction at rate kappa.
double nonmarkov_1q_alpha(double t, double kappa, double gamma);
double nonmarkov_1q_alpha_star(double kappa, double gamma);

/// d(alpha)/dt = kappa(1-alpha) - 2 gamma beta,
/// d(beta)/dt  = gamma(2 alpha - 1) - kappa beta.
std::array<double, 2> nonmarkov_1q_ode_rhs(double alpha, double beta, double kappa,
                                           double gamma);

/// Perturbative codeword fidelity of the three-qubit code with three bath
/// qubits, R = kappa/gamma >> 1.
///   order 2: (1 + cos(24 gamma t / R^2)) / 2
///   order 4: (1 + exp(-144 gamma t / R^3) cos(24 gamma t / R^2)) / 2
double nonmarkov_3q_fidelity_approx(double t, double kappa, double gamma, int order);

/// Short-time quadratic coefficient of the fidelity loss,
///   C = Tr{H^2 P0 (x) rho_B} - Tr{H P0 (x) I H P0 (x) rho_B},
/// where P0 = |psi0><psi0|. For H = gamma X (x) X with a maximally mixed bath
/// and psi0 = |0>, C = gamma^2.
double zeno_coefficient(const Mat& h_total, const Mat& rho_bath, const Vec& psi0);

/// Quasi-stationary fidelity 1 - 4 C / kappa^2 from balancing the Zeno-regime
/// loss against the correction gain.
double zeno_equilibrium(double kappa, double c);

/// Lambda(t) = -dF/dt by second-order differences on a uniform grid (central
/// in the interior, one-sided at the ends).
std::vector<double> error_rate(const std::vector<double>& fidelity, double dt);

}  // namespace ctqec
