#include "ctqec/nonmarkov_reduced.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "ctqec/code.hpp"
#include "ctqec/dynamics.hpp"

namespace ctqec {

namespace {

// k = (l m n p q r) as bits, l most significant.
int bit(int k, int position) { return (k >> (5 - position)) & 1; }

}  // namespace

NonMarkov3qReduced::NonMarkov3qReduced(double kappa, double gamma)
    : kappa_(kappa), gamma_(gamma) {
  if (kappa < 0.0 || gamma <= 0.0)
    throw std::domain_error("NonMarkov3qReduced: kappa >= 0 and gamma > 0 required");

  const Mat& x = pauli_matrix(Pauli::X);
  const Mat id2 = Mat::Identity(2, 2);

  basis_.reserve(64);
  basis_sq_norm_.reserve(64);
  for (int k = 0; k < 64; ++k) {
    const int l = bit(k, 0), m = bit(k, 1), n = bit(k, 2);
    const int p = bit(k, 3), q = bit(k, 4), r = bit(k, 5);
    const int row = l * 4 + m * 2 + n;
    const int col = p * 4 + q * 2 + r;
    Mat sys = Mat::Zero(8, 8);
    sys(row, col) = 1.0;
    Mat bath = tensor({((l + p) % 2 ? x : id2) / 2.0, ((m + q) % 2 ? x : id2) / 2.0,
                       ((n + r) % 2 ? x : id2) / 2.0});
    Complex phase = std::pow(Complex(0, -1), l + m + n) * std::pow(Complex(0, 1), p + q + r);
    Mat v = phase * tensor(sys, bath);
    basis_sq_norm_.push_back((v.adjoint() * v).trace().real());
    basis_.push_back(std::move(v));
  }

  // Joint generator: Hamiltonian coupling plus recovery acting on the system
  // factor only.
  LindbladGenerator ham = joint_bath_generator(gamma, 3);
  KrausMap recovery = strong_recovery(bitflip_code());
  std::vector<Mat> joint_kraus;
  for (const Mat& kk : recovery.ops()) joint_kraus.push_back(tensor(kk, Mat::Identity(8, 8)));
  KrausMap joint_recovery(std::move(joint_kraus));

  auto generator = [&](const Mat& rho) {
    Mat out = Complex(0, -1) * commutator(ham.hamiltonian, rho);
    if (kappa_ > 0.0) out += kappa_ * (apply_kraus(joint_recovery, rho) - rho);
    return out;
  };

  rate_.resize(64, 64);
  for (int k = 0; k < 64; ++k) {
    Mat w = generator(basis_[k]);
    Mat remainder = w;
    for (int j = 0; j < 64; ++j) {
      Complex coeff = (basis_[j].adjoint() * w).trace() / basis_sq_norm_[j];
      derivation_residual_ = std::max(derivation_residual_, std::abs(coeff.imag()));
      rate_(j, k) = coeff.real();
      remainder -= coeff * basis_[j];
    }
    derivation_residual_ = std::max(derivation_residual_, max_abs(remainder));
  }
  if (derivation_residual_ > 1e-9)
    throw std::runtime_error("NonMarkov3qReduced: span is not invariant under the generator");
}

NonMarkov3qReduced::Series NonMarkov3qReduced::evolve(double t_max, double dt_out) const {
  if (t_max <= 0.0 || dt_out <= 0.0)
    throw std::domain_error("NonMarkov3qReduced::evolve: positive horizon and stride required");
  const int n_steps = std::max(1, static_cast<int>(std::llround(t_max / dt_out)));
  Eigen::MatrixXd propagator = (rate_ * dt_out).exp();

  Series series;
  series.times.reserve(n_steps + 1);
  series.coeffs.reserve(n_steps + 1);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(64);
  c(0) = 1.0;
  series.times.push_back(0.0);
  series.coeffs.push_back(c);
  for (int k = 1; k <= n_steps; ++k) {
    c = propagator * c;
    series.times.push_back(k * dt_out);
    series.coeffs.push_back(c);
  }
  return series;
}

Mat NonMarkov3qReduced::system_state(const Eigen::VectorXd& c) const {
  Mat joint = joint_state(c);
  return partial_trace(joint, {2, 2, 2, 2, 2, 2}, {0, 1, 2});
}

Mat NonMarkov3qReduced::joint_state(const Eigen::VectorXd& c) const {
  Mat joint = Mat::Zero(64, 64);
  for (int k = 0; k < 64; ++k) joint += c(k) * basis_[k];
  return joint;
}

Eigen::VectorXd NonMarkov3qReduced::project(const Mat& joint) const {
  Eigen::VectorXd c(64);
  for (int j = 0; j < 64; ++j)
    c(j) = ((basis_[j].adjoint() * joint).trace() / basis_sq_norm_[j]).real();
  return c;
}

}  // namespace ctqec
