#pragma once

#include <vector>

#include "ctqec/linalg.hpp"

namespace ctqec {

/// Exact reduction of the six-qubit joint evolution: three code qubits, each
/// coupled to its own maximally mixed bath qubit through gamma X (x) X, with
/// continuous correction of the bit-flip code at rate kappa. Starting from
/// |000><000| (x) (I/2)^3 the joint density matrix stays inside the real span
/// of the 64 operators
///   v_k = (-i)^(l+m+n) (i)^(p+q+r)
///         X1^l X2^m X3^n |000><000| X1^p X2^q X3^r (x) X^(l+p)/2 (x) X^(m+q)/2 (x) X^(n+r)/2,
/// so the full dynamics becomes a real linear ODE on the 64 coefficients.
/// The rate matrix is extracted numerically from the joint generator and the
/// propagation over an output stride uses its matrix exponential, making the
/// stride points exact up to roundoff.
class NonMarkov3qReduced {
 public:
  NonMarkov3qReduced(double kappa, double gamma);

  struct Series {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> coeffs;
  };

  /// Coefficients on the uniform grid {0, dt_out, ..., ~t_max} starting from
  /// the codeword initial condition (coefficient vector e_0).
  Series evolve(double t_max, double dt_out) const;

  /// Coefficient 0 is the codeword-fidelity coefficient.
  static double codeword_coefficient(const Eigen::VectorXd& c) { return c(0); }

  /// Reduced 8x8 system state (baths traced out).
  Mat system_state(const Eigen::VectorXd& c) const;

  /// Full 64-dim joint state; used for cross checks against the direct
  /// integration of the joint master equation.
  Mat joint_state(const Eigen::VectorXd& c) const;

  /// Coefficient vector of a joint state lying in the span.
  Eigen::VectorXd project(const Mat& joint) const;

  const Eigen::MatrixXd& rate_matrix() const { return rate_; }

  /// Largest out-of-span residual and imaginary coefficient seen while
  /// deriving the rate matrix; both vanish when the span is exactly invariant.
  double derivation_residual() const { return derivation_residual_; }

 private:
  double kappa_;
  double gamma_;
  std::vector<Mat> basis_;       // 64 joint operators
  std::vector<double> basis_sq_norm_;
  Eigen::MatrixXd rate_;
  double derivation_residual_ = 0.0;
};

}  // namespace ctqec
