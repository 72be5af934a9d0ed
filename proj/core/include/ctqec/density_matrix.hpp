#pragma once

#include <vector>

#include "ctqec/linalg.hpp"
#include "ctqec/numerics.hpp"

namespace ctqec {

/// Validity diagnostics for a candidate density operator. Never mutates the
/// input; callers decide what to do with out-of-tolerance states.
struct DensityDiagnostics {
  double herm_residual = 0.0;   // max entrywise |rho - rho^dag|
  double trace_residual = 0.0;  // |Tr(rho) - 1|
  double min_eigenvalue = 0.0;

  bool ok(double psd_tol) const;
  bool ok() const;  // uses numerics().psd_tol
};

DensityDiagnostics check_density(const Mat& rho);

/// Dense density operator on an ordered list of subsystems. Qubit 1 of an
/// operator label such as XII is the most significant (leftmost) factor.
/// Immutable after construction; safe to share across threads.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace, and positivity against the global
  /// tolerances; throws std::invalid_argument on failure.
  DensityMatrix(std::vector<int> dims, Mat data);

  /// Skips validation. Used on integrator hot paths where the state is
  /// re-hermitized and renormalized explicitly.
  static DensityMatrix unchecked(std::vector<int> dims, Mat data);

  static DensityMatrix pure(std::vector<int> dims, const Vec& psi);
  static DensityMatrix basis_state(std::vector<int> dims, int index);
  static DensityMatrix maximally_mixed(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(data_.rows()); }
  const Mat& matrix() const { return data_; }

 private:
  DensityMatrix() = default;
  std::vector<int> dims_;
  Mat data_;
};

inline DensityDiagnostics check_density(const DensityMatrix& rho) {
  return check_density(rho.matrix());
}

/// <psi| rho |psi> for a normalized pure state.
double state_fidelity(const Mat& rho, const Vec& psi);
double state_fidelity(const DensityMatrix& rho, const Vec& psi);

/// Reduced state on the kept subsystems (0-based, strictly increasing).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

}  // namespace ctqec
