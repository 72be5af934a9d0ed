#include "ctqec/density_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace ctqec {

NumericsConfig& numerics() {
  static NumericsConfig config;
  return config;
}

bool DensityDiagnostics::ok(double psd_tol) const {
  const auto& cfg = numerics();
  return herm_residual <= cfg.herm_tol && trace_residual <= cfg.trace_tol &&
         min_eigenvalue >= -psd_tol;
}

bool DensityDiagnostics::ok() const { return ok(numerics().psd_tol); }

DensityDiagnostics check_density(const Mat& rho) {
  DensityDiagnostics d;
  d.herm_residual = max_abs(rho - rho.adjoint());
  d.trace_residual = std::abs(rho.trace() - Complex(1.0, 0.0));
  d.min_eigenvalue = min_eigenvalue_hermitian(hermitize(rho));
  return d;
}

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

void require_dims(const std::vector<int>& dims, Eigen::Index n) {
  if (dims.empty()) throw std::invalid_argument("DensityMatrix: no subsystems");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("DensityMatrix: subsystem dim < 2");
  if (product(dims) != n)
    throw std::invalid_argument("DensityMatrix: dims do not match matrix size");
}

}  // namespace

DensityMatrix::DensityMatrix(std::vector<int> dims, Mat data) {
  if (data.rows() != data.cols())
    throw std::invalid_argument("DensityMatrix: matrix not square");
  require_dims(dims, data.rows());
  DensityDiagnostics d = check_density(data);
  if (!d.ok()) {
    std::ostringstream msg;
    msg << "DensityMatrix: invalid state (herm=" << d.herm_residual
        << ", trace=" << d.trace_residual << ", min_eig=" << d.min_eigenvalue
        << ")";
    throw std::invalid_argument(msg.str());
  }
  dims_ = std::move(dims);
  data_ = std::move(data);
}

DensityMatrix DensityMatrix::unchecked(std::vector<int> dims, Mat data) {
  if (data.rows() != data.cols())
    throw std::invalid_argument("DensityMatrix: matrix not square");
  require_dims(dims, data.rows());
  DensityMatrix rho;
  rho.dims_ = std::move(dims);
  rho.data_ = std::move(data);
  return rho;
}

DensityMatrix DensityMatrix::pure(std::vector<int> dims, const Vec& psi) {
  double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("DensityMatrix::pure: state not normalized");
  return DensityMatrix(std::move(dims), projector(psi));
}

DensityMatrix DensityMatrix::basis_state(std::vector<int> dims, int index) {
  int d = product(dims);
  return DensityMatrix(std::move(dims), projector(basis_vec(d, index)));
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<int> dims) {
  int d = product(dims);
  return DensityMatrix(std::move(dims), Mat::Identity(d, d) / static_cast<double>(d));
}

double state_fidelity(const Mat& rho, const Vec& psi) {
  if (psi.size() != rho.rows())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

double state_fidelity(const DensityMatrix& rho, const Vec& psi) {
  return state_fidelity(rho.matrix(), psi);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  Mat reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  std::vector<int> kept_dims;
  for (int k : keep) kept_dims.push_back(rho.dims()[k]);
  return DensityMatrix::unchecked(std::move(kept_dims), std::move(reduced));
}

}  // namespace ctqec
