#include "ctqec/code.hpp"

#include <stdexcept>

namespace ctqec {

namespace {

// Controlled-X on n qubits, control c, target t (0-based, qubit 0 most
// significant). Permutation of computational basis states.
Mat controlled_x(int n_qubits, int control, int target) {
  const int d = 1 << n_qubits;
  Mat u = Mat::Zero(d, d);
  const int cm = 1 << (n_qubits - 1 - control);
  const int tm = 1 << (n_qubits - 1 - target);
  for (int k = 0; k < d; ++k) {
    int out = (k & cm) ? (k ^ tm) : k;
    u(out, k) = 1.0;
  }
  return u;
}

}  // namespace

CodeSpec trivial_code() {
  CodeSpec code;
  code.n_qubits = 1;
  code.logical_dim = 1;
  code.syndrome_dim = 2;
  code.stabilizer_generators = {PauliString::parse("Z")};
  code.logical_zero = basis_vec(2, 0);
  code.code_projector = projector(code.logical_zero);
  code.basis_unitary = Mat::Identity(2, 2);
  return code;
}

CodeSpec bitflip_code() {
  CodeSpec code;
  code.n_qubits = 3;
  code.logical_dim = 2;
  code.syndrome_dim = 4;
  code.stabilizer_generators = {PauliString::parse("IZZ"), PauliString::parse("ZZI")};
  code.logical_zero = basis_vec(8, 0);  // |000>
  code.logical_one = basis_vec(8, 7);   // |111>
  code.code_projector = projector(code.logical_zero) + projector(code.logical_one);

  // Uc = X (x) |11><11| + I (x) (I4 - |11><11|) on (qubit1) x (qubits 2,3)
  Mat p11 = projector(basis_vec(4, 3));
  Mat uc = tensor(pauli_matrix(Pauli::X), p11) +
           tensor(pauli_matrix(Pauli::I), Mat::Identity(4, 4) - p11);
  code.basis_unitary = uc * controlled_x(3, 0, 1) * controlled_x(3, 0, 2);
  return code;
}

std::vector<Mat> transform_errors(const CodeSpec& code, const std::vector<Mat>& errors) {
  std::vector<Mat> out;
  out.reserve(errors.size());
  const Mat& u = code.basis_unitary;
  for (const Mat& e : errors) {
    if (e.rows() != code.dim() || e.cols() != code.dim())
      throw std::domain_error("transform_errors: dimension mismatch");
    out.push_back(u * e * u.adjoint());
  }
  return out;
}

std::vector<Mat> untransform_errors(const CodeSpec& code, const std::vector<Mat>& errors) {
  std::vector<Mat> out;
  out.reserve(errors.size());
  const Mat& u = code.basis_unitary;
  for (const Mat& e : errors) {
    if (e.rows() != code.dim() || e.cols() != code.dim())
      throw std::domain_error("untransform_errors: dimension mismatch");
    out.push_back(u.adjoint() * e * u);
  }
  return out;
}

// Syndrome states on the two syndrome qubits: |1_s>=|10|, |2_s>=|01>, |3_s>=|11>.
static constexpr int kSyndromeIndex[3] = {2, 1, 3};

SyndromeOps syndrome_ops(const CodeSpec& code) {
  if (!code.is_bitflip())
    throw std::domain_error("syndrome_ops: defined for the bit-flip code");
  SyndromeOps ops;
  const Mat id_logical = Mat::Identity(2, 2);
  const Vec s0 = basis_vec(4, 0);
  for (int j = 0; j < 3; ++j) {
    const Vec sj = basis_vec(4, kSyndromeIndex[j]);
    Mat ladder_x = sj * s0.adjoint() + s0 * sj.adjoint();
    Mat ladder_y = Complex(0, 1) * (sj * s0.adjoint() - s0 * sj.adjoint());
    Mat sub_proj = projector(s0) + projector(sj);
    ops.x_enc[j] = tensor(id_logical, ladder_x);
    ops.y_enc[j] = tensor(id_logical, ladder_y);
    ops.proj_enc[j] = tensor(id_logical, sub_proj);
    const Mat& u = code.basis_unitary;
    ops.x_orig[j] = u.adjoint() * ops.x_enc[j] * u;
    ops.y_orig[j] = u.adjoint() * ops.y_enc[j] * u;
    ops.proj_orig[j] = u.adjoint() * ops.proj_enc[j] * u;
  }
  return ops;
}

RecoverabilityResult check_unitarily_recoverable(const KrausMap& map, const CodeSpec& code) {
  if (map.in_dim() != code.dim() || map.out_dim() != code.dim())
    throw std::domain_error("check_unitarily_recoverable: dimension mismatch");
  const int da = code.logical_dim;
  const int ds = code.syndrome_dim;

  // Injection of the code space into the full space, in the encoded basis:
  // logical index a goes to encoded index a*ds + 0.
  Mat inject = Mat::Zero(da * ds, da);
  for (int a = 0; a < da; ++a) inject(a * ds, a) = 1.0;

  // Normalized vectorization of the logical identity.
  Vec vec_id = Vec::Zero(da * da);
  for (int a = 0; a < da; ++a) vec_id(a * da + a) = 1.0;
  vec_id /= vec_id.norm();

  RecoverabilityResult result;
  result.witness_unitary = code.basis_unitary;
  double worst = 0.0;
  for (const Mat& m : map.ops()) {
    Mat restricted = code.basis_unitary * m * code.basis_unitary.adjoint() * inject;
    // G[(a_out, a_in), s_out] must equal vec(I) * c^T for some syndrome vector c.
    Mat g(da * da, ds);
    for (int a_out = 0; a_out < da; ++a_out)
      for (int s_out = 0; s_out < ds; ++s_out)
        for (int a_in = 0; a_in < da; ++a_in)
          g(a_out * da + a_in, s_out) = restricted(a_out * ds + s_out, a_in);
    Mat residual = g - vec_id * (vec_id.adjoint() * g);
    worst = std::max(worst, residual.norm());
  }
  result.max_residual = worst;
  result.recoverable = worst < 1e-9;
  return result;
}

double code_space_fidelity(const Mat& rho, const CodeSpec& code) {
  if (rho.rows() != code.dim())
    throw std::domain_error("code_space_fidelity: dimension mismatch");
  return (code.code_projector * rho).trace().real();
}

double code_space_fidelity(const DensityMatrix& rho, const CodeSpec& code) {
  return code_space_fidelity(rho.matrix(), code);
}

double codeword_fidelity(const Mat& rho, const Vec& psi_bar) {
  return state_fidelity(rho, psi_bar);
}

double codeword_fidelity(const DensityMatrix& rho, const Vec& psi_bar) {
  return state_fidelity(rho.matrix(), psi_bar);
}

}  // namespace ctqec
