#pragma once

#include <array>
#include <vector>

#include "ctqec/density_matrix.hpp"
#include "ctqec/kraus.hpp"
#include "ctqec/linalg.hpp"
#include "ctqec/pauli.hpp"

namespace ctqec {

/// Stabilizer code data: generators, codewords, code-space projector, and the
/// unitary that maps the physical basis to the encoded (logical x syndrome)
/// basis. For the trivial single-qubit code the basis unitary is the identity
/// and the "code space" is span{|0>}.
struct CodeSpec {
  int n_qubits = 0;
  int logical_dim = 1;   // dimension of the protected factor in the encoded basis
  int syndrome_dim = 1;  // dimension of the syndrome factor
  std::vector<PauliString> stabilizer_generators;
  Vec logical_zero;
  Vec logical_one;  // empty for the trivial code
  Mat code_projector;  // Pi_c in the physical basis
  Mat basis_unitary;   // U: physical -> encoded, identity for the trivial code

  int dim() const { return static_cast<int>(code_projector.rows()); }
  bool is_bitflip() const { return n_qubits == 3; }
};

/// Single qubit protecting the known state |0>; stabilizer Z.
CodeSpec trivial_code();

/// Three-qubit bit-flip code with stabilizer generators IZZ and ZZI,
/// codewords |000> and |111>. The basis unitary is Uc * CX12 * CX13 with
/// Uc = X (x) |11><11| + I (x) (I - |11><11|).
CodeSpec bitflip_code();

/// U E U^dag for each error operator.
std::vector<Mat> transform_errors(const CodeSpec& code, const std::vector<Mat>& errors);

/// Inverse of transform_errors.
std::vector<Mat> untransform_errors(const CodeSpec& code, const std::vector<Mat>& errors);

/// Ladder operators on the qubit subspace spanned by the trivial syndrome
/// |0_s> and one nontrivial syndrome |j_s>, tensored with identity on the
/// logical factor. The operators are the traceless generators
///   X_js = |j_s><0_s| + |0_s><j_s|,   Y_js = i|j_s><0_s| - i|0_s><j_s|,
/// zero on the complement, so a sum over syndromes acts trivially outside the
/// addressed subspaces. Index 0..2 corresponds to the syndrome states
/// |1_s>=|10>, |2_s>=|01>, |3_s>=|11>.
struct SyndromeOps {
  std::array<Mat, 3> x_enc;   // encoded basis
  std::array<Mat, 3> y_enc;
  std::array<Mat, 3> proj_enc;  // projector onto span{|0_s>,|j_s>} (x) I_logical
  std::array<Mat, 3> x_orig;  // physical basis: U^dag O U
  std::array<Mat, 3> y_orig;
  std::array<Mat, 3> proj_orig;
};

SyndromeOps syndrome_ops(const CodeSpec& code);

/// Unitary recoverability of an error map: each Kraus operator, conjugated
/// into the encoded basis and restricted to the code space, must factor as
/// identity on the logical subsystem times an arbitrary map on the rest.
/// Tested numerically: the restriction, reshaped across the logical/rest cut,
/// must be rank one with left factor proportional to the identity.
struct RecoverabilityResult {
  bool recoverable = false;
  Mat witness_unitary;  // the code's basis unitary when recoverable
  double max_residual = 0.0;
};

RecoverabilityResult check_unitarily_recoverable(const KrausMap& map, const CodeSpec& code);

/// Tr(Pi_c rho): overlap with the code space.
double code_space_fidelity(const Mat& rho, const CodeSpec& code);
double code_space_fidelity(const DensityMatrix& rho, const CodeSpec& code);

/// <psi_bar| rho |psi_bar>: overlap with a specific encoded state.
double codeword_fidelity(const Mat& rho, const Vec& psi_bar);
double codeword_fidelity(const DensityMatrix& rho, const Vec& psi_bar);

}  // namespace ctqec
