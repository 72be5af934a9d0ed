#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ctqec/code.hpp"
#include "ctqec/density_matrix.hpp"
#include "ctqec/kraus.hpp"
#include "ctqec/linalg.hpp"
#include "ctqec/rng.hpp"

namespace ctqec {

struct LindbladChannel {
  double rate = 0.0;  // 1/time
  Mat op;
};

/// Hamiltonian plus dissipative channels. Generates
///   d(rho)/dt = -i[H,rho] + 1/2 sum_j rate_j (2 L rho L^dag - L^dag L rho - rho L^dag L).
struct LindbladGenerator {
  Mat hamiltonian;
  std::vector<LindbladChannel> channels;

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
};

/// Evaluates the generator; output is Hermitian and traceless. Negative
/// channel rates are rejected.
Mat lindblad_apply(const LindbladGenerator& gen, const Mat& rho);

/// Independent local bit-flip channels X_j at the given rates, H = 0.
LindbladGenerator bitflip_lindblad(int n_qubits, const std::vector<double>& rates);

/// Hamiltonian-only generator H = gamma * sum_i X_i^S (x) X_i^B on the joint
/// (system x bath) register, system qubits first.
LindbladGenerator joint_bath_generator(double gamma, int n_pairs);

/// Weak error correction applied at rate kappa: J(rho) = R(rho) - rho.
class JumpCorrection {
 public:
  JumpCorrection(KrausMap recovery, double rate);
  const KrausMap& recovery() const { return recovery_; }
  double rate() const { return rate_; }

 private:
  KrausMap recovery_;
  double rate_;
};

/// rate * (R(rho) - rho); trace-annihilating.
Mat jump_apply(const JumpCorrection& jump, const Mat& rho);

/// Frozen syndrome table for the bit-flip code: syndrome state on the
/// encoded-basis syndrome factor, stabilizer eigenvalues (IZZ, ZZI), and the
/// Pauli whose application corrects that syndrome. Derived once from the
/// basis-change conjugation of the single-qubit errors and pinned by tests.
struct BitflipSyndromeEntry {
  int syndrome_state;  // index on the 4-dim syndrome factor
  int sign_izz;
  int sign_zzi;
  const char* correction;
};

const std::array<BitflipSyndromeEntry, 4>& bitflip_syndrome_table();

/// Full recovery map R: project each syndrome subspace and apply its
/// correcting Pauli. For the trivial code this is {|0><0|, |0><1|}; for the
/// bit-flip code the four operators Pi_c * E with E in {III, XII, IXI, IIX}.
KrausMap strong_recovery(const CodeSpec& code);

/// epsilon' = (1 - sqrt(1 - eps^2)) / eps; makes |0><0| an exact fixed point
/// of the weak jump map at finite eps.
double weak_jump_epsilon_prime(double eps);

/// Single-qubit weak error-correcting step: weak X measurement of strength
/// eps followed by a conditional weak Y rotation,
///   K_pm = (I pm i eps' Y)/sqrt(1+eps'^2) * sqrt((I pm eps X)/2).
/// CPTP for all eps in (0,1); |0><0| is an exact fixed point. On
///   rho = alpha|0><0| + beta|0><1| + h.c. + (1-alpha)|1><1|
/// one application gives alpha += eps^2 (1-alpha) and beta *= sqrt(1-eps^2).
KrausMap weak_jump_map(double eps);

/// Weak X measurement realized by coupling to an ancilla in |+> via
/// exp(i eps/2 X (x) Y) and measuring the ancilla in the computational basis.
/// The induced system operators match sqrt((I pm eps X)/2) up to O(eps^3).
struct AncillaWeakMeasurement {
  std::array<Mat, 2> kraus;  // index 0: ancilla outcome |0> (xi = +1)
  double eps = 0.0;

  std::array<double, 2> probabilities(const Mat& rho) const;
};

AncillaWeakMeasurement weak_x_measurement_via_ancilla(double eps);

/// Weak Z measurement M_pm = sqrt((I pm tanh(eps) Z)/2). Outcomes accumulate
/// the log-likelihood coordinate x by +-eps; the family composes so the state
/// after net coordinate x is M(x) rho(0) M(x) / norm.
struct WeakMeasurement {
  Mat m_plus;
  Mat m_minus;
  double eps = 0.0;
};

WeakMeasurement weak_z_measurement(double eps);

/// M(x) = sqrt((I + tanh(x) Z)/2).
Mat z_measurement_operator(double x);

/// D[A](rho) = A rho A^dag - (A^dag A rho + rho A^dag A)/2.
Mat dissipator(const Mat& a, const Mat& rho);

/// F[A](rho) = A rho + rho A^dag - rho Tr[A rho + rho A^dag]; vanishes on
/// eigenstates of Hermitian A.
Mat innovation(const Mat& a, const Mat& rho);

struct AdlSuperops {
  Mat d_term;
  Mat f_term;
};

AdlSuperops adl_superops(const Mat& a, const Mat& rho);

enum class EstimatePolicy {
  kTrueState,  // condition feedback on the simulated state itself
  kFiltered,   // condition on a filtered estimate driven by the record
};

/// Bang-bang feedback law: each Hamiltonian H_r is driven with strength
/// lambda * sgn applied to the commutator overlap Tr([Pi_c, H_r] rho), which
/// is purely imaginary for Hermitian arguments; the sign is chosen so the
/// drive increases the code-space fidelity. sgn(0) = 0 below the dead zone.
struct FeedbackLaw {
  std::vector<Mat> hamiltonians;
  double max_strength = 0.0;
  Mat code_projector;
  EstimatePolicy policy = EstimatePolicy::kFiltered;
  double dead_zone = 1e-12;
};

std::vector<double> adl_feedback(const FeedbackLaw& law, const Mat& rho_estimate);

/// Simultaneous weak correction of all three nontrivial syndromes of the
/// bit-flip code: three ancillas in |+> are coupled through
/// exp(i eps/2 sum_j X_js (x) Y_j), each ancilla is measured projectively,
/// and the feedback unitary exp(i theta sum_j xi_j Y_js) with
/// theta = atan(eps'(eps)) is applied, xi_j = +-1 per outcome. The
/// outcome-averaged step reproduces the product of the per-syndrome weak
/// jump maps with the cross couplings cancelling in the average.
class SimultaneousSyndromeScheme {
 public:
  SimultaneousSyndromeScheme(const CodeSpec& code, double eps);

  double eps() const { return eps_; }
  const Mat& measurement_kraus(int outcome) const { return kraus_[outcome]; }
  const Mat& feedback_unitary(int outcome) const { return feedback_[outcome]; }
  std::array<int, 3> xi(int outcome) const;

  /// Sum over all 8 outcomes of feedback * K rho K^dag * feedback^dag.
  Mat averaged(const Mat& rho) const;

  /// Sample one outcome; returns (outcome, normalized post-measurement state
  /// with feedback applied).
  std::pair<int, Mat> sample(const Mat& rho, CounterRng& rng) const;

 private:
  double eps_;
  std::array<Mat, 8> kraus_;
  std::array<Mat, 8> feedback_;
};

std::pair<std::array<int, 3>, DensityMatrix> simultaneous_syndrome_step(
    const CodeSpec& code, const DensityMatrix& rho, double eps, CounterRng& rng);

DensityMatrix averaged_simultaneous_step(const CodeSpec& code,
                                         const DensityMatrix& rho, double eps);

/// The single-syndrome weak jump map embedded in the full space: ladder
/// operators replace X and Y, and the complement of the addressed subspace is
/// left untouched. Composing the three maps gives the sequential reference
/// for the simultaneous scheme.
KrausMap subspace_weak_jump_map(const CodeSpec& code, int syndrome_index, double eps);

}  // namespace ctqec
