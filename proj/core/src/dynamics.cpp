#include "ctqec/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctqec {

Mat lindblad_apply(const LindbladGenerator& gen, const Mat& rho) {
  if (rho.rows() != gen.dim() || rho.cols() != gen.dim())
    throw std::domain_error("lindblad_apply: dimension mismatch");
  Mat out = Complex(0, -1) * commutator(gen.hamiltonian, rho);
  for (const LindbladChannel& ch : gen.channels) {
    if (ch.rate < 0.0) throw std::domain_error("lindblad_apply: negative rate");
    const Mat& l = ch.op;
    Mat ldl = l.adjoint() * l;
    out += 0.5 * ch.rate * (2.0 * l * rho * l.adjoint() - ldl * rho - rho * ldl);
  }
  return out;
}

LindbladGenerator bitflip_lindblad(int n_qubits, const std::vector<double>& rates) {
  if (n_qubits < 1) throw std::domain_error("bitflip_lindblad: need at least one qubit");
  if (static_cast<int>(rates.size()) != n_qubits)
    throw std::domain_error("bitflip_lindblad: one rate per qubit required");
  const int d = 1 << n_qubits;
  LindbladGenerator gen;
  gen.hamiltonian = Mat::Zero(d, d);
  for (int j = 0; j < n_qubits; ++j) {
    if (rates[j] < 0.0) throw std::domain_error("bitflip_lindblad: negative rate");
    std::string label(n_qubits, 'I');
    label[j] = 'X';
    gen.channels.push_back({rates[j], PauliString::parse(label).matrix()});
  }
  return gen;
}

LindbladGenerator joint_bath_generator(double gamma, int n_pairs) {
  if (n_pairs < 1) throw std::domain_error("joint_bath_generator: need at least one pair");
  const int n = 2 * n_pairs;
  const int d = 1 << n;
  LindbladGenerator gen;
  gen.hamiltonian = Mat::Zero(d, d);
  for (int i = 0; i < n_pairs; ++i) {
    std::string label(n, 'I');
    label[i] = 'X';            // system qubit i
    label[n_pairs + i] = 'X';  // its bath qubit
    gen.hamiltonian += gamma * PauliString::parse(label).matrix();
  }
  return gen;
}

JumpCorrection::JumpCorrection(KrausMap recovery, double rate)
    : recovery_(std::move(recovery)), rate_(rate) {
  if (rate < 0.0) throw std::domain_error("JumpCorrection: negative rate");
  if (!recovery_.is_cptp())
    throw std::invalid_argument("JumpCorrection: recovery map is not CPTP");
}

Mat jump_apply(const JumpCorrection& jump, const Mat& rho) {
  return jump.rate() * (apply_kraus(jump.recovery(), rho) - rho);
}

const std::array<BitflipSyndromeEntry, 4>& bitflip_syndrome_table() {
  // Syndrome factor states: |00>=0 trivial, |11>=3 <-> XII, |10>=2 <-> IXI,
  // |01>=1 <-> IIX. Stabilizer eigenvalue signs are for (IZZ, ZZI).
  static const std::array<BitflipSyndromeEntry, 4> table = {{
      {0, +1, +1, "III"},
      {3, +1, -1, "XII"},
      {2, -1, -1, "IXI"},
      {1, -1, +1, "IIX"},
  }};
  return table;
}

KrausMap strong_recovery(const CodeSpec& code) {
  std::vector<Mat> ops;
  if (code.n_qubits == 1) {
    // Measure Z; flip on |1>. Kraus form Pi_c * E for E in {I, X}.
    ops.push_back(code.code_projector);
    ops.push_back(code.code_projector * pauli_matrix(Pauli::X));
  } else if (code.is_bitflip()) {
    for (const auto& entry : bitflip_syndrome_table())
      ops.push_back(code.code_projector * PauliString::parse(entry.correction).matrix());
  } else {
    throw std::domain_error("strong_recovery: unsupported code");
  }
  return KrausMap(std::move(ops));
}

double weak_jump_epsilon_prime(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("weak_jump_epsilon_prime: eps must be in (0,1)");
  return (1.0 - std::sqrt(1.0 - eps * eps)) / eps;
}

KrausMap weak_jump_map(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("weak_jump_map: eps must be in (0,1)");
  const double ep = weak_jump_epsilon_prime(eps);
  const double norm = std::sqrt(1.0 + ep * ep);
  const Mat id = Mat::Identity(2, 2);
  const Mat& x = pauli_matrix(Pauli::X);
  const Mat& y = pauli_matrix(Pauli::Y);
  // sqrt((I +- eps X)/2) = a I +- b X
  const double a = 0.5 * (std::sqrt((1.0 + eps) / 2.0) + std::sqrt((1.0 - eps) / 2.0));
  const double b = 0.5 * (std::sqrt((1.0 + eps) / 2.0) - std::sqrt((1.0 - eps) / 2.0));
  Mat rot_plus = (id + Complex(0, 1) * ep * y) / norm;
  Mat rot_minus = (id - Complex(0, 1) * ep * y) / norm;
  return KrausMap({rot_plus * (a * id + b * x), rot_minus * (a * id - b * x)});
}

AncillaWeakMeasurement weak_x_measurement_via_ancilla(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("weak_x_measurement_via_ancilla: eps must be positive");
  AncillaWeakMeasurement meas;
  meas.eps = eps;
  // System is the most significant factor; ancilla starts in |+>.
  Mat coupling = tensor(pauli_matrix(Pauli::X), pauli_matrix(Pauli::Y));
  Mat u = expi_hermitian(coupling, eps / 2.0);
  Vec plus = (basis_vec(2, 0) + basis_vec(2, 1)) / std::sqrt(2.0);
  for (int b = 0; b < 2; ++b) {
    Mat k = Mat::Zero(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a) k(r, c) += u(r * 2 + b, c * 2 + a) * plus(a);
    meas.kraus[b] = k;
  }
  return meas;
}

std::array<double, 2> AncillaWeakMeasurement::probabilities(const Mat& rho) const {
  std::array<double, 2> p{};
  for (int b = 0; b < 2; ++b)
    p[b] = (kraus[b] * rho * kraus[b].adjoint()).trace().real();
  return p;
}

WeakMeasurement weak_z_measurement(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("weak_z_measurement: eps must be positive");
  WeakMeasurement m;
  m.eps = eps;
  m.m_plus = z_measurement_operator(eps);
  m.m_minus = z_measurement_operator(-eps);
  return m;
}

Mat z_measurement_operator(double x) {
  const double t = std::tanh(x);
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = std::sqrt((1.0 + t) / 2.0);
  m(1, 1) = std::sqrt((1.0 - t) / 2.0);
  return m;
}

Mat dissipator(const Mat& a, const Mat& rho) {
  Mat ada = a.adjoint() * a;
  return a * rho * a.adjoint() - 0.5 * (ada * rho + rho * ada);
}

Mat innovation(const Mat& a, const Mat& rho) {
  Mat drift = a * rho + rho * a.adjoint();
  return drift - drift.trace().real() * rho;
}

AdlSuperops adl_superops(const Mat& a, const Mat& rho) {
  if (a.rows() != rho.rows() || a.cols() != rho.cols())
    throw std::domain_error("adl_superops: dimension mismatch");
  return {dissipator(a, rho), innovation(a, rho)};
}

std::vector<double> adl_feedback(const FeedbackLaw& law, const Mat& rho_estimate) {
  std::vector<double> strengths;
  strengths.reserve(law.hamiltonians.size());
  for (const Mat& h : law.hamiltonians) {
    // Tr([Pi_c, H] rho) is purely imaginary; its imaginary part is the
    // instantaneous gain d/dt Tr(Pi_c rho) per unit drive strength.
    Complex t = (commutator(law.code_projector, h) * rho_estimate).trace();
    double tau = t.imag();
    if (std::abs(tau) < law.dead_zone)
      strengths.push_back(0.0);
    else
      strengths.push_back(tau > 0.0 ? law.max_strength : -law.max_strength);
  }
  return strengths;
}

SimultaneousSyndromeScheme::SimultaneousSyndromeScheme(const CodeSpec& code, double eps)
    : eps_(eps) {
  if (!code.is_bitflip())
    throw std::domain_error("SimultaneousSyndromeScheme: bit-flip code required");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("SimultaneousSyndromeScheme: eps must be in (0,1)");
  SyndromeOps ops = syndrome_ops(code);

  // Coupling between the system and three ancilla qubits in |+>, one per
  // nontrivial syndrome; ancilla 0 is the most significant ancilla factor.
  Mat h = Mat::Zero(64, 64);
  for (int j = 0; j < 3; ++j) {
    std::string label(3, 'I');
    label[j] = 'Y';
    h += tensor(ops.x_orig[j], PauliString::parse(label).matrix());
  }
  Mat u = expi_hermitian(h, eps / 2.0);

  Vec plus3 = Vec::Constant(8, 1.0 / std::sqrt(8.0));
  const double theta = std::atan(weak_jump_epsilon_prime(eps));
  for (int out = 0; out < 8; ++out) {
    Mat k = Mat::Zero(8, 8);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c)
        for (int a = 0; a < 8; ++a) k(r, c) += u(r * 8 + out, c * 8 + a) * plus3(a);
    kraus_[out] = k;
    Mat hfb = Mat::Zero(8, 8);
    auto signs = xi(out);
    for (int j = 0; j < 3; ++j) hfb += static_cast<double>(signs[j]) * ops.y_orig[j];
    feedback_[out] = expi_hermitian(hfb, theta);
  }
}

std::array<int, 3> SimultaneousSyndromeScheme::xi(int outcome) const {
  std::array<int, 3> signs{};
  for (int j = 0; j < 3; ++j) signs[j] = ((outcome >> (2 - j)) & 1) ? -1 : +1;
  return signs;
}

Mat SimultaneousSyndromeScheme::averaged(const Mat& rho) const {
  Mat out = Mat::Zero(8, 8);
  for (int o = 0; o < 8; ++o) {
    Mat branch = kraus_[o] * rho * kraus_[o].adjoint();
    out += feedback_[o] * branch * feedback_[o].adjoint();
  }
  return out;
}

std::pair<int, Mat> SimultaneousSyndromeScheme::sample(const Mat& rho, CounterRng& rng) const {
  std::array<double, 8> p{};
  double total = 0.0;
  for (int o = 0; o < 8; ++o) {
    p[o] = (kraus_[o] * rho * kraus_[o].adjoint()).trace().real();
    total += p[o];
  }
  double draw = rng.uniform01() * total;
  int outcome = 7;
  double acc = 0.0;
  for (int o = 0; o < 8; ++o) {
    acc += p[o];
    if (draw <= acc) {
      outcome = o;
      break;
    }
  }
  Mat post = kraus_[outcome] * rho * kraus_[outcome].adjoint();
  post = feedback_[outcome] * post * feedback_[outcome].adjoint();
  post /= post.trace().real();
  return {outcome, std::move(post)};
}

std::pair<std::array<int, 3>, DensityMatrix> simultaneous_syndrome_step(
    const CodeSpec& code, const DensityMatrix& rho, double eps, CounterRng& rng) {
  SimultaneousSyndromeScheme scheme(code, eps);
  auto [outcome, post] = scheme.sample(rho.matrix(), rng);
  return {scheme.xi(outcome), DensityMatrix::unchecked(rho.dims(), std::move(post))};
}

DensityMatrix averaged_simultaneous_step(const CodeSpec& code, const DensityMatrix& rho,
                                         double eps) {
  SimultaneousSyndromeScheme scheme(code, eps);
  return DensityMatrix::unchecked(rho.dims(), scheme.averaged(rho.matrix()));
}

KrausMap subspace_weak_jump_map(const CodeSpec& code, int syndrome_index, double eps) {
  if (syndrome_index < 0 || syndrome_index > 2)
    throw std::domain_error("subspace_weak_jump_map: syndrome index out of range");
  SyndromeOps ops = syndrome_ops(code);
  const Mat& x = ops.x_orig[syndrome_index];
  const Mat& y = ops.y_orig[syndrome_index];
  const Mat id = Mat::Identity(code.dim(), code.dim());
  const double theta = std::atan(weak_jump_epsilon_prime(eps));
  Mat m_plus = sqrtm_psd(0.5 * (id + eps * x));
  Mat m_minus = sqrtm_psd(0.5 * (id - eps * x));
  return KrausMap({expi_hermitian(y, theta) * m_plus, expi_hermitian(y, -theta) * m_minus});
}

}  // namespace ctqec
