#include <doctest.h>

#include "ctqec/analytic.hpp"
#include "ctqec/density_matrix.hpp"
#include "ctqec/dynamics.hpp"
#include "ctqec/integrators.hpp"
#include "ctqec/kraus.hpp"
#include "ctqec/pauli.hpp"
#include "test_util.hpp"

using namespace ctqec;
using test::max_diff;

namespace {

// Independent contraction oracle for two-qubit partial traces: explicit index
// sums, no shared code with the library implementation.
Mat brute_force_trace_second(const Mat& rho) {
  Mat out = Mat::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out(i, j) += rho(2 * i + k, 2 * j + k);
  return out;
}

KrausMap random_cptp(int dim, int n_ops, CounterRng& rng) {
  std::vector<Mat> ops;
  Mat sum = Mat::Zero(dim, dim);
  for (int k = 0; k < n_ops; ++k) {
    ops.push_back(test::random_complex(dim, dim, rng));
    sum += ops.back().adjoint() * ops.back();
  }
  // Normalize: K -> K S^{-1/2} restores the completeness sum.
  Eigen::SelfAdjointEigenSolver<Mat> es(sum);
  Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  Mat s_inv_sqrt = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
  for (Mat& k : ops) k = k * s_inv_sqrt;
  return KrausMap(std::move(ops));
}

}  // namespace

TEST_CASE("tensor basics") {
  const Mat id2 = Mat::Identity(2, 2);
  CHECK(max_diff(tensor(id2, id2), Mat::Identity(4, 4)) == 0.0);

  const Mat& x = pauli_matrix(Pauli::X);
  Vec ket00 = tensor(basis_vec(2, 0), basis_vec(2, 0));
  Vec ket11 = tensor(basis_vec(2, 1), basis_vec(2, 1));
  CHECK((tensor(x, x) * ket00 - ket11).norm() == doctest::Approx(0.0));

  // ZZ as a product of one-sided embeddings, checked by direct 4x4 multiply.
  const Mat& z = pauli_matrix(Pauli::Z);
  Mat product = tensor(z, id2) * tensor(id2, z);
  CHECK(max_diff(product, PauliString::parse("ZZ").matrix()) < 1e-15);
}

TEST_CASE("tensor is associative on random factors") {
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a = test::random_complex(2, 2, rng);
    Mat b = test::random_complex(2, 2, rng);
    Mat c = test::random_complex(2, 2, rng);
    CHECK(max_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-15);
  }
}

TEST_CASE("partial trace on product and entangled states") {
  DensityMatrix rho00 = DensityMatrix::basis_state({2, 2}, 0);
  DensityMatrix reduced = partial_trace(rho00, {0});
  CHECK(max_diff(reduced.matrix(), projector(basis_vec(2, 0))) < 1e-15);

  Vec bell = (tensor(basis_vec(2, 0), basis_vec(2, 0)) +
              tensor(basis_vec(2, 1), basis_vec(2, 1))) /
             std::sqrt(2.0);
  DensityMatrix rho_bell = DensityMatrix::pure({2, 2}, bell);
  CHECK(max_diff(partial_trace(rho_bell, {0}).matrix(), Mat::Identity(2, 2) / 2.0) < 1e-15);
}

TEST_CASE("partial trace against brute-force contraction oracle") {
  CounterRng rng(12, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Mat sys = test::random_density(2, rng);
    Mat joint = tensor(sys, Mat::Identity(2, 2) / 2.0);
    Mat expected = brute_force_trace_second(joint);
    CHECK(max_diff(partial_trace(joint, {2, 2}, {0}), expected) < 1e-14);
    CHECK(max_diff(partial_trace(joint, {2, 2}, {0}), sys) < 1e-12);
  }
}

TEST_CASE("partial trace rejects invalid index sets") {
  Mat rho = Mat::Identity(4, 4) / 4.0;
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {2}), std::domain_error);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {0, 0}), std::domain_error);
}

TEST_CASE("partial trace of tensor products returns the left factor") {
  CounterRng rng(13, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = test::random_density(2, rng);
    Mat b = test::random_density(4, rng);
    CHECK(max_diff(partial_trace(tensor(a, b), {2, 4}, {0}), a) < 1e-12);
    CHECK(max_diff(partial_trace(tensor(a, b), {2, 4}, {1}), b) < 1e-12);
  }
}

TEST_CASE("apply_kraus identity and strong recovery examples") {
  CounterRng rng(14, 0);
  Mat rho = test::random_density(2, rng);
  KrausMap identity({Mat::Identity(2, 2)});
  CHECK(max_diff(apply_kraus(identity, rho), rho) == 0.0);

  KrausMap recovery = strong_recovery(trivial_code());
  CHECK(recovery.is_cptp());
  Mat one = projector(basis_vec(2, 1));
  CHECK(max_diff(apply_kraus(recovery, one), projector(basis_vec(2, 0))) < 1e-15);

  // R(I/2): summing the two Kraus terms by hand gives |0><0|.
  CHECK(max_diff(apply_kraus(recovery, Mat::Identity(2, 2) / 2.0),
                 projector(basis_vec(2, 0))) < 1e-15);
}

TEST_CASE("apply_kraus rejects mismatched dimensions") {
  KrausMap identity({Mat::Identity(2, 2)});
  CHECK_THROWS_AS(apply_kraus(identity, Mat::Identity(4, 4)), std::domain_error);
}

TEST_CASE("state fidelity") {
  Vec ket0 = basis_vec(2, 0);
  CHECK(state_fidelity(projector(ket0), ket0) == doctest::Approx(1.0));
  CHECK(state_fidelity(Mat::Identity(2, 2) / 2.0, ket0) == doctest::Approx(0.5));
  // The closed-form fidelity at t = 0 equals the pure initial condition.
  CHECK(markov_1q_alpha(0.0, 3.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("check_density diagnostics") {
  DensityDiagnostics good = check_density(Mat(Mat::Identity(2, 2) / 2.0));
  CHECK(good.herm_residual <= 1e-12);
  CHECK(good.trace_residual <= 1e-10);
  CHECK(good.min_eigenvalue >= -1e-9);
  CHECK(good.ok());

  DensityDiagnostics bad = check_density(Mat(0.9 * Mat::Identity(2, 2) / 2.0));
  CHECK(bad.trace_residual == doctest::Approx(0.1));
  CHECK_FALSE(bad.ok());
}

TEST_CASE("densities stay valid over a long integration") {
  SimConfig config;
  config.kappa = 3.0;
  config.lambda = 1.0;
  config.dt = 0.01 / 3.0;
  config.t_max = 100000 * config.dt;
  config.store_stride = 10000;
  std::vector<Generator> gens;
  LindbladGenerator noise = bitflip_lindblad(1, {config.lambda});
  JumpCorrection jump(strong_recovery(trivial_code()), config.kappa);
  gens.push_back([noise](const Mat& rho) { return lindblad_apply(noise, rho); });
  gens.push_back([jump](const Mat& rho) { return jump_apply(jump, rho); });
  auto record = evolve_deterministic(gens, DensityMatrix::basis_state({2}, 0), config);
  for (const auto& state : record.states) {
    DensityDiagnostics d = check_density(state);
    CHECK(d.herm_residual < 1e-8);
    CHECK(d.trace_residual < 1e-8);
    CHECK(d.min_eigenvalue > -1e-8);
  }
}

TEST_CASE("random CPTP maps preserve density validity") {
  CounterRng rng(15, 0);
  for (int trial = 0; trial < 10; ++trial) {
    KrausMap map = random_cptp(4, 3, rng);
    CHECK(map.is_cptp());
    Mat rho = test::random_density(4, rng);
    DensityDiagnostics d = check_density(apply_kraus(map, rho));
    CHECK(d.ok());
  }
}

TEST_CASE("KrausMap flags non-trace-preserving operator sets") {
  KrausMap half({Mat(0.5 * Mat::Identity(2, 2))});
  CHECK_FALSE(half.is_cptp());
  CHECK(half.completeness_residual() == doctest::Approx(0.75));
}

TEST_CASE("Pauli algebra closes with the right phases") {
  const Pauli symbols[4] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  // sigma_i sigma_j = delta_ij I + i eps_ijk sigma_k, with I absorbing.
  auto expected = [&](int i, int j) -> Mat {
    if (i == 0) return pauli_matrix(symbols[j]);
    if (j == 0) return pauli_matrix(symbols[i]);
    if (i == j) return Mat::Identity(2, 2);
    // remaining index and Levi-Civita sign for (i, j) in {1,2,3}
    int k = 6 - i - j;
    int eps = ((j - i + 3) % 3 == 1) ? 1 : -1;
    return Complex(0, eps) * pauli_matrix(symbols[k]);
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(max_diff(pauli_matrix(symbols[i]) * pauli_matrix(symbols[j]), expected(i, j)) <
            1e-15);
}

TEST_CASE("PauliString realizations with unit coefficient are Hermitian unitaries") {
  for (const char* label : {"X", "IZZ", "ZZI", "XYZ", "YIY"}) {
    for (double sign : {1.0, -1.0}) {
      Mat m = PauliString::parse(label, sign).matrix();
      CHECK(max_diff(m, m.adjoint()) < 1e-15);
      CHECK(max_diff(m * m.adjoint(), Mat::Identity(m.rows(), m.cols())) < 1e-15);
    }
  }
}

TEST_CASE("DensityMatrix constructor validates invariants") {
  CHECK_THROWS_AS(DensityMatrix({2}, Mat(0.9 * Mat::Identity(2, 2) / 2.0)),
                  std::invalid_argument);
  Mat not_hermitian = Mat::Identity(2, 2) / 2.0;
  not_hermitian(0, 1) = Complex(0.1, 0.0);
  CHECK_THROWS_AS(DensityMatrix({2}, not_hermitian), std::invalid_argument);
  Mat not_psd = Mat::Zero(2, 2);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix({2}, not_psd), std::invalid_argument);
}
