#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ctqec {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Kronecker product with `a` as the most significant factor: qubit 1 of a
/// multi-qubit operator label is the leftmost tensor factor.
Mat tensor(const Mat& a, const Mat& b);
Mat tensor(const std::vector<Mat>& factors);
Vec tensor(const Vec& a, const Vec& b);

/// Computational basis column vector |k> in the given dimension.
Vec basis_vec(int dim, int k);

/// Rank-one projector |v><v|.
Mat projector(const Vec& v);

/// Trace out all subsystems not listed in `keep` (0-based indices into
/// `dims`). The kept factors stay in their original relative order.
Mat partial_trace(const Mat& rho, const std::vector<int>& dims,
                  const std::vector<int>& keep);

/// (a + a^dag)/2
Mat hermitize(const Mat& a);

Mat commutator(const Mat& a, const Mat& b);

/// exp(i * angle * h) for Hermitian h, via spectral decomposition.
Mat expi_hermitian(const Mat& h, double angle = 1.0);

/// Principal square root of a positive-semidefinite Hermitian matrix.
/// Small negative eigenvalues (roundoff) are clamped to zero.
Mat sqrtm_psd(const Mat& a);

double min_eigenvalue_hermitian(const Mat& h);

/// Sum of singular values.
double trace_norm(const Mat& a);

double max_abs(const Mat& a);

}  // namespace ctqec
