#include "ctqec/linalg.hpp"

#include <stdexcept>

namespace ctqec {

Mat tensor(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat tensor(const std::vector<Mat>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor: empty factor list");
  Mat out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

Vec tensor(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vec basis_vec(int dim, int k) {
  if (k < 0 || k >= dim) throw std::invalid_argument("basis_vec: index out of range");
  Vec v = Vec::Zero(dim);
  v(k) = 1.0;
  return v;
}

Mat projector(const Vec& v) { return v * v.adjoint(); }

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

// Decompose a flat index into per-subsystem digits, most significant first.
void decompose(int index, const std::vector<int>& dims, std::vector<int>& out) {
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    out[i] = index % dims[i];
    index /= dims[i];
  }
}

int compose(const std::vector<int>& digits, const std::vector<int>& dims) {
  int index = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) index = index * dims[i] + digits[i];
  return index;
}

}  // namespace

Mat partial_trace(const Mat& rho, const std::vector<int>& dims,
                  const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  if (rho.rows() != rho.cols() || rho.rows() != product(dims))
    throw std::invalid_argument("partial_trace: dims inconsistent with matrix size");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::domain_error("partial_trace: invalid subsystem index");
    if (kept[k]) throw std::domain_error("partial_trace: repeated subsystem index");
    kept[k] = true;
  }
  // keep must preserve the original factor order
  for (std::size_t i = 1; i < keep.size(); ++i)
    if (keep[i] <= keep[i - 1])
      throw std::domain_error("partial_trace: keep indices must be strictly increasing");

  std::vector<int> keep_dims, trace_dims;
  for (int i = 0; i < n; ++i) (kept[i] ? keep_dims : trace_dims).push_back(dims[i]);
  const int dk = product(keep_dims);
  const int dt = product(trace_dims);

  std::vector<int> row(n), col(n), kd(keep_dims.size()), td(trace_dims.size());
  Mat out = Mat::Zero(dk, dk);
  for (int rk = 0; rk < dk; ++rk) {
    decompose(rk, keep_dims, kd);
    for (int ck = 0; ck < dk; ++ck) {
      std::vector<int> cd(keep_dims.size());
      decompose(ck, keep_dims, cd);
      Complex sum = 0.0;
      for (int t = 0; t < dt; ++t) {
        decompose(t, trace_dims, td);
        int ik = 0, it = 0;
        for (int i = 0; i < n; ++i) {
          if (kept[i]) {
            row[i] = kd[ik];
            col[i] = cd[ik];
            ++ik;
          } else {
            row[i] = td[it];
            col[i] = td[it];
            ++it;
          }
        }
        sum += rho(compose(row, dims), compose(col, dims));
      }
      out(rk, ck) = sum;
    }
  }
  return out;
}

Mat hermitize(const Mat& a) { return 0.5 * (a + a.adjoint()); }

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat expi_hermitian(const Mat& h, double angle) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("expi_hermitian: eigensolver failed");
  const auto& vals = es.eigenvalues();
  Vec phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    phases(i) = std::exp(Complex(0.0, angle * vals(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Mat sqrtm_psd(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("sqrtm_psd: eigensolver failed");
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    vals(i) = vals(i) > 0.0 ? std::sqrt(vals(i)) : 0.0;
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

double min_eigenvalue_hermitian(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_eigenvalue_hermitian: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

double trace_norm(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().sum();
}

double max_abs(const Mat& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace ctqec
