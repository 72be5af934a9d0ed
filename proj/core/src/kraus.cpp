#include "ctqec/kraus.hpp"

#include <stdexcept>

namespace ctqec {

KrausMap::KrausMap(std::vector<Mat> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw std::invalid_argument("KrausMap: no operators");
  out_dim_ = static_cast<int>(ops_.front().rows());
  in_dim_ = static_cast<int>(ops_.front().cols());
  Mat sum = Mat::Zero(in_dim_, in_dim_);
  for (const Mat& k : ops_) {
    if (k.rows() != out_dim_ || k.cols() != in_dim_)
      throw std::invalid_argument("KrausMap: operators differ in shape");
    sum += k.adjoint() * k;
  }
  completeness_residual_ = max_abs(sum - Mat::Identity(in_dim_, in_dim_));
  cptp_ = completeness_residual_ <= numerics().cptp_tol;
}

Mat apply_kraus(const KrausMap& map, const Mat& rho) {
  if (rho.rows() != map.in_dim() || rho.cols() != map.in_dim())
    throw std::domain_error("apply_kraus: dimension mismatch");
  Mat out = Mat::Zero(map.out_dim(), map.out_dim());
  for (const Mat& k : map.ops()) out += k * rho * k.adjoint();
  return out;
}

DensityMatrix apply_kraus(const KrausMap& map, const DensityMatrix& rho) {
  return DensityMatrix::unchecked(rho.dims(), apply_kraus(map, rho.matrix()));
}

KrausMap compose(const KrausMap& second, const KrausMap& first) {
  if (second.in_dim() != first.out_dim())
    throw std::domain_error("compose: dimension mismatch");
  std::vector<Mat> ops;
  ops.reserve(second.ops().size() * first.ops().size());
  for (const Mat& a : second.ops())
    for (const Mat& b : first.ops()) ops.push_back(a * b);
  return KrausMap(std::move(ops));
}

}  // namespace ctqec
