#pragma once

#include <vector>

#include "ctqec/density_matrix.hpp"
#include "ctqec/linalg.hpp"

namespace ctqec {

/// Completely positive map given by a finite set of Kraus operators, all of
/// the same shape. Trace preserving iff sum K^dag K = I.
class KrausMap {
 public:
  explicit KrausMap(std::vector<Mat> ops);

  const std::vector<Mat>& ops() const { return ops_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }

  /// True when the completeness sum holds within the global cptp tolerance,
  /// evaluated at construction.
  bool is_cptp() const { return cptp_; }
  double completeness_residual() const { return completeness_residual_; }

 private:
  std::vector<Mat> ops_;
  int in_dim_ = 0;
  int out_dim_ = 0;
  bool cptp_ = false;
  double completeness_residual_ = 0.0;
};

/// sum_k K rho K^dag. Preserves trace iff the map is CPTP.
Mat apply_kraus(const KrausMap& map, const Mat& rho);
DensityMatrix apply_kraus(const KrausMap& map, const DensityMatrix& rho);

/// Sequential composition: apply `first`, then `second`.
KrausMap compose(const KrausMap& second, const KrausMap& first);

}  // namespace ctqec
