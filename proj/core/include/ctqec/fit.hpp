#pragma once

#include <vector>

namespace ctqec {

/// Least-squares line y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Interior local maxima strictly above both neighbours by `min_prominence`.
int count_local_maxima(const std::vector<double>& y, double min_prominence = 0.0);

/// Index of the first interior local minimum, or -1 when none exists.
int first_local_minimum(const std::vector<double>& y);

/// Angular frequency of an oscillating signal from the mean spacing of its
/// zero crossings (each crossing located by linear interpolation; consecutive
/// crossings are half a period apart). Requires at least two crossings.
double zero_crossing_frequency(const std::vector<double>& t, const std::vector<double>& y);

/// Decay rate of the envelope of y ~ exp(-rate t) cos(w t): collects |y| at
/// the extrema (zero crossings of the discrete derivative) and fits
/// log|y| against t.
double envelope_decay_rate(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace ctqec
