#include "ctqec/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace ctqec {

LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissa");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

int count_local_maxima(const std::vector<double>& y, double min_prominence) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] + min_prominence && y[i] > y[i + 1] + min_prominence) ++count;
  return count;
}

int first_local_minimum(const std::vector<double>& y) {
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] < y[i - 1] && y[i] < y[i + 1]) return static_cast<int>(i);
  return -1;
}

double zero_crossing_frequency(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("zero_crossing_frequency: sizes");
  std::vector<double> crossings;
  for (std::size_t i = 1; i < y.size(); ++i) {
    if ((y[i - 1] < 0.0 && y[i] >= 0.0) || (y[i - 1] > 0.0 && y[i] <= 0.0)) {
      const double frac = y[i - 1] / (y[i - 1] - y[i]);
      crossings.push_back(t[i - 1] + frac * (t[i] - t[i - 1]));
    }
  }
  if (crossings.size() < 2)
    throw std::invalid_argument("zero_crossing_frequency: fewer than two crossings");
  const double span = crossings.back() - crossings.front();
  const double half_periods = static_cast<double>(crossings.size() - 1);
  const double pi = 3.14159265358979323846;
  return pi * half_periods / span;
}

double envelope_decay_rate(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("envelope_decay_rate: sizes");
  std::vector<double> et, ey;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const bool peak = (y[i] - y[i - 1]) * (y[i + 1] - y[i]) < 0.0;
    if (peak && std::abs(y[i]) > 0.0) {
      et.push_back(t[i]);
      ey.push_back(std::log(std::abs(y[i])));
    }
  }
  if (et.size() < 2)
    throw std::invalid_argument("envelope_decay_rate: fewer than two extrema");
  return -linear_fit(et, ey).slope;
}

}  // namespace ctqec
