#pragma once

namespace ctqec {

/// Global numerical tolerances. All validity checks in the library read from
/// this single configuration so tolerances can be adjusted in one place.
struct NumericsConfig {
  double herm_tol = 1e-12;        // max entrywise |rho - rho^dag|
  double trace_tol = 1e-10;       // |Tr(rho) - 1|
  double psd_tol = 1e-9;          // min eigenvalue >= -psd_tol
  double psd_tol_stochastic = 1e-6;  // relaxed bound for SDE trajectories
  double cptp_tol = 1e-10;        // |sum K^dag K - I| for Kraus maps
};

NumericsConfig& numerics();

}  // namespace ctqec
