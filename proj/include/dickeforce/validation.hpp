#pragma once

// Cross-route consistency suites run by `dickeforce validate`.

#include <functional>
#include <string>
#include <vector>

#include "dickeforce/types.hpp"

namespace dickeforce {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<SuiteResult> suites;
  bool all_passed() const;
};

/// A force route with the signature of dimensional_forces_at_point. The
/// validator takes it as a parameter so a deliberately broken route can be
/// fed in to prove the suites bite.
using ForceRoute = std::function<ForceVector(
    const CollectiveParams&, const CylVector& grad_amp, const CylVector& grad_theta)>;

ForceRoute default_series_route();

/// Runs the commutator, single-atom closed form, series-vs-Liouvillian
/// (N = 1..max_n), and mean-field ODE-vs-closed-form suites.
/// Throws std::invalid_argument unless 1 ≤ max_n ≤ 12.
ValidationReport run_validation(int max_n,
                                const ForceRoute& series = default_series_route());

/// Largest relative error max|a-b| / max(|b|, floor) over the components.
double relative_error(const CylVector& a, const CylVector& b, double floor = 1e-300);

}  // namespace dickeforce
