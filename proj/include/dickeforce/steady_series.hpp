#pragma once

// Exact steady-state sums for the collective force problem, evaluated in
// log space so that N in the hundreds stays finite.
//
// With x = Δ/γ the complex-gamma ratios reduce to real products:
//   Γ(m+1+δ)Γ(m+1-δ) / [Γ(1+δ)Γ(1-δ)] = Q_m(x) = Π_{j=1..m} (j² + x²),
// and every sum shares C_{N,m} = (N+m+1)! / [(N-m)! (2m+1)!]:
//   D      = Σ_{m=0..N} Q_m C_{N,m} g^{-2m}
//   f_dip  = (1/D) Σ_{m=1..N} m  Q_{m-1} C_{N,m} g^{-(2m-1)}
//   f_diss = (1/D) Σ_{m=1..N} m² Q_{m-1} C_{N,m} g^{-2m}

#include <limits>
#include <span>
#include <vector>

#include "dickeforce/types.hpp"

namespace dickeforce {

/// Streaming log(Σ exp(t_i)) with a running maximum.
class LogSumExp {
 public:
  void add(double log_term);
  /// -inf when nothing has been added.
  double value() const;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double scaled_sum_ = 0.0;
};

/// ln Q_m(x); Q_0 = 1.
double log_q_product(int m, double x);

/// ln C_{N,m}. Throws std::invalid_argument unless 0 ≤ m ≤ N.
double log_combinatorial(int n_atoms, int m);

struct SeriesPoint {
  CollectiveParams params;
  double f_dip = 0.0;
  double f_diss = 0.0;
  double log_D = 0.0;
};

/// All three sums in one pass. Requires g > 0: the series is in inverse
/// powers of g and g = 0 is rejected with std::domain_error.
SeriesPoint evaluate_series(const CollectiveParams& params);

double normalization_logD(const CollectiveParams& params);
double f_dip_normalized(const CollectiveParams& params);
double f_diss_normalized(const CollectiveParams& params);

/// One SeriesPoint per entry of n_range at fixed (x, g).
std::vector<SeriesPoint> fig1_curve(std::span<const int> n_range, double x,
                                    double g);

/// Forces in ħγk from the series:
///   dipole      = 2 x grad_amp f_dip
///   dissipative = 2 g² grad_theta f_diss
/// grad_amp in units of γk, grad_theta in units of k.
ForceVector dimensional_forces_at_point(const CollectiveParams& params,
                                        const CylVector& grad_amp,
                                        const CylVector& grad_theta);

}  // namespace dickeforce
