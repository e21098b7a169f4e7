#pragma once

// Exact small-N treatment of the collective two-level master equation in
// the symmetric (Dicke) sector |N/2, k>, k = -N/2 .. N/2.

#include <Eigen/Dense>

#include "dickeforce/types.hpp"

namespace dickeforce {

using CMatrix = Eigen::MatrixXcd;

/// Collective operators on the (N+1)-dimensional symmetric sector.
/// Row/column index i corresponds to k = i - N/2, so index 0 is the
/// collective ground state.
struct DickeOperators {
  int n_atoms = 0;
  CMatrix pi12;  // lowering
  CMatrix pi21;  // raising
  CMatrix pi3;   // (π22 - π11)/2, diagonal with entries k

  Eigen::Index dim() const { return pi3.rows(); }
  /// π22 = π3 + (N/2)·I, the collective excited-state number operator.
  CMatrix pi22() const;
};

/// π21|N/2,k> = sqrt((N/2-k)(N/2+k+1)) |N/2,k+1>; π12 is its adjoint.
DickeOperators build_collective_ops(int n_atoms);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// dρ/dτ (τ = γt) of the rotating-frame master equation:
///   -i x [π22, ρ] - [π21 G - π12 G*, ρ] + (2 π12 ρ π21 - π21 π12 ρ - ρ π21 π12)
/// with G = g e^{iθ}.
CMatrix liouvillian_action(const DickeOperators& ops,
                           const CollectiveParams& params, const CMatrix& rho);

/// The same generator as an (N+1)²×(N+1)² matrix acting on column-stacked
/// density matrices.
CMatrix liouvillian_matrix(const DickeOperators& ops,
                           const CollectiveParams& params);

struct SteadyStateDensity {
  CMatrix rho;
  /// Ratio of the second-smallest to the smallest singular value of the
  /// vectorized Liouvillian (capped at 1e300 when the smallest is zero).
  double singular_gap = 0.0;
  /// max-abs entry of L(ρ) after normalization.
  double residual = 0.0;
};

struct BruteForceOptions {
  int max_atoms = 12;
  double min_singular_gap = 1e6;
  double residual_tolerance = 1e-9;
};

/// Steady state from the null space of the vectorized Liouvillian.
/// Throws std::invalid_argument above the atom cap and NumericalError when
/// the null space is not one-dimensional or the result fails its checks
/// (Hermitian, unit trace, eigenvalues ≥ -1e-9, residual).
SteadyStateDensity steady_state_bruteforce(const DickeOperators& ops,
                                           const CollectiveParams& params,
                                           const BruteForceOptions& options = {});

/// <π21> and <π12> = Tr(ρ π).
struct CoherencePair {
  Complex raising;
  Complex lowering;
};

CoherencePair coherences(const DickeOperators& ops, const CMatrix& rho);

/// Mean forces from the steady-state coherences, F = -<∇H>:
///   dipole      = i ∇|αf| (e^{iθ}<π21> - e^{-iθ}<π12>)
///   dissipative = -|αf| ∇θ (e^{iθ}<π21> + e^{-iθ}<π12>)
/// grad_amp is ∇|αf| in units of γk and grad_theta is ∇θ in units of k, so
/// the result is in ħγk. Throws NumericalError if either bracket fails to be
/// real to 1e-10 (which only happens for a broken steady state).
ForceVector forces_from_expectations(const DickeOperators& ops,
                                     const CollectiveParams& params,
                                     const CMatrix& rho,
                                     const CylVector& grad_amp,
                                     const CylVector& grad_theta);

/// Convenience: build operators, solve, and evaluate forces.
ForceVector bruteforce_forces(const CollectiveParams& params,
                              const CylVector& grad_amp,
                              const CylVector& grad_theta);

}  // namespace dickeforce
