#pragma once

// Mean-field closure <π± πz> ≈ <π±><πz> of the collective moment
// equations, in reduced time τ = Nγt.

#include <array>
#include <cstddef>
#include <vector>

#include "dickeforce/types.hpp"

namespace dickeforce {

/// Reduced drive μ = 2g/N, ν = 2x/N with the derived steady-state
/// quantities
///   4β = 4μ² + ν² - 4,  ξ² = (√(β²+ν²) + β)/2,  η² = (√(β²+ν²) - β)/2,
/// ξ, η taken as the nonnegative roots.
struct ReducedDrive {
  double mu = 0.0;
  double nu = 0.0;
  double beta = 0.0;
  double xi = 0.0;
  double eta = 0.0;

  /// Throws std::invalid_argument for μ < 0 or non-finite input.
  static ReducedDrive make(double mu, double nu);
  static ReducedDrive from_params(const CollectiveParams& params);
};

struct MeanFieldState {
  double m0 = -0.5;
  Complex m_plus{};
  Complex m_minus{};
  double tau = 0.0;

  /// m0² + |m₊|², conserved by the flow when m₋ = conj(m₊).
  double bloch_radius_sq() const;
};

/// Slightly tilted ground state on the radius-1/2 Bloch sphere; exactly
/// (-1/2, 0, 0) is a fixed point for every μ and would never move.
MeanFieldState default_initial_state();

struct MomentRates {
  Complex dm0;  // real for conjugate states; kept complex for generality
  Complex dm_plus;
  Complex dm_minus;

  double max_abs() const;
};

/// dm0/dτ = -(μ/2)(m₊+m₋) - 2m₊m₋
/// dm₊/dτ =  μm0 - iνm₊/2 + 2m₊m0
/// dm₋/dτ =  μm0 + iνm₋/2 + 2m₋m0
MomentRates moment_rhs(const MeanFieldState& state, const ReducedDrive& drive);

struct EvolveOptions {
  double tau_max = 200.0;
  double dtau = 1e-3;
  double residual_tolerance = 1e-10;
  /// Keep every n-th step in the trajectory (the final state is always kept).
  std::size_t sample_every = 1000;
};

struct EvolveResult {
  MeanFieldState final_state;
  std::vector<MeanFieldState> trajectory;
  bool converged = false;
  /// max-abs of moment_rhs at the final state.
  double residual = 0.0;
  /// Largest |m₋ - conj(m₊)| seen along the run.
  double max_conjugacy_defect = 0.0;
};

/// Classical fixed-step RK4 until the rate residual drops below tolerance or
/// tau_max is reached. Non-convergence is reported, not thrown; it marks
/// drive points where the flow keeps oscillating (ν = 0, μ > 1).
EvolveResult evolve(const MeanFieldState& initial, const ReducedDrive& drive,
                    const EvolveOptions& options = {});

/// Per-particle force observables read off a mean-field state, in units of
/// ħNγ per unit gradient: dipole = Im m₊ (along ∇μ), dissipative =
/// -μ Re m₊ (along ∇θ).
struct MeanFieldObservables {
  double dipole_per_grad_mu = 0.0;
  double diss_per_grad_theta = 0.0;
};

MeanFieldObservables observables(const MeanFieldState& state,
                                 const ReducedDrive& drive);

/// Closed-form steady-state values of the same observables.
MeanFieldObservables steady_observables(const ReducedDrive& drive);

struct PerParticleForce {
  CylVector value;
  /// True when ν ≈ 0 with μ ≥ 1, where η = 0 and the dipole formula is 0/0;
  /// the returned value is the ν → 0 limit (zero).
  bool removable_limit = false;
};

/// ħ(Nγ) ν μ ∇μ / [4η(1+ξ²)] per particle, returned in units of ħ.
PerParticleForce steady_force_dipole_per_particle(const ReducedDrive& drive,
                                                  const CylVector& grad_mu,
                                                  int n_atoms, double gamma);

/// ħ(Nγ) μ² ∇θ / [2(1+ξ²)] per particle, returned in units of ħ.
CylVector steady_force_diss_per_particle(const ReducedDrive& drive,
                                         const CylVector& grad_theta,
                                         int n_atoms, double gamma);

/// |r × F_diss| summed over the N atoms: ħN²γ μ² |l| / [2(1+ξ²)], in ħ.
double torque_magnitude(const ReducedDrive& drive, int l, int n_atoms,
                        double gamma);

/// Doppler shift of the cooperative emission line after the beam has
/// pushed the sample: a = F/(N M), v = a/(Nγ), shift = k v = 2πa/(λNγ).
/// force_magnitude is the total force in units of ħγk with k = 2π/λ; mass
/// in kg, gamma in s⁻¹, wavelength in m. Returns s⁻¹.
double doppler_shift_estimate(double force_magnitude, double atom_mass,
                              int n_atoms, double gamma, double wavelength);

}  // namespace dickeforce
