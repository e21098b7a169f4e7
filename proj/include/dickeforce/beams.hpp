#pragma once

// Structured driving beams: amplitude |αf(r)|, its gradient, and the phase
// gradient ∇θ in cylindrical coordinates.

#include <variant>

#include "dickeforce/types.hpp"

namespace dickeforce {

struct CylPoint {
  double r = 0.0;
  double phi = 0.0;
  double z = 0.0;
};

/// Laguerre-Gaussian LG_p^l mode. The Rayleigh range is derived from the
/// waist and wavenumber, z_R = k w0² / 2.
class LaguerreGaussBeam {
 public:
  LaguerreGaussBeam(int l, int p, double waist, double wavenumber,
                    double peak_rabi);

  int l() const { return l_; }
  int p() const { return p_; }
  double waist() const { return waist_; }
  double wavenumber() const { return k_; }
  double rayleigh_range() const { return z_r_; }
  double peak_rabi() const { return alpha_; }
  double width(double z) const;

 private:
  int l_;
  int p_;
  double waist_;
  double k_;
  double z_r_;
  double alpha_;
};

/// Ideal (non-diffracting) Bessel beam J_l(k⊥ r) e^{ilφ}.
class BesselBeam {
 public:
  /// Requires 0 ≤ k_perp < k.
  BesselBeam(int l, double wavenumber, double k_perp, double peak_rabi);

  int l() const { return l_; }
  double wavenumber() const { return k_; }
  double k_perp() const { return k_perp_; }
  double peak_rabi() const { return alpha_; }
  /// k - k⊥²/(2k).
  double axial_wavenumber() const { return k_ - k_perp_ * k_perp_ / (2.0 * k_); }

 private:
  int l_;
  double k_;
  double k_perp_;
  double alpha_;
};

using BeamModel = std::variant<LaguerreGaussBeam, BesselBeam>;

int winding_number(const BeamModel& beam);
double wavenumber(const BeamModel& beam);
/// Natural transverse length scale (w0 for LG, 1/k⊥ for Bessel, 1/k if k⊥=0).
double transverse_scale(const BeamModel& beam);

/// Scalar phase θ whose gradient is phase_gradient. LG:
///   kz + lφ + k r² z / [2(z² + z_R²)] + (2p + l + 1) atan(z/z_R)
/// Bessel: lφ + (k - k⊥²/2k) z.
double phase(const BeamModel& beam, const CylPoint& pt);

/// ∇θ as (r̂, φ̂, ẑ) components. Throws SingularityError on the axis when
/// l ≠ 0 (the azimuthal l/r term).
CylVector phase_gradient(const BeamModel& beam, const CylPoint& pt);

/// |αf(r)| in the units of peak_rabi.
double amplitude(const BeamModel& beam, const CylPoint& pt);

/// Analytic ∇|αf(r)|; the φ̂ component is identically zero.
CylVector amplitude_gradient(const BeamModel& beam, const CylPoint& pt);

/// Generalized Laguerre polynomial L_n^a(x) by the three-term recurrence.
double assoc_laguerre(int n, int a, double x);

/// Bessel function of the first kind of integer order (any sign).
double bessel_j(int order, double x);

}  // namespace dickeforce
