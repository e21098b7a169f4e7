#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dickeforce {

using Complex = std::complex<double>;

/// Raised when a numerical procedure cannot produce a trustworthy answer
/// (degenerate null space, broken steady state).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for a request at a coordinate singularity, e.g. the l/r phase
/// gradient on the beam axis.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Vector in the right-handed cylindrical basis (r̂, φ̂, ẑ).
struct CylVector {
  double r = 0.0;
  double phi = 0.0;
  double z = 0.0;

  CylVector& operator+=(const CylVector& o) {
    r += o.r;
    phi += o.phi;
    z += o.z;
    return *this;
  }
  friend CylVector operator+(CylVector a, const CylVector& b) { return a += b; }
  friend CylVector operator*(double s, const CylVector& v) {
    return {s * v.r, s * v.phi, s * v.z};
  }
  friend CylVector operator*(const CylVector& v, double s) { return s * v; }
  friend bool operator==(const CylVector&, const CylVector&) = default;

  double norm() const;
};

/// Dipole and dissipative parts of the mean optical force, in units of ħγk.
struct ForceVector {
  CylVector dipole;
  CylVector dissipative;

  CylVector total() const { return dipole + dissipative; }
};

/// Dimensionless drive point for N atoms: x = Δ/γ, g = |αf|/γ and the
/// drive phase θ.
struct CollectiveParams {
  int n_atoms = 1;
  double detuning_ratio = 0.0;
  double rabi_ratio = 0.0;
  double phase = 0.0;

  /// Throws std::invalid_argument unless n_atoms ≥ 1 and rabi_ratio ≥ 0.
  void validate() const;
  Complex complex_rabi() const { return std::polar(rabi_ratio, phase); }
};

}  // namespace dickeforce
