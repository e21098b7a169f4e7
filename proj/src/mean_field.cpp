#include "dickeforce/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dickeforce {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kHbar = 1.054571817e-34;  // J·s

using Vec = std::array<Complex, 3>;

Vec to_vec(const MeanFieldState& s) { return {s.m0, s.m_plus, s.m_minus}; }

// Same right-hand side as moment_rhs with m0 carried as complex, so the
// stepper never silently drops an imaginary part of dm0.
Vec rates(const Vec& y, const ReducedDrive& d) {
  const Complex m0 = y[0];
  return {-(d.mu / 2.0) * (y[1] + y[2]) - 2.0 * y[1] * y[2],
          d.mu * m0 - kI * d.nu * y[1] / 2.0 + 2.0 * y[1] * m0,
          d.mu * m0 + kI * d.nu * y[2] / 2.0 + 2.0 * y[2] * m0};
}

Vec axpy(const Vec& y, double h, const Vec& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

double conjugacy_defect(const MeanFieldState& s) {
  return std::abs(s.m_minus - std::conj(s.m_plus));
}

}  // namespace

ReducedDrive ReducedDrive::make(double mu, double nu) {
  if (!(mu >= 0.0) || !std::isfinite(mu) || !std::isfinite(nu)) {
    throw std::invalid_argument("ReducedDrive: need finite mu >= 0 and finite nu");
  }
  ReducedDrive d;
  d.mu = mu;
  d.nu = nu;
  d.beta = mu * mu + nu * nu / 4.0 - 1.0;
  const double root = std::hypot(d.beta, nu);
  // Use ξ²η² = ν²/4 for whichever square would otherwise cancel.
  double xi2 = 0.0;
  double eta2 = 0.0;
  if (d.beta >= 0.0) {
    xi2 = 0.5 * (root + d.beta);
    eta2 = xi2 > 0.0 ? nu * nu / (4.0 * xi2) : 0.0;
  } else {
    eta2 = 0.5 * (root - d.beta);
    xi2 = nu * nu / (4.0 * eta2);
  }
  d.xi = std::sqrt(xi2);
  d.eta = std::sqrt(eta2);
  return d;
}

ReducedDrive ReducedDrive::from_params(const CollectiveParams& params) {
  params.validate();
  const double n = params.n_atoms;
  return make(2.0 * params.rabi_ratio / n, 2.0 * params.detuning_ratio / n);
}

double MeanFieldState::bloch_radius_sq() const {
  return m0 * m0 + std::norm(m_plus);
}

MeanFieldState default_initial_state() {
  constexpr double kTilt = 1e-6;
  return {.m0 = -std::sqrt(0.25 - kTilt * kTilt),
          .m_plus = kTilt,
          .m_minus = kTilt,
          .tau = 0.0};
}

double MomentRates::max_abs() const {
  return std::max({std::abs(dm0), std::abs(dm_plus), std::abs(dm_minus)});
}

MomentRates moment_rhs(const MeanFieldState& s, const ReducedDrive& d) {
  const Complex mp = s.m_plus;
  const Complex mm = s.m_minus;
  return {.dm0 = -(d.mu / 2.0) * (mp + mm) - 2.0 * mp * mm,
          .dm_plus = d.mu * s.m0 - kI * d.nu * mp / 2.0 + 2.0 * mp * s.m0,
          .dm_minus = d.mu * s.m0 + kI * d.nu * mm / 2.0 + 2.0 * mm * s.m0};
}

EvolveResult evolve(const MeanFieldState& initial, const ReducedDrive& drive,
                    const EvolveOptions& options) {
  if (!(options.dtau > 0.0) || !(options.tau_max >= 0.0)) {
    throw std::invalid_argument("evolve: need dtau > 0 and tau_max >= 0");
  }
  const std::size_t every = std::max<std::size_t>(options.sample_every, 1);

  EvolveResult out;
  Vec y = to_vec(initial);
  double tau = initial.tau;
  const auto state_of = [&](const Vec& v, double t) {
    return MeanFieldState{.m0 = v[0].real(), .m_plus = v[1], .m_minus = v[2], .tau = t};
  };

  MeanFieldState current = state_of(y, tau);
  out.trajectory.push_back(current);
  out.max_conjugacy_defect = conjugacy_defect(current);
  out.residual = moment_rhs(current, drive).max_abs();

  const auto steps = static_cast<std::size_t>(
      std::ceil(options.tau_max / options.dtau - 1e-9));
  const double h = options.dtau;
  for (std::size_t step = 1; step <= steps && out.residual >= options.residual_tolerance;
       ++step) {
    const Vec k1 = rates(y, drive);
    const Vec k2 = rates(axpy(y, h / 2.0, k1), drive);
    const Vec k3 = rates(axpy(y, h / 2.0, k2), drive);
    const Vec k4 = rates(axpy(y, h, k3), drive);
    for (std::size_t i = 0; i < 3; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    tau = initial.tau + static_cast<double>(step) * h;
    current = state_of(y, tau);
    out.residual = moment_rhs(current, drive).max_abs();
    out.max_conjugacy_defect =
        std::max(out.max_conjugacy_defect, conjugacy_defect(current));
    if (step % every == 0) {
      out.trajectory.push_back(current);
    }
  }
  out.converged = out.residual < options.residual_tolerance;
  if (out.trajectory.back().tau != current.tau) {
    out.trajectory.push_back(current);
  }
  out.final_state = current;
  return out;
}

MeanFieldObservables observables(const MeanFieldState& state,
                                 const ReducedDrive& drive) {
  return {.dipole_per_grad_mu = state.m_plus.imag(),
          .diss_per_grad_theta = -drive.mu * state.m_plus.real()};
}

MeanFieldObservables steady_observables(const ReducedDrive& d) {
  const double denom = 1.0 + d.xi * d.xi;
  MeanFieldObservables out;
  out.diss_per_grad_theta = d.mu * d.mu / (2.0 * denom);
  if (d.nu != 0.0 && d.eta > 0.0) {
    out.dipole_per_grad_mu = d.nu * d.mu / (4.0 * d.eta * denom);
  }
  return out;
}

PerParticleForce steady_force_dipole_per_particle(const ReducedDrive& drive,
                                                  const CylVector& grad_mu,
                                                  int n_atoms, double gamma) {
  if (n_atoms < 1) {
    throw std::invalid_argument("n_atoms must be >= 1");
  }
  PerParticleForce out;
  // On ν = 0 with μ ≥ 1 the one-sided limits are ±μξ/[2(1+ξ²)]; zero is
  // their mean and the value the symmetric flow would give.
  if (std::abs(drive.nu) < 1e-12 && drive.mu >= 1.0) {
    out.removable_limit = true;
    return out;
  }
  const double scale = n_atoms * gamma * steady_observables(drive).dipole_per_grad_mu;
  out.value = scale * grad_mu;
  return out;
}

CylVector steady_force_diss_per_particle(const ReducedDrive& drive,
                                         const CylVector& grad_theta,
                                         int n_atoms, double gamma) {
  if (n_atoms < 1) {
    throw std::invalid_argument("n_atoms must be >= 1");
  }
  return n_atoms * gamma * steady_observables(drive).diss_per_grad_theta *
         grad_theta;
}

double torque_magnitude(const ReducedDrive& drive, int l, int n_atoms,
                        double gamma) {
  if (n_atoms < 1) {
    throw std::invalid_argument("n_atoms must be >= 1");
  }
  const double n = n_atoms;
  return n * n * gamma * steady_observables(drive).diss_per_grad_theta *
         std::abs(static_cast<double>(l));
}

double doppler_shift_estimate(double force_magnitude, double atom_mass,
                              int n_atoms, double gamma, double wavelength) {
  if (!(atom_mass > 0.0)) {
    throw std::invalid_argument("doppler_shift_estimate: atom mass must be > 0");
  }
  if (n_atoms < 1 || !(gamma > 0.0) || !(wavelength > 0.0) ||
      !(force_magnitude >= 0.0)) {
    throw std::invalid_argument(
        "doppler_shift_estimate: need N >= 1, gamma > 0, wavelength > 0 and "
        "force >= 0");
  }
  const double k = 2.0 * std::numbers::pi / wavelength;
  const double force_si = force_magnitude * kHbar * gamma * k;
  const double n = n_atoms;
  const double accel = force_si / (n * atom_mass);
  return 2.0 * std::numbers::pi * accel / (wavelength * n * gamma);
}

}  // namespace dickeforce
