#include "dickeforce/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dickeforce/dicke_algebra.hpp"
#include "dickeforce/mean_field.hpp"
#include "dickeforce/output.hpp"
#include "dickeforce/steady_series.hpp"

namespace dickeforce {

namespace {

constexpr CylVector kGradAmp{0.8, 0.0, -0.35};
constexpr CylVector kGradTheta{0.15, 0.4, 1.1};

double max_norm(const CylVector& v) {
  return std::max({std::abs(v.r), std::abs(v.phi), std::abs(v.z)});
}

double force_error(const ForceVector& a, const ForceVector& b) {
  return std::max(relative_error(a.dipole, b.dipole, 1e-14),
                  relative_error(a.dissipative, b.dissipative, 1e-14));
}

CMatrix power(const CMatrix& m, int n) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) {
    out = out * m;
  }
  return out;
}

// Largest entrywise defect of the five collective commutation identities,
// scaled by max(1, largest entry of the terms involved).
double commutator_defect(const DickeOperators& ops, int max_power) {
  const auto check = [](const CMatrix& lhs, const CMatrix& rhs) {
    const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
  };
  double worst = check(commutator(ops.pi21, ops.pi12), 2.0 * ops.pi3);
  for (int n = 1; n <= max_power; ++n) {
    const CMatrix up = power(ops.pi21, n);
    const CMatrix down = power(ops.pi12, n);
    const CMatrix up1 = power(ops.pi21, n - 1);
    const CMatrix down1 = power(ops.pi12, n - 1);
    const double nn = n;
    worst = std::max({worst, check(commutator(ops.pi3, up), nn * up),
                      check(commutator(ops.pi3, down), -nn * down),
                      check(commutator(ops.pi21, down),
                            -nn * (nn - 1.0) * down1 + 2.0 * nn * down1 * ops.pi3),
                      check(commutator(ops.pi12, up),
                            -nn * (nn - 1.0) * up1 - 2.0 * nn * up1 * ops.pi3)});
  }
  return worst;
}

SuiteResult commutator_suite(int max_n) {
  SuiteResult s{.name = "commutator identities", .tolerance = 1e-12};
  for (int n = 1; n <= max_n; ++n) {
    s.max_error = std::max(s.max_error, commutator_defect(build_collective_ops(n), 4));
    ++s.cases;
  }
  s.passed = s.max_error <= s.tolerance;
  return s;
}

SuiteResult single_atom_suite(const ForceRoute& series) {
  SuiteResult s{.name = "single-atom closed form", .tolerance = 1e-12};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double x = 0.2 + 1.2 * i;
      const double g = 0.2 + 1.2 * j;
      const double denom = 1.0 + x * x + 2.0 * g * g;
      const ForceVector expected{.dipole = (2.0 * g * x / denom) * kGradAmp,
                                 .dissipative = (2.0 * g * g / denom) * kGradTheta};
      const ForceVector got = series(
          {.n_atoms = 1, .detuning_ratio = x, .rabi_ratio = g}, kGradAmp, kGradTheta);
      s.max_error = std::max(s.max_error, force_error(got, expected));
      ++s.cases;
    }
  }
  s.passed = s.max_error <= s.tolerance;
  return s;
}

SuiteResult oracle_suite(int max_n, const ForceRoute& series) {
  SuiteResult s{.name = "series vs Liouvillian", .tolerance = 1e-8};
  for (int n = 1; n <= max_n; ++n) {
    for (const double x : {0.5, 1.0, 2.0}) {
      for (const double g : {0.5, 1.5, 3.0}) {
        const CollectiveParams params{
            .n_atoms = n, .detuning_ratio = x, .rabi_ratio = g, .phase = 0.7};
        const ForceVector oracle = bruteforce_forces(params, kGradAmp, kGradTheta);
        const ForceVector got = series(params, kGradAmp, kGradTheta);
        const double err = force_error(got, oracle);
        if (err > s.max_error) {
          s.max_error = err;
          s.detail = "worst at N=" + std::to_string(n) + " x=" + format_number(x) +
                     " g=" + format_number(g);
        }
        ++s.cases;
      }
    }
  }
  s.passed = s.max_error <= s.tolerance;
  return s;
}

SuiteResult mean_field_suite() {
  SuiteResult s{.name = "mean-field ODE vs closed form", .tolerance = 1e-6};
  for (const double mu : {0.5, 1.0, 1.5}) {
    for (const double nu : {0.5, 1.0, 2.0}) {
      const ReducedDrive d = ReducedDrive::make(mu, nu);
      const double xi2 = d.xi * d.xi;
      const double eta2 = d.eta * d.eta;
      const double identity = std::max(std::abs(xi2 - eta2 - d.beta),
                                       std::abs(xi2 * eta2 - nu * nu / 4.0));
      const EvolveResult run = evolve(default_initial_state(), d);
      if (!run.converged) {
        s.detail = "no convergence at mu=" + format_number(mu) +
                   " nu=" + format_number(nu);
        s.max_error = std::max(s.max_error, run.residual);
        s.passed = false;
        ++s.cases;
        continue;
      }
      const MeanFieldObservables ode = observables(run.final_state, d);
      const MeanFieldObservables closed = steady_observables(d);
      const double err = std::max(
          std::abs(ode.dipole_per_grad_mu - closed.dipole_per_grad_mu) /
              std::abs(closed.dipole_per_grad_mu),
          std::abs(ode.diss_per_grad_theta - closed.diss_per_grad_theta) /
              std::abs(closed.diss_per_grad_theta));
      s.max_error = std::max({s.max_error, err, identity});
      ++s.cases;
    }
  }
  s.passed = s.detail.empty() && s.max_error <= s.tolerance;
  return s;
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.passed; });
}

double relative_error(const CylVector& a, const CylVector& b, double floor) {
  const CylVector diff{a.r - b.r, a.phi - b.phi, a.z - b.z};
  return max_norm(diff) / std::max(max_norm(b), floor);
}

ForceRoute default_series_route() { return &dimensional_forces_at_point; }

ValidationReport run_validation(int max_n, const ForceRoute& series) {
  if (max_n < 1 || max_n > 12) {
    throw std::invalid_argument("validate: max_n must be in [1, 12]");
  }
  ValidationReport rep;
  rep.suites.push_back(commutator_suite(max_n));
  rep.suites.push_back(single_atom_suite(series));
  rep.suites.push_back(oracle_suite(max_n, series));
  rep.suites.push_back(mean_field_suite());
  return rep;
}

}  // namespace dickeforce
