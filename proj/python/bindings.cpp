#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dickeforce/beams.hpp"
#include "dickeforce/dicke_algebra.hpp"
#include "dickeforce/harness.hpp"
#include "dickeforce/mean_field.hpp"
#include "dickeforce/steady_series.hpp"
#include "dickeforce/validation.hpp"

namespace py = pybind11;
using namespace dickeforce;

namespace {

CylVector to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
std::array<double, 3> from_vec(const CylVector& v) { return {v.r, v.phi, v.z}; }

py::dict force_dict(const ForceVector& f) {
  py::dict d;
  d["dipole"] = from_vec(f.dipole);
  d["dissipative"] = from_vec(f.dissipative);
  return d;
}

CollectiveParams params(int n, double x, double g, double theta) {
  CollectiveParams p{.n_atoms = n, .detuning_ratio = x, .rabi_ratio = g, .phase = theta};
  p.validate();
  return p;
}

BeamModel make_beam(const std::string& kind, int l, int p, double w0, double k,
                    double k_perp, double peak) {
  if (kind == "lg") return LaguerreGaussBeam(l, p, w0, k, peak);
  if (kind == "bessel") return BesselBeam(l, k, k_perp, peak);
  throw std::invalid_argument("beam kind must be 'lg' or 'bessel'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Forces on superradiant atomic ensembles in structured light";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ValueError);

  m.def(
      "series",
      [](int n, double x, double g) {
        const SeriesPoint s = evaluate_series(params(n, x, g, 0.0));
        return py::make_tuple(s.f_dip, s.f_diss, s.log_D);
      },
      py::arg("n"), py::arg("x"), py::arg("g"),
      "Normalized (f_dip, f_diss, log D) from the closed-form series.");

  m.def(
      "forces",
      [](int n, double x, double g, std::array<double, 3> grad_amp,
         std::array<double, 3> grad_theta, double theta, const std::string& route) {
        const CollectiveParams p = params(n, x, g, theta);
        if (route == "series") {
          return force_dict(dimensional_forces_at_point(p, to_vec(grad_amp), to_vec(grad_theta)));
        }
        if (route == "oracle") {
          return force_dict(bruteforce_forces(p, to_vec(grad_amp), to_vec(grad_theta)));
        }
        throw std::invalid_argument("route must be 'series' or 'oracle'");
      },
      py::arg("n"), py::arg("x"), py::arg("g"), py::arg("grad_amp"), py::arg("grad_theta"),
      py::arg("theta") = 0.0, py::arg("route") = "series",
      "Dipole and dissipative forces in units of hbar*gamma*k, (r, phi, z) components.");

  m.def(
      "steady_state",
      [](int n, double x, double g, double theta) {
        return steady_state_bruteforce(build_collective_ops(n), params(n, x, g, theta)).rho;
      },
      py::arg("n"), py::arg("x"), py::arg("g"), py::arg("theta") = 0.0,
      "Steady-state density matrix in the Dicke basis (index 0 = ground).");

  m.def(
      "collective_operators",
      [](int n) {
        const DickeOperators ops = build_collective_ops(n);
        return py::make_tuple(ops.pi12, ops.pi21, ops.pi3);
      },
      py::arg("n"), "(pi12, pi21, pi3) for N atoms.");

  m.def(
      "fig1",
      [](double x, double g, int n_max, unsigned jobs) {
        std::vector<std::array<double, 3>> rows;
        for (const auto& s : run_fig1(x, g, n_max, jobs)) {
          rows.push_back({double(s.params.n_atoms), s.f_dip, s.f_diss});
        }
        return rows;
      },
      py::arg("x") = 1.0, py::arg("g") = 1.5, py::arg("n_max") = 200, py::arg("jobs") = 1,
      "Rows of (N, f_dip, f_diss) for N = 1..n_max.");

  py::class_<ReducedDrive>(m, "ReducedDrive")
      .def(py::init(&ReducedDrive::make), py::arg("mu"), py::arg("nu"))
      .def_readonly("mu", &ReducedDrive::mu)
      .def_readonly("nu", &ReducedDrive::nu)
      .def_readonly("beta", &ReducedDrive::beta)
      .def_readonly("xi", &ReducedDrive::xi)
      .def_readonly("eta", &ReducedDrive::eta)
      .def("__repr__", [](const ReducedDrive& d) {
        return "ReducedDrive(mu=" + std::to_string(d.mu) + ", nu=" + std::to_string(d.nu) + ")";
      });

  m.def(
      "evolve",
      [](const ReducedDrive& d, double tau_max, double dtau, std::size_t sample_every) {
        const EvolveResult run = evolve(default_initial_state(), d,
                                        {.tau_max = tau_max, .dtau = dtau,
                                         .sample_every = sample_every});
        std::vector<std::array<double, 4>> traj;
        for (const auto& s : run.trajectory) {
          traj.push_back({s.tau, s.m0, s.m_plus.real(), s.m_plus.imag()});
        }
        py::dict out;
        out["converged"] = run.converged;
        out["residual"] = run.residual;
        out["trajectory"] = traj;
        const MeanFieldObservables obs = observables(run.final_state, d);
        out["dipole_per_grad_mu"] = obs.dipole_per_grad_mu;
        out["diss_per_grad_theta"] = obs.diss_per_grad_theta;
        return out;
      },
      py::arg("drive"), py::arg("tau_max") = 200.0, py::arg("dtau") = 1e-3,
      py::arg("sample_every") = 1000,
      "RK4 mean-field run from the tilted ground state; trajectory rows are (tau, m0, Re m+, Im m+).");

  m.def(
      "steady_observables",
      [](const ReducedDrive& d) {
        const MeanFieldObservables o = steady_observables(d);
        return py::make_tuple(o.dipole_per_grad_mu, o.diss_per_grad_theta);
      },
      py::arg("drive"), "Closed-form (dipole per grad mu, dissipative per grad theta).");

  m.def("torque", &torque_magnitude, py::arg("drive"), py::arg("l"), py::arg("n"),
        py::arg("gamma") = 1.0, "Total torque in hbar*gamma units.");

  m.def(
      "beam_fields",
      [](const std::string& kind, std::array<double, 3> point, int l, int p, double w0,
         double k, double k_perp, double peak) {
        const BeamModel beam = make_beam(kind, l, p, w0, k, k_perp, peak);
        const CylPoint pt{point[0], point[1], point[2]};
        py::dict out;
        out["amplitude"] = amplitude(beam, pt);
        out["amplitude_gradient"] = from_vec(amplitude_gradient(beam, pt));
        out["phase"] = phase(beam, pt);
        out["phase_gradient"] = from_vec(phase_gradient(beam, pt));
        return out;
      },
      py::arg("kind"), py::arg("point"), py::arg("l") = 1, py::arg("p") = 0,
      py::arg("w0") = 10.0, py::arg("k") = 1.0, py::arg("k_perp") = 0.1, py::arg("peak") = 1.5,
      "Amplitude, phase and their gradients at a cylindrical point (r, phi, z).");

  m.def(
      "validate",
      [](int max_n) {
        std::vector<py::dict> suites;
        for (const auto& s : run_validation(max_n).suites) {
          py::dict d;
          d["name"] = s.name;
          d["passed"] = s.passed;
          d["max_error"] = s.max_error;
          d["tolerance"] = s.tolerance;
          d["cases"] = s.cases;
          suites.push_back(d);
        }
        return suites;
      },
      py::arg("max_n") = 6, "Runs the consistency suites; one dict per suite.");
}
