#include "dickeforce/harness.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dickeforce {

std::string_view route_name(Route route) {
  switch (route) {
    case Route::kSeries: return "series";
    case Route::kOracle: return "oracle";
    case Route::kMeanField: return "meanfield";
  }
  return "unknown";
}

void Axis::validate() const {
  if (count < 1) {
    throw std::invalid_argument("axis '" + name + "': count must be >= 1");
  }
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw std::invalid_argument("axis '" + name + "': endpoints must be finite");
  }
  if (log_spaced && !(start > 0.0 && stop > 0.0)) {
    throw std::invalid_argument("axis '" + name +
                                "': log spacing needs positive endpoints");
  }
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = start;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[static_cast<std::size_t>(i)] =
        log_spaced ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                   : start + t * (stop - start);
  }
  // Pin the endpoints exactly.
  out.front() = start;
  out.back() = stop;
  return out;
}

BeamModel BeamConfig::build() const {
  if (kind == BeamKind::kLaguerreGauss) {
    return LaguerreGaussBeam(l, p, w0, k, peak_g);
  }
  return BesselBeam(l, k, k_perp, peak_g);
}

void SweepSpec::validate() const {
  if (n_atoms < 1) {
    throw std::invalid_argument("n_atoms must be >= 1");
  }
  for (const auto& a : axes) {
    a.validate();
  }
  if (mu && !(*mu >= 0.0)) {
    throw std::invalid_argument("mu must be >= 0");
  }
}

double SweepSpec::resolved_x() const { return nu ? 0.5 * n_atoms * *nu : x; }

double SweepSpec::resolved_peak_g() const {
  return mu ? 0.5 * n_atoms * *mu : beam.peak_g;
}

bool ResultRecord::all_finite() const {
  const auto fin = [](const CylVector& v) {
    return std::isfinite(v.r) && std::isfinite(v.phi) && std::isfinite(v.z);
  };
  for (const auto& [name, value] : coords) {
    if (!std::isfinite(value)) return false;
  }
  return std::isfinite(f_dip) && std::isfinite(f_diss) && fin(force.dipole) &&
         fin(force.dissipative) && std::isfinite(torque);
}

std::vector<SeriesPoint> run_fig1(double x, double g, int n_max, unsigned jobs) {
  if (n_max < 1) {
    throw std::invalid_argument("fig1: n_max must be >= 1");
  }
  return parallel_map<SeriesPoint>(
      static_cast<std::size_t>(n_max), jobs, [&](std::size_t i) {
        return evaluate_series({.n_atoms = static_cast<int>(i) + 1,
                                .detuning_ratio = x,
                                .rabi_ratio = g});
      });
}

Table fig1_table(const std::vector<SeriesPoint>& points) {
  Table t;
  t.columns = {"N", "f_dip", "f_diss"};
  for (const auto& p : points) {
    t.add_row({static_cast<double>(p.params.n_atoms), p.f_dip, p.f_diss});
  }
  return t;
}

std::string fig1_svg(const std::vector<SeriesPoint>& points) {
  PlotSeries dip{.label = "f_dip"};
  PlotSeries diss{.label = "f_diss"};
  for (const auto& p : points) {
    dip.x.push_back(p.params.n_atoms);
    dip.y.push_back(p.f_dip);
    diss.x.push_back(p.params.n_atoms);
    diss.y.push_back(p.f_diss);
  }
  std::string title = "Normalized cooperative forces";
  if (!points.empty()) {
    title += " (x = " + format_number(points.front().params.detuning_ratio) +
             ", g = " + format_number(points.front().params.rabi_ratio) + ")";
  }
  return render_svg({dip, diss}, title, "number of atoms N");
}

std::vector<ResultRecord> run_force_map(const SweepSpec& spec, double phi) {
  spec.validate();
  if (spec.axes.size() != 2) {
    throw std::invalid_argument("force map needs exactly two axes (r, z)");
  }
  BeamConfig beam_cfg = spec.beam;
  beam_cfg.peak_g = spec.resolved_peak_g();
  const BeamModel beam = beam_cfg.build();
  const double k = wavenumber(beam);
  const int l = winding_number(beam);
  const double x = spec.resolved_x();

  const std::vector<double> rs = spec.axes[0].values();
  const std::vector<double> zs = spec.axes[1].values();
  for (const double r : rs) {
    if (r < 0.0) {
      throw std::invalid_argument("force map: r must be >= 0");
    }
    if (r == 0.0 && l != 0) {
      throw std::invalid_argument(
          "force map: grid includes r = 0 but the beam carries l != 0 "
          "(phase gradient singular on axis)");
    }
  }

  const std::size_t nz = zs.size();
  return parallel_map<ResultRecord>(
      rs.size() * nz, spec.jobs, [&](std::size_t idx) {
        const double r = rs[idx / nz];
        const double z = zs[idx % nz];
        const CylPoint pt{.r = r, .phi = phi, .z = z};

        ResultRecord rec;
        rec.coords = {{spec.axes[0].name, r}, {spec.axes[1].name, z}};
        rec.route = Route::kSeries;
        const double g = amplitude(beam, pt);
        if (g > 0.0) {
          const CylVector grad_amp = (1.0 / k) * amplitude_gradient(beam, pt);
          const CylVector grad_theta = (1.0 / k) * phase_gradient(beam, pt);
          const CollectiveParams params{
              .n_atoms = spec.n_atoms, .detuning_ratio = x, .rabi_ratio = g};
          const SeriesPoint s = evaluate_series(params);
          rec.f_dip = s.f_dip;
          rec.f_diss = s.f_diss;
          rec.force = {.dipole = 2.0 * x * s.f_dip * grad_amp,
                       .dissipative = 2.0 * g * g * s.f_diss * grad_theta};
        }
        // τ_z = r F_φ; with F in ħγk and r in 1/k units the product is in ħγ.
        rec.torque = r * k * rec.force.dissipative.phi;
        return rec;
      });
}

Table records_table(const std::vector<ResultRecord>& records) {
  Table t;
  if (!records.empty()) {
    for (const auto& [name, value] : records.front().coords) {
      t.columns.push_back(name);
    }
  }
  for (const char* c : {"f_dip", "f_diss", "F_dip_r", "F_dip_phi", "F_dip_z",
                        "F_diss_r", "F_diss_phi", "F_diss_z", "torque"}) {
    t.columns.emplace_back(c);
  }
  t.tag_column = "route";
  for (const auto& rec : records) {
    std::vector<double> row;
    for (const auto& [name, value] : rec.coords) {
      row.push_back(value);
    }
    const auto& d = rec.force.dipole;
    const auto& s = rec.force.dissipative;
    row.insert(row.end(), {rec.f_dip, rec.f_diss, d.r, d.phi, d.z, s.r, s.phi,
                           s.z, rec.torque});
    t.add_row(std::move(row), std::string(route_name(rec.route)));
  }
  return t;
}

TorqueReport run_torque(const ReducedDrive& drive, int l, int n_atoms) {
  TorqueReport rep;
  rep.drive = drive;
  rep.l = l;
  rep.n_atoms = n_atoms;
  rep.torque = torque_magnitude(drive, l, n_atoms, 1.0);
  rep.max_angular_momentum =
      static_cast<double>(n_atoms) * n_atoms * std::abs(static_cast<double>(l));
  return rep;
}

Table trajectory_table(const EvolveResult& result) {
  Table t;
  t.columns = {"tau", "m0", "m_plus_re", "m_plus_im", "m_minus_re", "m_minus_im"};
  for (const auto& s : result.trajectory) {
    t.add_row({s.tau, s.m0, s.m_plus.real(), s.m_plus.imag(), s.m_minus.real(),
               s.m_minus.imag()});
  }
  return t;
}

DopplerReport run_doppler(std::optional<double> force, const ReducedDrive& drive,
                          int n_atoms, double atom_mass, double gamma,
                          double wavelength) {
  DopplerReport rep;
  if (force) {
    rep.force = *force;
  } else {
    const CylVector per_particle =
        steady_force_diss_per_particle(drive, {0.0, 0.0, 1.0}, n_atoms, 1.0);
    rep.force = n_atoms * per_particle.z;
  }
  rep.shift = doppler_shift_estimate(rep.force, atom_mass, n_atoms, gamma, wavelength);
  return rep;
}

}  // namespace dickeforce
