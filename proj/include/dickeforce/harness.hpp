#pragma once

// Sweeps and canned reproductions behind the command-line tool. Every
// command is a plain function returning data so it can be tested without
// going through argv.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dickeforce/beams.hpp"
#include "dickeforce/mean_field.hpp"
#include "dickeforce/output.hpp"
#include "dickeforce/steady_series.hpp"

namespace dickeforce {

enum class Route { kSeries, kOracle, kMeanField };

std::string_view route_name(Route route);

struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool log_spaced = false;

  /// Throws std::invalid_argument for count < 1 or a log axis with a
  /// non-positive endpoint.
  void validate() const;
  std::vector<double> values() const;
};

enum class BeamKind { kLaguerreGauss, kBessel };

/// Beam selection as it appears on the command line. Lengths are in units
/// of the reciprocal wavenumber unit, peak drive in units of γ.
struct BeamConfig {
  BeamKind kind = BeamKind::kLaguerreGauss;
  int l = 1;
  int p = 0;
  double w0 = 10.0;
  double k = 1.0;
  double k_perp = 0.1;
  double peak_g = 1.5;

  BeamModel build() const;
};

struct SweepSpec {
  std::vector<Axis> axes;
  int n_atoms = 1;
  double x = 1.0;
  double g = 1.5;
  std::optional<double> mu;
  std::optional<double> nu;
  BeamConfig beam;
  std::string out_path;
  /// Worker threads; 0 means one per hardware thread.
  unsigned jobs = 1;

  void validate() const;
  /// x, or N ν / 2 when ν is given.
  double resolved_x() const;
  /// Beam peak g, or N μ / 2 when μ is given.
  double resolved_peak_g() const;
};

/// One evaluated point. `coords` are the input coordinates in axis order.
struct ResultRecord {
  std::vector<std::pair<std::string, double>> coords;
  double f_dip = 0.0;
  double f_diss = 0.0;
  ForceVector force;
  double torque = 0.0;  // ħγ
  Route route = Route::kSeries;

  bool all_finite() const;
};

/// Evaluates fn(i) for i in [0, count) on up to `jobs` threads and returns
/// the results in index order, so output never depends on scheduling.
/// The first exception thrown by any task is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs,
                            const std::function<T(std::size_t)>& fn);

/// f_dip and f_diss against N = 1..n_max at fixed (x, g).
std::vector<SeriesPoint> run_fig1(double x, double g, int n_max, unsigned jobs);
Table fig1_table(const std::vector<SeriesPoint>& points);
std::string fig1_svg(const std::vector<SeriesPoint>& points);

/// Series-route forces on an (r, z) grid at fixed azimuth. The local drive is
/// g(r) = |αf(r)|/γ from the beam; gradients are converted to units of γk
/// and k with the beam wavenumber. Points with zero local amplitude report
/// the g → 0 limit (zero force). Axis 0 is r, axis 1 is z.
std::vector<ResultRecord> run_force_map(const SweepSpec& spec, double phi = 0.0);
Table records_table(const std::vector<ResultRecord>& records);

struct TorqueReport {
  ReducedDrive drive;
  int l = 0;
  int n_atoms = 1;
  double torque = 0.0;            // ħγ
  double max_angular_momentum = 0.0;  // N² |l|, in ħ
};

TorqueReport run_torque(const ReducedDrive& drive, int l, int n_atoms);

Table trajectory_table(const EvolveResult& result);

struct DopplerReport {
  double force = 0.0;  // ħγk, total on the sample
  double shift = 0.0;  // s⁻¹
};

/// Shift for a given total force, or, when force is empty, for the
/// mean-field dissipative force N·F_diss/N along a unit (k) phase gradient.
DopplerReport run_doppler(std::optional<double> force, const ReducedDrive& drive,
                          int n_atoms, double atom_mass, double gamma,
                          double wavelength);

}  // namespace dickeforce

#include "dickeforce/detail/parallel_map.hpp"
