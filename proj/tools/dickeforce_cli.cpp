// dickeforce: cooperative optical forces on N two-level atoms.
//
// Exit codes: 0 success, 1 validation failure, 2 bad input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dickeforce/harness.hpp"
#include "dickeforce/validation.hpp"

namespace {

using namespace dickeforce;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBadInput = 2;

struct Common {
  std::string out;
  std::string format = "csv";
  unsigned jobs = 1;
};

void add_common(CLI::App* cmd, Common& c, bool with_jobs) {
  cmd->add_option("--out", c.out, "Output path (stdout when omitted)");
  cmd->add_option("--format", c.format, "Dataset format")
      ->check(CLI::IsMember({"csv", "json"}));
  if (with_jobs) {
    cmd->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)");
  }
}

void emit(const Table& table, const Common& c) {
  std::ostringstream os;
  if (c.format == "json") {
    write_json(os, table);
  } else {
    write_csv(os, table);
  }
  if (c.out.empty()) {
    std::cout << os.str();
  } else {
    write_file(c.out, os.str());
  }
}

std::string svg_path_for(const std::string& out) {
  const auto dot = out.find_last_of('.');
  const auto slash = out.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return out.substr(0, dot) + ".svg";
  }
  return out + ".svg";
}

// Splices "--key value" pairs from a flat JSON config in directly after the
// subcommand name. Options are take-last, so flags typed on the command line
// override the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const std::vector<std::string>& subcommands) {
  std::vector<std::string> out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      continue;
    }
    out.push_back(args[i]);
  }
  if (config_path.empty()) {
    return out;
  }

  std::ifstream in(config_path);
  if (!in) {
    throw std::invalid_argument("cannot read config file '" + config_path + "'");
  }
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file '" + config_path + "': " + e.what());
  }
  if (!cfg.is_object()) {
    throw std::invalid_argument("config file must hold a JSON object");
  }

  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    injected.push_back("--" + key);
    injected.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    for (const auto& name : subcommands) {
      if (out[i] == name) {
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(i) + 1, injected.begin(),
                   injected.end());
        return out;
      }
    }
  }
  throw std::invalid_argument("--config needs a subcommand");
}

void print_validation(const ValidationReport& rep) {
  for (const auto& s : rep.suites) {
    std::cout << (s.passed ? "[PASS] " : "[FAIL] ") << s.name << ": " << s.cases
              << " cases, max error " << format_number(s.max_error) << " (tolerance "
              << format_number(s.tolerance) << ")";
    if (!s.detail.empty()) {
      std::cout << " - " << s.detail;
    }
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative (Dicke) optical forces and torque on N two-level atoms"};
  app.name("dickeforce");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_config();  // disable CLI11's own INI/TOML handling; --config is JSON

  // fig1
  Common fig1_io;
  double fig1_x = 1.0;
  double fig1_g = 1.5;
  int fig1_n = 100;
  auto* fig1 = app.add_subcommand("fig1", "f_dip and f_diss against atom number");
  fig1->add_option("--x", fig1_x, "Detuning ratio Δ/γ");
  fig1->add_option("--g", fig1_g, "Rabi ratio |αf|/γ")->check(CLI::PositiveNumber);
  fig1->add_option("--n", fig1_n, "Largest atom number")->check(CLI::PositiveNumber);
  add_common(fig1, fig1_io, true);

  // force-map
  Common map_io;
  SweepSpec map_spec;
  map_spec.axes = {{.name = "r", .start = 1.0, .stop = 20.0, .count = 20},
                   {.name = "z", .start = 0.0, .stop = 0.0, .count = 1}};
  std::string map_beam = "lg";
  double map_phi = 0.0;
  auto* fmap = app.add_subcommand("force-map", "Series-route forces over an (r, z) grid");
  fmap->add_option("--beam", map_beam, "Beam kind")->check(CLI::IsMember({"lg", "bessel"}));
  fmap->add_option("--l", map_spec.beam.l, "Winding number");
  fmap->add_option("--p", map_spec.beam.p, "LG radial index");
  fmap->add_option("--w0", map_spec.beam.w0, "LG waist (1/k units when --k 1)");
  fmap->add_option("--k", map_spec.beam.k, "Wavenumber");
  fmap->add_option("--kperp", map_spec.beam.k_perp, "Bessel transverse wavenumber");
  fmap->add_option("--g", map_spec.beam.peak_g, "Peak Rabi ratio α/γ");
  fmap->add_option("--x", map_spec.x, "Detuning ratio Δ/γ");
  fmap->add_option("--n", map_spec.n_atoms, "Atom number")->check(CLI::PositiveNumber);
  fmap->add_option("--mu", map_spec.mu, "Reduced peak drive 2g/N (overrides --g)");
  fmap->add_option("--nu", map_spec.nu, "Reduced detuning 2x/N (overrides --x)");
  fmap->add_option("--r-min", map_spec.axes[0].start, "First radius");
  fmap->add_option("--r-max", map_spec.axes[0].stop, "Last radius");
  fmap->add_option("--r-count", map_spec.axes[0].count, "Radial grid points");
  fmap->add_option("--z-min", map_spec.axes[1].start, "First axial position");
  fmap->add_option("--z-max", map_spec.axes[1].stop, "Last axial position");
  fmap->add_option("--z-count", map_spec.axes[1].count, "Axial grid points");
  fmap->add_option("--phi", map_phi, "Azimuth of the grid plane");
  add_common(fmap, map_io, true);

  // torque
  Common torque_io;
  torque_io.format = "text";
  int torque_n = 10;
  int torque_l = 1;
  std::optional<double> torque_mu, torque_nu, torque_g, torque_x;
  std::string torque_beam = "lg";
  auto* torque = app.add_subcommand("torque", "Mean-field torque on the sample");
  torque->add_option("--n", torque_n, "Atom number")->check(CLI::PositiveNumber);
  torque->add_option("--l", torque_l, "Winding number of the beam");
  torque->add_option("--beam", torque_beam, "Beam kind (the torque law is the same)")
      ->check(CLI::IsMember({"lg", "bessel"}));
  torque->add_option("--mu", torque_mu, "Reduced drive 2g/N");
  torque->add_option("--nu", torque_nu, "Reduced detuning 2x/N");
  torque->add_option("--g", torque_g, "Rabi ratio (used when --mu is absent)");
  torque->add_option("--x", torque_x, "Detuning ratio (used when --nu is absent)");
  torque->add_option("--out", torque_io.out, "Output path (stdout when omitted)");
  torque->add_option("--format", torque_io.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));

  // meanfield-evolve
  Common mf_io;
  double mf_mu = 0.5;
  double mf_nu = 0.5;
  EvolveOptions mf_opts;
  mf_opts.sample_every = 100;
  auto* mf = app.add_subcommand("meanfield-evolve", "Integrate the mean-field moment equations");
  mf->add_option("--mu", mf_mu, "Reduced drive 2g/N")->check(CLI::NonNegativeNumber);
  mf->add_option("--nu", mf_nu, "Reduced detuning 2x/N");
  mf->add_option("--tau-max", mf_opts.tau_max, "Integration horizon in Nγt");
  mf->add_option("--dtau", mf_opts.dtau, "Step size")->check(CLI::PositiveNumber);
  mf->add_option("--sample-every", mf_opts.sample_every, "Trajectory decimation");
  add_common(mf, mf_io, false);

  // doppler
  std::optional<double> dop_force;
  double dop_mu = 0.5;
  double dop_nu = 0.5;
  int dop_n = 100;
  double dop_mass = 3.4e-25;      // roughly 205 u
  double dop_gamma = 2.0e7;       // s^-1
  double dop_wavelength = 535e-9; // m
  auto* dop = app.add_subcommand("doppler", "Doppler shift of the cooperative line");
  dop->add_option("--force", dop_force, "Total force in ħγk (default: mean-field value)");
  dop->add_option("--mu", dop_mu, "Reduced drive 2g/N");
  dop->add_option("--nu", dop_nu, "Reduced detuning 2x/N");
  dop->add_option("--n", dop_n, "Atom number")->check(CLI::PositiveNumber);
  dop->add_option("--mass", dop_mass, "Atomic mass in kg");
  dop->add_option("--gamma", dop_gamma, "Half linewidth γ in 1/s");
  dop->add_option("--wavelength", dop_wavelength, "Transition wavelength in m");

  // validate
  int val_n = 6;
  auto* val = app.add_subcommand("validate", "Run the cross-route consistency suites");
  val->add_option("--n", val_n, "Largest N for the Liouvillian suites (<= 12)")
      ->check(CLI::Range(1, 12));

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(args, {"fig1", "force-map", "torque", "meanfield-evolve",
                                "doppler", "validate"});
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    if (*fig1) {
      const auto points = run_fig1(fig1_x, fig1_g, fig1_n, fig1_io.jobs);
      emit(fig1_table(points), fig1_io);
      if (!fig1_io.out.empty()) {
        write_file(svg_path_for(fig1_io.out), fig1_svg(points));
      }
    } else if (*fmap) {
      map_spec.beam.kind = map_beam == "lg" ? BeamKind::kLaguerreGauss : BeamKind::kBessel;
      map_spec.jobs = map_io.jobs;
      emit(records_table(run_force_map(map_spec, map_phi)), map_io);
    } else if (*torque) {
      const double mu = torque_mu ? *torque_mu : 2.0 * torque_g.value_or(1.5) / torque_n;
      const double nu = torque_nu ? *torque_nu : 2.0 * torque_x.value_or(1.0) / torque_n;
      const TorqueReport rep = run_torque(ReducedDrive::make(mu, nu), torque_l, torque_n);
      std::ostringstream os;
      if (torque_io.format == "json") {
        nlohmann::ordered_json j{{"beam", torque_beam},   {"n", rep.n_atoms},
                                 {"l", rep.l},            {"mu", rep.drive.mu},
                                 {"nu", rep.drive.nu},    {"xi", rep.drive.xi},
                                 {"eta", rep.drive.eta},  {"torque_hbar_gamma", rep.torque},
                                 {"max_angular_momentum_hbar", rep.max_angular_momentum}};
        os << j.dump(2) << '\n';
      } else {
        os << "beam " << torque_beam << ", N = " << rep.n_atoms << ", l = " << rep.l
           << ", mu = " << format_number(rep.drive.mu)
           << ", nu = " << format_number(rep.drive.nu) << '\n'
           << "torque = " << format_number(rep.torque) << " hbar*gamma\n"
           << "maximum angular momentum N^2 |l| hbar = "
           << format_number(rep.max_angular_momentum) << " hbar\n";
      }
      if (torque_io.out.empty()) {
        std::cout << os.str();
      } else {
        write_file(torque_io.out, os.str());
      }
    } else if (*mf) {
      const ReducedDrive drive = ReducedDrive::make(mf_mu, mf_nu);
      const EvolveResult run = evolve(default_initial_state(), drive, mf_opts);
      emit(trajectory_table(run), mf_io);
      if (!run.converged) {
        std::cerr << "warning: not converged by tau = "
                  << format_number(run.final_state.tau) << " (residual "
                  << format_number(run.residual) << ")\n";
      }
    } else if (*dop) {
      const DopplerReport rep = run_doppler(dop_force, ReducedDrive::make(dop_mu, dop_nu),
                                            dop_n, dop_mass, dop_gamma, dop_wavelength);
      std::cout << "force = " << format_number(rep.force) << " hbar*gamma*k\n"
                << "doppler shift = " << format_number(rep.shift) << " 1/s\n";
    } else if (*val) {
      const ValidationReport rep = run_validation(val_n);
      print_validation(rep);
      return rep.all_passed() ? kExitOk : kExitValidation;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitOk;
}
