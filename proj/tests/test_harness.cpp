#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "dickeforce/harness.hpp"
#include "dickeforce/validation.hpp"

using namespace dickeforce;

namespace {

SweepSpec small_map(BeamKind kind, unsigned jobs) {
  SweepSpec spec;
  spec.axes = {{.name = "r", .start = 2.0, .stop = 14.0, .count = 7},
               {.name = "z", .start = -20.0, .stop = 20.0, .count = 5}};
  spec.n_atoms = 4;
  spec.x = 1.0;
  spec.beam = {.kind = kind, .l = 2, .p = 0, .w0 = 8.0, .k = 1.0, .k_perp = 0.2, .peak_g = 1.5};
  spec.jobs = jobs;
  return spec;
}

std::string csv_of(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

}  // namespace

TEST_CASE("format_number") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(std::stod(format_number(0.1 + 0.2)) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("csv and json writers") {
  Table t;
  t.columns = {"a", "b"};
  t.tag_column = "route";
  t.add_row({1.0, -0.0}, "series");
  t.add_row({0.5, 2e10}, "oracle");
  CHECK(csv_of(t) == "a,b,route\n1,0,series\n0.5,20000000000,oracle\n");

  std::ostringstream js;
  write_json(js, t);
  const auto parsed = nlohmann::json::parse(js.str());
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[1]["b"].get<double>() == 2e10);
  CHECK(parsed[0]["route"] == "series");
}

TEST_CASE("axis values") {
  const Axis lin{.name = "r", .start = 1.0, .stop = 3.0, .count = 5};
  CHECK(lin.values() == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
  const Axis lg{.name = "g", .start = 0.1, .stop = 10.0, .count = 3, .log_spaced = true};
  const auto v = lg.values();
  CHECK(v[0] == 0.1);
  CHECK(v[1] == doctest::Approx(1.0));
  CHECK(v[2] == 10.0);
  CHECK(Axis{.name = "s", .start = 4.0, .stop = 9.0, .count = 1}.values() ==
        std::vector<double>{4.0});
  CHECK_THROWS_AS((Axis{.name = "bad", .count = 0}.values()), std::invalid_argument);
  CHECK_THROWS_AS((Axis{.name = "bad", .start = -1.0, .stop = 1.0, .count = 3, .log_spaced = true}
                       .values()),
                  std::invalid_argument);
  CHECK_THROWS_AS((Axis{.name = "bad", .start = NAN, .stop = 1.0, .count = 3}.values()),
                  std::invalid_argument);
}

TEST_CASE("parallel_map keeps index order and forwards exceptions") {
  const auto squares = parallel_map<int>(1000, 8, [](std::size_t i) { return int(i * i); });
  for (std::size_t i = 0; i < squares.size(); ++i) {
    CHECK(squares[i] == int(i * i));
  }
  CHECK(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
  CHECK_THROWS_AS(parallel_map<int>(50, 4,
                                    [](std::size_t i) -> int {
                                      if (i == 17) throw std::runtime_error("boom");
                                      return 0;
                                    }),
                  std::runtime_error);
}

TEST_CASE("fig1 run") {
  const auto points = run_fig1(1.0, 1.5, 200, 4);
  REQUIRE(points.size() == 200);
  const Table t = fig1_table(points);
  CHECK(t.columns == std::vector<std::string>{"N", "f_dip", "f_diss"});
  CHECK(t.rows[0][0] == 1.0);
  CHECK(t.rows[0][1] == doctest::Approx(1.5 / 6.5).epsilon(1e-14));
  CHECK(t.rows[0][2] == doctest::Approx(1.0 / 6.5).epsilon(1e-14));
  CHECK(points.back().f_diss > 0.9);
  CHECK(csv_of(t) == csv_of(fig1_table(run_fig1(1.0, 1.5, 200, 1))));

  const std::string svg = fig1_svg(run_fig1(1.0, 1.5, 1, 1));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK_THROWS_AS(run_fig1(1.0, 1.5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_fig1(1.0, 0.0, 5, 1), std::domain_error);
}

TEST_CASE("force map") {
  SUBCASE("parallel and serial runs are byte-identical") {
    for (const auto kind : {BeamKind::kLaguerreGauss, BeamKind::kBessel}) {
      const auto serial = run_force_map(small_map(kind, 1));
      const auto parallel = run_force_map(small_map(kind, 6));
      CHECK(csv_of(records_table(serial)) == csv_of(records_table(parallel)));
      for (const auto& rec : serial) CHECK(rec.all_finite());
    }
  }
  SUBCASE("zero detuning gives zero dipole force") {
    SweepSpec spec = small_map(BeamKind::kLaguerreGauss, 2);
    spec.x = 0.0;
    for (const auto& rec : run_force_map(spec)) {
      CHECK(rec.force.dipole.norm() == 0.0);
    }
  }
  SUBCASE("Bessel axial dissipative force follows the axial wavenumber") {
    const SweepSpec spec = small_map(BeamKind::kBessel, 2);
    const BesselBeam beam(2, 1.0, 0.2, 1.5);
    for (const auto& rec : run_force_map(spec)) {
      const CylPoint pt{.r = rec.coords[0].second, .phi = 0.0, .z = rec.coords[1].second};
      const double g = amplitude(BeamModel{beam}, pt);
      if (g == 0.0) continue;
      CHECK(rec.force.dissipative.z / (2.0 * g * g * rec.f_diss) ==
            doctest::Approx(beam.axial_wavenumber()).epsilon(1e-12));
      CHECK(rec.torque == doctest::Approx(2.0 * 2.0 * g * g * rec.f_diss).epsilon(1e-12));
    }
  }
  SUBCASE("mu and nu override g and x") {
    SweepSpec spec = small_map(BeamKind::kLaguerreGauss, 1);
    spec.mu = 0.5;
    spec.nu = 1.0;
    CHECK(spec.resolved_peak_g() == 1.0);
    CHECK(spec.resolved_x() == 2.0);
  }
  SUBCASE("axis grid through the vortex core is rejected") {
    SweepSpec spec = small_map(BeamKind::kLaguerreGauss, 1);
    spec.axes[0].start = 0.0;
    CHECK_THROWS_AS(run_force_map(spec), std::invalid_argument);
    spec.beam.l = 0;
    CHECK_NOTHROW(run_force_map(spec));
  }
  SUBCASE("shape errors") {
    SweepSpec spec = small_map(BeamKind::kLaguerreGauss, 1);
    spec.axes.pop_back();
    CHECK_THROWS_AS(run_force_map(spec), std::invalid_argument);
    spec = small_map(BeamKind::kLaguerreGauss, 1);
    spec.n_atoms = 0;
    CHECK_THROWS_AS(run_force_map(spec), std::invalid_argument);
  }
}

TEST_CASE("torque and doppler reports") {
  const TorqueReport t = run_torque(ReducedDrive::make(2.0, 0.0), 1, 10);
  CHECK(t.torque == doctest::Approx(50.0));
  CHECK(t.max_angular_momentum == 100.0);
  const DopplerReport given = run_doppler(3.0, ReducedDrive::make(1.0, 1.0), 4, 1e-25, 1e7, 5e-7);
  CHECK(given.force == 3.0);
  CHECK(given.shift == doctest::Approx(doppler_shift_estimate(3.0, 1e-25, 4, 1e7, 5e-7)));
  const ReducedDrive d = ReducedDrive::make(1.0, 1.0);
  const DopplerReport derived = run_doppler(std::nullopt, d, 4, 1e-25, 1e7, 5e-7);
  CHECK(derived.force == doctest::Approx(16.0 * steady_observables(d).diss_per_grad_theta));
}

TEST_CASE("trajectory table") {
  const EvolveResult run = evolve(default_initial_state(), ReducedDrive::make(1.0, 1.0),
                                  {.tau_max = 1.0, .dtau = 0.1, .sample_every = 5});
  const Table t = trajectory_table(run);
  CHECK(t.rows.size() == run.trajectory.size());
  CHECK(t.columns.front() == "tau");
}

TEST_CASE("validation suites") {
  const ValidationReport rep = run_validation(6);
  REQUIRE(rep.suites.size() == 4);
  for (const auto& s : rep.suites) {
    INFO(s.name, " max_error=", s.max_error, " ", s.detail);
    CHECK(s.passed);
    CHECK(s.cases > 0);
  }
  CHECK(rep.all_passed());
  CHECK_THROWS_AS(run_validation(0), std::invalid_argument);
  CHECK_THROWS_AS(run_validation(13), std::invalid_argument);

  SUBCASE("a sign slip in the dissipative route is caught") {
    const ForceRoute broken = [](const CollectiveParams& p, const CylVector& ga,
                                 const CylVector& gt) {
      ForceVector f = dimensional_forces_at_point(p, ga, gt);
      f.dissipative = -1.0 * f.dissipative;
      return f;
    };
    const ValidationReport bad = run_validation(3, broken);
    CHECK_FALSE(bad.all_passed());
    CHECK(bad.suites[2].max_error > 1e-8);
  }
}
