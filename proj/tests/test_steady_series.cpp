#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include "dickeforce/dicke_algebra.hpp"
#include "dickeforce/steady_series.hpp"

using namespace dickeforce;

namespace {

// Linear-space reference sums with exact factorials; only usable for small N
// but shares no code with the log-space path.
struct DirectSums {
  double d, f_dip, f_diss;
};

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

double q_direct(int m, double x) {
  double q = 1.0;
  for (int j = 1; j <= m; ++j) q *= j * j + x * x;
  return q;
}

DirectSums direct(int n, double x, double g) {
  DirectSums s{0.0, 0.0, 0.0};
  for (int m = 0; m <= n; ++m) {
    const double c = factorial(n + m + 1) / (factorial(n - m) * factorial(2 * m + 1));
    s.d += q_direct(m, x) * c / std::pow(g, 2 * m);
    if (m > 0) {
      s.f_dip += m * q_direct(m - 1, x) * c / std::pow(g, 2 * m - 1);
      s.f_diss += m * m * q_direct(m - 1, x) * c / std::pow(g, 2 * m);
    }
  }
  s.f_dip /= s.d;
  s.f_diss /= s.d;
  return s;
}

}  // namespace

TEST_CASE("log-sum-exp accumulator") {
  LogSumExp acc;
  CHECK(std::isinf(acc.value()));
  acc.add(1000.0);
  acc.add(1000.0);
  CHECK(acc.value() == doctest::Approx(1000.0 + std::log(2.0)));
  LogSumExp mixed;
  for (const double t : {-3.0, 2.0, 0.5, 7.0, -700.0}) mixed.add(t);
  CHECK(mixed.value() == doctest::Approx(std::log(std::exp(-3.0) + std::exp(2.0) + std::exp(0.5) +
                                                  std::exp(7.0) + std::exp(-700.0))));
}

TEST_CASE("log_q_product") {
  CHECK(log_q_product(0, 5.0) == 0.0);
  CHECK(log_q_product(2, 1.0) == doctest::Approx(std::log(10.0)));
  CHECK(log_q_product(3, 0.0) == doctest::Approx(std::log(36.0)));
  CHECK(log_q_product(4, -2.0) == doctest::Approx(log_q_product(4, 2.0)));
  CHECK_THROWS_AS(log_q_product(-1, 0.0), std::invalid_argument);
}

TEST_CASE("log_combinatorial") {
  CHECK(log_combinatorial(1, 0) == doctest::Approx(std::log(2.0)));
  CHECK(log_combinatorial(2, 1) == doctest::Approx(std::log(4.0)));
  for (int n = 1; n <= 30; ++n) {
    CHECK(std::abs(log_combinatorial(n, n)) < 1e-12);
  }
  CHECK(std::isfinite(log_combinatorial(500, 250)));
  CHECK_THROWS_AS(log_combinatorial(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(log_combinatorial(3, -1), std::invalid_argument);
}

TEST_CASE("normalization D") {
  CHECK(std::exp(normalization_logD({.n_atoms = 1, .detuning_ratio = 1.0, .rabi_ratio = 1.5})) ==
        doctest::Approx(2.0 + 2.0 / 2.25).epsilon(1e-14));
  CHECK(std::exp(normalization_logD({.n_atoms = 2, .detuning_ratio = 1.0, .rabi_ratio = 1.5})) ==
        doctest::Approx(3.0 + 8.0 / 2.25 + 10.0 / 5.0625).epsilon(1e-14));
  CHECK(std::exp(normalization_logD({.n_atoms = 1, .detuning_ratio = 0.0, .rabi_ratio = 1e8})) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(normalization_logD({.n_atoms = 2, .detuning_ratio = 1.0, .rabi_ratio = 0.0}),
                  std::domain_error);
}

TEST_CASE("normalized forces: hand values and direct sums") {
  const CollectiveParams one{.n_atoms = 1, .detuning_ratio = 1.0, .rabi_ratio = 1.5};
  CHECK(f_dip_normalized(one) == doctest::Approx(1.5 / 6.5).epsilon(1e-14));
  CHECK(f_diss_normalized(one) == doctest::Approx(1.0 / 6.5).epsilon(1e-14));

  const CollectiveParams two{.n_atoms = 2, .detuning_ratio = 1.0, .rabi_ratio = 1.5};
  const double d2 = 3.0 + 8.0 / 2.25 + 10.0 / 5.0625;
  CHECK(f_dip_normalized(two) == doctest::Approx((4.0 / 1.5 + 4.0 / 3.375) / d2).epsilon(1e-14));
  CHECK(f_dip_normalized(two) == doctest::Approx(0.4515195369).epsilon(1e-9));
  CHECK(f_diss_normalized(two) == doctest::Approx((4.0 / 2.25 + 8.0 / 5.0625) / d2).epsilon(1e-14));

  for (int n = 1; n <= 15; ++n) {
    for (const double x : {0.0, 0.3, 2.0}) {
      for (const double g : {0.4, 1.5, 6.0}) {
        const DirectSums ref = direct(n, x, g);
        const SeriesPoint pt = evaluate_series({.n_atoms = n, .detuning_ratio = x, .rabi_ratio = g});
        CHECK(pt.log_D == doctest::Approx(std::log(ref.d)).epsilon(1e-12));
        CHECK(pt.f_dip == doctest::Approx(ref.f_dip).epsilon(1e-12));
        CHECK(pt.f_diss == doctest::Approx(ref.f_diss).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("f_diss stays in (0, 1) and f_dip >= 0") {
  for (int n = 1; n <= 100; n += 3) {
    for (const double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
      for (const double g : {0.1, 0.5, 1.5, 4.0, 10.0}) {
        const SeriesPoint pt = evaluate_series({.n_atoms = n, .detuning_ratio = x, .rabi_ratio = g});
        CHECK(pt.f_diss > 0.0);
        CHECK(pt.f_diss < 1.0);
        CHECK(pt.f_dip >= 0.0);
      }
    }
  }
}

TEST_CASE("large N stays finite") {
  const SeriesPoint pt = evaluate_series({.n_atoms = 500, .detuning_ratio = 1.0, .rabi_ratio = 1.5});
  CHECK(std::isfinite(pt.log_D));
  CHECK(std::isfinite(pt.f_dip));
  CHECK(pt.f_diss > 0.0);
  CHECK(pt.f_diss < 1.0);
}

TEST_CASE("fig1 curve at x = 1, g = 1.5") {
  std::vector<int> ns(100);
  std::iota(ns.begin(), ns.end(), 1);
  const auto curve = fig1_curve(ns, 1.0, 1.5);
  REQUIRE(curve.size() == 100);
  CHECK(curve.front().f_dip == doctest::Approx(0.230769230769).epsilon(1e-10));
  CHECK(curve.front().f_diss == doctest::Approx(0.153846153846).epsilon(1e-10));
  double peak = 0.0;
  int peak_n = 0;
  for (const auto& p : curve) {
    CHECK(p.f_diss > 0.0);
    CHECK(p.f_diss < 1.0);
    if (p.f_dip > peak) {
      peak = p.f_dip;
      peak_n = p.params.n_atoms;
    }
  }
  CHECK(peak_n > 1);
  CHECK(peak_n < 100);
  CHECK(peak > curve.front().f_dip);
  CHECK(peak > curve.back().f_dip);
}

TEST_CASE("dimensional forces") {
  const CylVector ga{0.2, 0.0, 1.0};
  const CylVector gt{0.0, 0.3, 1.0};
  SUBCASE("N = 1 closed forms") {
    for (const double x : {-1.0, 0.5, 2.5}) {
      for (const double g : {0.3, 1.0, 2.0}) {
        const ForceVector f =
            dimensional_forces_at_point({.n_atoms = 1, .detuning_ratio = x, .rabi_ratio = g}, ga, gt);
        const double denom = 1.0 + x * x + 2.0 * g * g;
        CHECK(f.dipole.z == doctest::Approx(2.0 * g * x / denom).epsilon(1e-12));
        CHECK(f.dissipative.z == doctest::Approx(2.0 * g * g / denom).epsilon(1e-12));
      }
    }
  }
  SUBCASE("zero phase gradient gives exactly zero dissipative force") {
    const ForceVector f =
        dimensional_forces_at_point({.n_atoms = 7, .detuning_ratio = 1.0, .rabi_ratio = 1.0}, ga, {});
    CHECK(f.dissipative == CylVector{});
  }
  SUBCASE("zero detuning gives zero dipole force") {
    const ForceVector f =
        dimensional_forces_at_point({.n_atoms = 9, .detuning_ratio = 0.0, .rabi_ratio = 1.0}, ga, gt);
    CHECK(f.dipole.norm() == 0.0);
  }
  SUBCASE("agrees with the Liouvillian for N <= 6") {
    for (int n = 1; n <= 6; ++n) {
      for (const double x : {-0.7, 1.0}) {
        for (const double g : {0.6, 2.2}) {
          const CollectiveParams p{.n_atoms = n, .detuning_ratio = x, .rabi_ratio = g, .phase = -0.4};
          const ForceVector series = dimensional_forces_at_point(p, ga, gt);
          const ForceVector oracle = bruteforce_forces(p, ga, gt);
          CHECK(series.dipole.z == doctest::Approx(oracle.dipole.z).epsilon(1e-8));
          CHECK(series.dissipative.z == doctest::Approx(oracle.dissipative.z).epsilon(1e-8));
          CHECK(series.dissipative.phi == doctest::Approx(oracle.dissipative.phi).epsilon(1e-8));
        }
      }
    }
  }
}
