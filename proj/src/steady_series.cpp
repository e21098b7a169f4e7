#include "dickeforce/steady_series.hpp"

#include <math.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace dickeforce {

namespace {

// lgamma_r leaves the global signgam alone, so sweeps can run in parallel.
double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

void require_drive(const CollectiveParams& params) {
  params.validate();
  if (params.rabi_ratio == 0.0) {
    throw std::domain_error(
        "steady series diverges at g = 0 (inverse powers of g); use the "
        "brute-force route for the undriven limit");
  }
}

}  // namespace

void LogSumExp::add(double log_term) {
  if (log_term == -std::numeric_limits<double>::infinity()) {
    return;
  }
  if (log_term <= max_) {
    scaled_sum_ += std::exp(log_term - max_);
  } else {
    scaled_sum_ = scaled_sum_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
  }
}

double LogSumExp::value() const {
  if (scaled_sum_ == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return max_ + std::log(scaled_sum_);
}

double log_q_product(int m, double x) {
  if (m < 0) {
    throw std::invalid_argument("log_q_product: m must be >= 0");
  }
  const double x2 = x * x;
  double acc = 0.0;
  for (int j = 1; j <= m; ++j) {
    acc += std::log(static_cast<double>(j) * j + x2);
  }
  return acc;
}

double log_combinatorial(int n_atoms, int m) {
  if (m < 0 || m > n_atoms) {
    throw std::invalid_argument("log_combinatorial: need 0 <= m <= N, got m = " +
                                std::to_string(m) + ", N = " +
                                std::to_string(n_atoms));
  }
  return log_gamma(n_atoms + m + 2.0) - log_gamma(n_atoms - m + 1.0) -
         log_gamma(2.0 * m + 2.0);
}

SeriesPoint evaluate_series(const CollectiveParams& params) {
  require_drive(params);
  const int n = params.n_atoms;
  const double x2 = params.detuning_ratio * params.detuning_ratio;
  const double log_g = std::log(params.rabi_ratio);

  LogSumExp norm;
  LogSumExp dip;
  LogSumExp diss;
  double log_q_prev = 0.0;  // ln Q_{m-1}
  double log_q = 0.0;       // ln Q_m
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      log_q_prev = log_q;
      log_q += std::log(static_cast<double>(m) * m + x2);
    }
    const double base = log_combinatorial(n, m) - 2.0 * m * log_g;
    norm.add(log_q + base);
    if (m > 0) {
      const double log_m = std::log(static_cast<double>(m));
      dip.add(log_m + log_q_prev + base + log_g);
      diss.add(2.0 * log_m + log_q_prev + base);
    }
  }

  SeriesPoint out;
  out.params = params;
  out.log_D = norm.value();
  out.f_dip = std::exp(dip.value() - out.log_D);
  out.f_diss = std::exp(diss.value() - out.log_D);
  return out;
}

double normalization_logD(const CollectiveParams& params) {
  return evaluate_series(params).log_D;
}

double f_dip_normalized(const CollectiveParams& params) {
  return evaluate_series(params).f_dip;
}

double f_diss_normalized(const CollectiveParams& params) {
  return evaluate_series(params).f_diss;
}

std::vector<SeriesPoint> fig1_curve(std::span<const int> n_range, double x,
                                    double g) {
  std::vector<SeriesPoint> out;
  out.reserve(n_range.size());
  for (const int n : n_range) {
    out.push_back(evaluate_series({.n_atoms = n,
                                   .detuning_ratio = x,
                                   .rabi_ratio = g}));
  }
  return out;
}

ForceVector dimensional_forces_at_point(const CollectiveParams& params,
                                        const CylVector& grad_amp,
                                        const CylVector& grad_theta) {
  const SeriesPoint pt = evaluate_series(params);
  const double g = params.rabi_ratio;
  return {.dipole = 2.0 * params.detuning_ratio * pt.f_dip * grad_amp,
          .dissipative = 2.0 * g * g * pt.f_diss * grad_theta};
}

}  // namespace dickeforce
