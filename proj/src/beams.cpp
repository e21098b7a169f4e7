#include "dickeforce/beams.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dickeforce {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

void require_point(const CylPoint& pt) {
  if (!(pt.r >= 0.0) || !std::isfinite(pt.r) || !std::isfinite(pt.phi) ||
      !std::isfinite(pt.z)) {
    throw std::invalid_argument("cylindrical point needs finite r >= 0, phi, z");
  }
}

void require_off_axis(int l, const CylPoint& pt) {
  if (l != 0 && pt.r == 0.0) {
    throw SingularityError("phase gradient l/r is singular on the beam axis (l = " +
                           std::to_string(l) + ")");
  }
}

// Transverse LG profile F(u) = (√2u)^a L_p^a(2u²) e^{-u²} and dF/du.
struct Profile {
  double value;
  double slope;
};

Profile lg_profile(int a, int p, double u) {
  const double root2 = std::numbers::sqrt2;
  const double poly = std::pow(root2 * u, a);
  const double dpoly = a == 0 ? 0.0 : a * root2 * std::pow(root2 * u, a - 1);
  const double s = 2.0 * u * u;
  const double lag = assoc_laguerre(p, a, s);
  const double dlag = p == 0 ? 0.0 : -assoc_laguerre(p - 1, a + 1, s) * 4.0 * u;
  const double gauss = std::exp(-u * u);
  return {poly * lag * gauss,
          (dpoly * lag + poly * dlag - 2.0 * u * poly * lag) * gauss};
}

double lg_signed_amplitude(const LaguerreGaussBeam& b, const CylPoint& pt) {
  const double w = b.width(pt.z);
  return b.peak_rabi() * (b.waist() / w) *
         lg_profile(std::abs(b.l()), b.p(), pt.r / w).value;
}

}  // namespace

LaguerreGaussBeam::LaguerreGaussBeam(int l, int p, double waist,
                                     double wavenumber, double peak_rabi)
    : l_(l), p_(p), waist_(waist), k_(wavenumber), alpha_(peak_rabi) {
  if (p < 0) {
    throw std::invalid_argument("LG beam: radial index p must be >= 0");
  }
  if (!(waist > 0.0) || !(wavenumber > 0.0) || !(peak_rabi >= 0.0)) {
    throw std::invalid_argument(
        "LG beam: need waist > 0, wavenumber > 0, peak Rabi >= 0");
  }
  z_r_ = 0.5 * k_ * waist_ * waist_;
}

double LaguerreGaussBeam::width(double z) const {
  return waist_ * std::sqrt(1.0 + (z / z_r_) * (z / z_r_));
}

BesselBeam::BesselBeam(int l, double wavenumber, double k_perp,
                       double peak_rabi)
    : l_(l), k_(wavenumber), k_perp_(k_perp), alpha_(peak_rabi) {
  if (!(wavenumber > 0.0) || !(k_perp >= 0.0) || !(k_perp < wavenumber)) {
    throw std::invalid_argument("Bessel beam: need 0 <= k_perp < k");
  }
  if (!(peak_rabi >= 0.0)) {
    throw std::invalid_argument("Bessel beam: peak Rabi must be >= 0");
  }
}

int winding_number(const BeamModel& beam) {
  return std::visit([](const auto& b) { return b.l(); }, beam);
}

double wavenumber(const BeamModel& beam) {
  return std::visit([](const auto& b) { return b.wavenumber(); }, beam);
}

double transverse_scale(const BeamModel& beam) {
  return std::visit(
      Overloaded{[](const LaguerreGaussBeam& b) { return b.waist(); },
                 [](const BesselBeam& b) {
                   return b.k_perp() > 0.0 ? 1.0 / b.k_perp()
                                           : 1.0 / b.wavenumber();
                 }},
      beam);
}

double phase(const BeamModel& beam, const CylPoint& pt) {
  require_point(pt);
  return std::visit(
      Overloaded{
          [&](const LaguerreGaussBeam& b) {
            const double k = b.wavenumber();
            const double zr = b.rayleigh_range();
            const double q = pt.z * pt.z + zr * zr;
            return k * pt.z + b.l() * pt.phi + k * pt.r * pt.r * pt.z / (2.0 * q) +
                   (2.0 * b.p() + b.l() + 1.0) * std::atan(pt.z / zr);
          },
          [&](const BesselBeam& b) {
            return b.l() * pt.phi + b.axial_wavenumber() * pt.z;
          }},
      beam);
}

CylVector phase_gradient(const BeamModel& beam, const CylPoint& pt) {
  require_point(pt);
  require_off_axis(winding_number(beam), pt);
  const double azimuthal =
      pt.r == 0.0 ? 0.0 : winding_number(beam) / pt.r;
  return std::visit(
      Overloaded{
          [&](const LaguerreGaussBeam& b) {
            const double k = b.wavenumber();
            const double zr = b.rayleigh_range();
            const double q = pt.z * pt.z + zr * zr;
            const double axial =
                k * pt.r * pt.r / (2.0 * q) * (1.0 - 2.0 * pt.z * pt.z / q) + k +
                (2.0 * b.p() + b.l() + 1.0) * zr / q;
            return CylVector{k * pt.r * pt.z / q, azimuthal, axial};
          },
          [&](const BesselBeam& b) {
            return CylVector{0.0, azimuthal, b.axial_wavenumber()};
          }},
      beam);
}

double amplitude(const BeamModel& beam, const CylPoint& pt) {
  require_point(pt);
  return std::visit(
      Overloaded{[&](const LaguerreGaussBeam& b) {
                   return std::abs(lg_signed_amplitude(b, pt));
                 },
                 [&](const BesselBeam& b) {
                   return b.peak_rabi() *
                          std::abs(bessel_j(b.l(), b.k_perp() * pt.r));
                 }},
      beam);
}

CylVector amplitude_gradient(const BeamModel& beam, const CylPoint& pt) {
  require_point(pt);
  return std::visit(
      Overloaded{
          [&](const LaguerreGaussBeam& b) {
            const double w = b.width(pt.z);
            const double u = pt.r / w;
            const Profile f = lg_profile(std::abs(b.l()), b.p(), u);
            const double scale = b.peak_rabi() * b.waist() / w;
            const double sgn = sign_of(scale * f.value);
            const double d_dr = scale * f.slope / w;
            const double d_dw = -(scale / w) * (f.value + u * f.slope);
            const double zr = b.rayleigh_range();
            const double dw_dz = b.waist() * b.waist() * pt.z / (zr * zr * w);
            return CylVector{sgn * d_dr, 0.0, sgn * d_dw * dw_dz};
          },
          [&](const BesselBeam& b) {
            const int l = b.l();
            const double arg = b.k_perp() * pt.r;
            const double sgn = sign_of(bessel_j(l, arg));
            const double slope =
                0.5 * (bessel_j(l - 1, arg) - bessel_j(l + 1, arg));
            return CylVector{sgn * b.peak_rabi() * b.k_perp() * slope, 0.0, 0.0};
          }},
      beam);
}

double assoc_laguerre(int n, int a, double x) {
  if (n < 0 || a < 0) {
    throw std::invalid_argument("assoc_laguerre: need n >= 0 and a >= 0");
  }
  double prev = 1.0;
  if (n == 0) {
    return prev;
  }
  double cur = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double bessel_j(int order, double x) {
  // J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x).
  const unsigned n = static_cast<unsigned>(std::abs(order));
  double sgn = 1.0;
  if (order < 0 && (n % 2u) == 1u) {
    sgn = -sgn;
  }
  if (x < 0.0 && (n % 2u) == 1u) {
    sgn = -sgn;
  }
  return sgn * std::cyl_bessel_j(static_cast<double>(n), std::abs(x));
}

}  // namespace dickeforce
