#include "bsmimo/dipole.hpp"

#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <numbers>

#include "bsmimo/errors.hpp"

namespace bsmimo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSpeedOfLight = 299792458.0;       // m/s
constexpr double kEta0 = 376.73031346177066;        // ohms, free-space impedance

// G(u) = Ci(u) - j*Si(u), the antiderivative kernel of exp(-j*u)/u
Complex gfun(double u) { return {gsl_sf_Ci(u), -gsl_sf_Si(u)}; }

// k*(R + w) and k*(R - w) with R = hypot(d, w), evaluated without
// cancellation when w and the selected sign oppose each other
double arg_plus(double k, double d, double w) {
  const double r = std::hypot(d, w);
  return k * (w >= 0.0 ? r + w : d * d / (r - w));
}

double arg_minus(double k, double d, double w) {
  const double r = std::hypot(d, w);
  return k * (w <= 0.0 ? r - w : d * d / (r + w));
}

// integral of exp(-j*k*R)/R * exp(-j*k*z) dz over [alpha, beta],
// R = sqrt(d^2 + (z - s)^2)
Complex j_minus(double k, double d, double s, double alpha, double beta) {
  const Complex g1 = gfun(arg_plus(k, d, beta - s));
  const Complex g0 = gfun(arg_plus(k, d, alpha - s));
  return std::polar(1.0, -k * s) * (g1 - g0);
}

// integral of exp(-j*k*R)/R * exp(+j*k*z) dz over [alpha, beta]
Complex j_plus(double k, double d, double s, double alpha, double beta) {
  const Complex g1 = gfun(arg_minus(k, d, beta - s));
  const Complex g0 = gfun(arg_minus(k, d, alpha - s));
  return -std::polar(1.0, k * s) * (g1 - g0);
}

// integral of exp(-j*k*R_s)/R_s * sin(k*(h - |z|)) dz over [-h, h], with the
// source point shifted to z = s
Complex m_term(double k, double d, double s, double h) {
  const Complex ejkh = std::polar(1.0, k * h);
  const Complex sum = ejkh * (j_minus(k, d, s, 0.0, h) + j_plus(k, d, s, -h, 0.0)) -
                      std::conj(ejkh) * (j_plus(k, d, s, 0.0, h) + j_minus(k, d, s, -h, 0.0));
  return sum / Complex(0.0, 2.0);
}

// induced-EMF coupling of two parallel sinusoidal-current filaments of
// half-length h at transverse distance d, referenced to the current maxima
Complex sinusoidal_coupling(double k, double d, double h) {
  const Complex m = m_term(k, d, h, h) + m_term(k, d, -h, h) -
                    2.0 * std::cos(k * h) * m_term(k, d, 0.0, h);
  return Complex(0.0, kEta0 / (4.0 * kPi)) * m;
}

}  // namespace

double DipoleTriadGeometry::wavelength() const { return kSpeedOfLight / frequency; }
double DipoleTriadGeometry::wavenumber() const { return 2.0 * kPi / wavelength(); }

void DipoleTriadGeometry::validate() const {
  if (!(frequency > 0.0) || !std::isfinite(frequency))
    throw OutOfValidityDomain("frequency must be positive");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw OutOfValidityDomain("spacing must be positive");
  if (!(element_length > 0.0) || !std::isfinite(element_length))
    throw OutOfValidityDomain("element_length must be positive");
  if (!(wire_radius > 0.0) || !std::isfinite(wire_radius))
    throw OutOfValidityDomain("wire_radius must be positive");
  if (wire_radius > element_length / 50.0)
    throw OutOfValidityDomain("wire_radius must be thin relative to element_length");
  if (element_length >= 1.5 * wavelength())
    throw OutOfValidityDomain("element_length must stay below 1.5 wavelengths");
  if (spacing < 5.0 * wire_radius)
    throw OutOfValidityDomain("spacing too small for the filament coupling model");
}

Complex dipole_self_impedance(double length, double wire_radius, double k) {
  if (!(length > 0.0) || !(wire_radius > 0.0) || !(k > 0.0))
    throw OutOfValidityDomain("length, wire_radius and k must be positive");
  return sinusoidal_coupling(k, wire_radius, 0.5 * length);
}

Complex dipole_mutual_impedance(double length, double separation, double k) {
  if (!(length > 0.0) || !(separation > 0.0) || !(k > 0.0))
    throw OutOfValidityDomain("length, separation and k must be positive");
  return sinusoidal_coupling(k, separation, 0.5 * length);
}

ImpedanceMatrix3 triad_impedance_matrix(const DipoleTriadGeometry& geom) {
  geom.validate();
  const double k = geom.wavenumber();
  const Complex self = dipole_self_impedance(geom.element_length, geom.wire_radius, k);
  const Complex near = dipole_mutual_impedance(geom.element_length, geom.spacing, k);
  const Complex far = dipole_mutual_impedance(geom.element_length, 2.0 * geom.spacing, k);
  ImpedanceMatrix3 z;
  z(0, 0) = self;
  z(1, 1) = self;
  z(2, 2) = self;
  z(0, 1) = near;
  z(1, 0) = near;
  z(0, 2) = near;
  z(2, 0) = near;
  z(1, 2) = far;
  z(2, 1) = far;
  return z;
}

std::array<FarFieldPattern, 3> embedded_patterns(const DipoleTriadGeometry& geom,
                                                 GridSize grid) {
  geom.validate();
  const double k = geom.wavenumber();
  const double kh = 0.5 * k * geom.element_length;
  const double coskh = std::cos(kh);
  // |e|^2 integrates to the radiated power of a unit reference current, so
  // the pattern overlap matrix reproduces Re(Z) of the triad
  const double c0 = std::sqrt(kEta0 / (8.0 * kPi * kPi));

  std::array<FarFieldPattern, 3> pats = {make_pattern_grid(grid, "element-0"),
                                         make_pattern_grid(grid, "element-1"),
                                         make_pattern_grid(grid, "element-2")};
  const int nt = grid.ntheta;
  const int np = grid.nphi;
  for (int it = 0; it < nt; ++it) {
    const double th = pats[0].theta[std::size_t(it)];
    const double sth = std::sin(th);
    const double f = sth < 1e-12 ? 0.0 : c0 * (std::cos(kh * std::cos(th)) - coskh) / sth;
    for (int ip = 0; ip < np; ++ip) {
      const std::size_t idx = pats[0].index(it, ip);
      const double ph = pats[0].phi[std::size_t(ip)];
      // phase of the element offset along +y / -y
      const double psi = k * geom.spacing * sth * std::sin(ph);
      pats[0].e_theta[idx] = Complex(f, 0.0);
      pats[1].e_theta[idx] = std::polar(f, psi);
      pats[2].e_theta[idx] = std::polar(f, -psi);
    }
  }
  return pats;
}

}  // namespace bsmimo
