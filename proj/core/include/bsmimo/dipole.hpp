#pragma once

#include <array>

#include "bsmimo/netport.hpp"
#include "bsmimo/pattern.hpp"

namespace bsmimo {

/// Analytic surrogate radiator: three thin parallel z-directed dipoles with
/// sinusoidal current profiles. The center element feeds port 0; the mirror
/// elements at y = +spacing and y = -spacing feed ports 1 and 2. Port
/// quantities are referenced to the element current maximum.
struct DipoleTriadGeometry {
  double spacing = 0.0;         // m, center-to-neighbor
  double element_length = 0.0;  // m
  double wire_radius = 0.0;     // m
  double frequency = 0.0;       // Hz

  double wavelength() const;
  double wavenumber() const;
  /// Throws OutOfValidityDomain outside the closed-form validity domain.
  void validate() const;
};

/// Self impedance of a thin dipole (induced-EMF closed form in sine/cosine
/// integrals, current-maximum reference). For a half-wave element this is the
/// classic 73.1 + j42.5 ohms.
Complex dipole_self_impedance(double length, double wire_radius, double k);

/// Mutual impedance of two parallel side-by-side equal-length dipoles
/// (induced-EMF closed form, current-maximum reference). For half-wave
/// elements at 0.5 wavelength separation this is the classic -12.5 - j29.9.
Complex dipole_mutual_impedance(double length, double separation, double k);

/// Reciprocal, mirror-symmetric port impedance matrix of the triad.
ImpedanceMatrix3 triad_impedance_matrix(const DipoleTriadGeometry& geom);

/// Embedded element patterns on the canonical grid, one per port, for unit
/// reference current: the finite-dipole pattern times the phase of the
/// element offset. Ports 1 and 2 are exact mirror images in phi.
std::array<FarFieldPattern, 3> embedded_patterns(const DipoleTriadGeometry& geom,
                                                 GridSize grid);

}  // namespace bsmimo
