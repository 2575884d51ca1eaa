#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "bsmimo/text_format.hpp"

namespace bsmimo {

struct GridSize {
  int ntheta = 181;
  int nphi = 360;
};

/// Gridded complex far field over the full sphere, sqrt(W/sr) normalization:
/// integrating |e_theta|^2 + |e_phi|^2 against sin(theta) dtheta dphi yields
/// the radiated power in watts.
///
/// The grid is canonical: theta uniform over [0, pi] inclusive, phi uniform
/// over [0, 2*pi) starting at 0. Values are theta-major, index = it*nphi + ip.
struct FarFieldPattern {
  std::vector<double> theta;  // radians, size ntheta >= 2
  std::vector<double> phi;    // radians, size nphi >= 1
  std::vector<Complex> e_theta;
  std::vector<Complex> e_phi;
  std::string tag;  // free-text provenance

  int ntheta() const { return int(theta.size()); }
  int nphi() const { return int(phi.size()); }
  std::size_t index(int it, int ip) const { return std::size_t(it) * phi.size() + std::size_t(ip); }

  /// Throws NonUniformGrid / Error when the canonical-grid invariants fail.
  void validate() const;
  bool same_grid(const FarFieldPattern& other) const;
};

/// Zero-filled pattern on the canonical grid.
FarFieldPattern make_pattern_grid(GridSize size, std::string tag = {});

/// Quadrature weights in theta for the module's fixed spherical rule: the
/// field is taken piecewise linear between theta nodes and integrated against
/// the exact sin(theta) measure panel by panel (the sum of the weights is
/// exactly cos(theta_front) - cos(theta_back)). In phi the rule is the
/// periodic rectangle rule with weight 2*pi/nphi.
std::vector<double> theta_quadrature_weights(const std::vector<double>& theta);

/// Total radiated power (watts) by the fixed quadrature rule.
double radiated_power(const FarFieldPattern& p);

/// Pointwise superposition sum_k currents[k] * patterns[k] for both
/// polarizations. Throws GridMismatch when the grids differ.
FarFieldPattern compose_state_field(const std::array<Complex, 3>& currents,
                                    const std::array<FarFieldPattern, 3>& patterns);

/// CSV pattern file, UTF-8. Header:
///   # ffpattern v1 ntheta=<a> nphi=<b> norm=sqrtW_per_sr
/// then ntheta*nphi rows "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi"
/// in theta-major order. Field values round-trip bit-exactly (shortest
/// decimal rendering); angles are validated against the canonical grid.
FarFieldPattern load_pattern_file(const std::string& path);
void save_pattern_file(const std::string& path, const FarFieldPattern& p);

}  // namespace bsmimo
