#pragma once

#include <array>
#include <string>
#include <vector>

#include "bsmimo/dipole.hpp"
#include "bsmimo/netport.hpp"
#include "bsmimo/pattern.hpp"

namespace bsmimo {

/// Parametric user-body perturbation: a uniform absorption factor, a smooth
/// complex angular shadow window, and an additive near-field coupling term on
/// the port impedance matrix. The identity mask leaves everything untouched.
struct PhantomMask {
  double absorption = 0.0;        // fraction of radiated power removed uniformly
  double shadow_amplitude = 0.0;  // depth of the angular dip, in [0, 1]
  double shadow_center_theta = 0.0;  // radians
  double shadow_center_phi = 0.0;    // radians
  double shadow_width = 0.5;         // radians, Gaussian angular width (> 0)
  double shadow_phase = 0.0;         // radians, phase offset inside the window
  std::array<Complex, 9> coupling_delta{};  // ohms, row-major, reciprocal

  bool is_identity() const;
  /// Throws Error when a parameter is outside its admissible range or the
  /// coupling term is not reciprocal.
  void validate() const;
};

/// Multiplies the field pointwise by sqrt(1 - absorption) and by the complex
/// shadow window (1 - shadow_amplitude*g) * exp(j*shadow_phase*g), where g is
/// a Gaussian in the great-circle angle from the shadow center. Never
/// increases radiated power.
FarFieldPattern apply_phantom(const FarFieldPattern& p, const PhantomMask& mask);

/// z + coupling_delta. The result stays reciprocal but in general is no
/// longer mirror-symmetric, which splits the two states' reflection
/// coefficients.
ImpedanceMatrix3 perturb_impedance(const ImpedanceMatrix3& z, const PhantomMask& mask);

/// A named operating scenario: perturbation mask plus the reactive load pair
/// the antenna embeds in that scenario.
struct ScenarioPreset {
  std::string name;
  double distance_mm = -1.0;  // antenna-to-head distance where applicable
  PhantomMask mask;
  ReactiveLoadPair loads;
};

/// The shipped scenario presets: free-space, near-head-d5, near-head-d7.5,
/// near-head-d10, in-hand, talking. Mask parameters are calibrated against
/// the reference measurement campaign; free-space carries the identity mask.
const std::vector<ScenarioPreset>& scenario_presets();

/// Throws Error for an unknown name.
const ScenarioPreset& preset_by_name(const std::string& name);

/// The shipped triad geometry the presets were calibrated with.
DipoleTriadGeometry default_geometry();

}  // namespace bsmimo
