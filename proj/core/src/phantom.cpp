#include "bsmimo/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsmimo/errors.hpp"

namespace bsmimo {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool PhantomMask::is_identity() const {
  if (absorption != 0.0 || shadow_amplitude != 0.0 || shadow_phase != 0.0) return false;
  for (const auto& d : coupling_delta)
    if (d != Complex{}) return false;
  return true;
}

void PhantomMask::validate() const {
  if (!(absorption >= 0.0 && absorption <= 1.0)) throw Error("absorption must be in [0, 1]");
  if (!(shadow_amplitude >= 0.0 && shadow_amplitude <= 1.0))
    throw Error("shadow_amplitude must be in [0, 1]");
  if (!(shadow_width > 0.0)) throw Error("shadow_width must be positive");
  if (!std::isfinite(shadow_center_theta) || !std::isfinite(shadow_center_phi) ||
      !std::isfinite(shadow_phase))
    throw Error("shadow parameters must be finite");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Complex a = coupling_delta[std::size_t(3 * i + j)];
      const Complex b = coupling_delta[std::size_t(3 * j + i)];
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
        throw Error("coupling_delta entries must be finite");
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw Error("coupling_delta must be reciprocal");
    }
}

FarFieldPattern apply_phantom(const FarFieldPattern& p, const PhantomMask& mask) {
  mask.validate();
  if (mask.is_identity()) return p;

  FarFieldPattern out = p;
  const double att = std::sqrt(1.0 - mask.absorption);
  const double ct0 = std::cos(mask.shadow_center_theta);
  const double st0 = std::sin(mask.shadow_center_theta);
  const double inv2w2 = 1.0 / (2.0 * mask.shadow_width * mask.shadow_width);
  const bool shadowed = mask.shadow_amplitude != 0.0 || mask.shadow_phase != 0.0;

  const int nt = p.ntheta();
  const int np = p.nphi();
  for (int it = 0; it < nt; ++it) {
    const double th = p.theta[std::size_t(it)];
    const double ct = std::cos(th);
    const double st = std::sin(th);
    for (int ip = 0; ip < np; ++ip) {
      const std::size_t idx = p.index(it, ip);
      Complex w(att, 0.0);
      if (shadowed) {
        const double cang = std::clamp(
            ct * ct0 + st * st0 * std::cos(p.phi[std::size_t(ip)] - mask.shadow_center_phi), -1.0,
            1.0);
        const double delta = std::acos(cang);  // great-circle angle to the shadow center
        const double g = std::exp(-delta * delta * inv2w2);
        w *= (1.0 - mask.shadow_amplitude * g) * std::polar(1.0, mask.shadow_phase * g);
      }
      out.e_theta[idx] = p.e_theta[idx] * w;
      out.e_phi[idx] = p.e_phi[idx] * w;
    }
  }
  out.tag = p.tag.empty() ? "masked" : p.tag + ":masked";
  return out;
}

ImpedanceMatrix3 perturb_impedance(const ImpedanceMatrix3& z, const PhantomMask& mask) {
  z.require_reciprocal();
  mask.validate();
  ImpedanceMatrix3 out = z;
  for (std::size_t i = 0; i < 9; ++i) out.m[i] += mask.coupling_delta[i];
  return out;
}

namespace {

// The near-field coupling term scales a common reciprocal stencil: `detune`
// loads both parasitic ports (pushing the two states' currents together,
// which raises the basis power imbalance), while `asym` loads the port facing
// the body more than its mirror twin (breaking the state symmetry, which
// feeds the basis correlation and splits the per-state reflection).
void fill_coupling(PhantomMask& m, double detune, double asym) {
  m.coupling_delta[0] = detune * Complex(1.2, 3.0);
  m.coupling_delta[4] = detune * Complex(4.0, 10.0) * (1.0 + asym);
  m.coupling_delta[8] = detune * Complex(4.0, 10.0);
  m.coupling_delta[1] = m.coupling_delta[3] = detune * Complex(0.6, 1.5) * (1.0 + asym);
  m.coupling_delta[2] = m.coupling_delta[6] = detune * Complex(0.6, 1.5);
}

// head beside the device: shadow toward +y, slightly above the equator
PhantomMask head_mask(double absorption, double shadow_amplitude, double shadow_phase_deg,
                      double detune, double asym) {
  PhantomMask m;
  m.absorption = absorption;
  m.shadow_amplitude = shadow_amplitude;
  m.shadow_center_theta = 85.0 * kPi / 180.0;
  m.shadow_center_phi = 60.0 * kPi / 180.0;
  m.shadow_width = 40.0 * kPi / 180.0;
  m.shadow_phase = shadow_phase_deg * kPi / 180.0;
  fill_coupling(m, detune, asym);
  return m;
}

// hand wrapping the lower hemisphere, nearer the symmetry plane
PhantomMask hand_mask(double absorption, double shadow_amplitude, double shadow_phase_deg,
                      double detune, double asym) {
  PhantomMask m;
  m.absorption = absorption;
  m.shadow_amplitude = shadow_amplitude;
  m.shadow_center_theta = 135.0 * kPi / 180.0;
  m.shadow_center_phi = 30.0 * kPi / 180.0;
  m.shadow_width = 65.0 * kPi / 180.0;
  m.shadow_phase = shadow_phase_deg * kPi / 180.0;
  fill_coupling(m, detune, asym);
  return m;
}

}  // namespace

const std::vector<ScenarioPreset>& scenario_presets() {
  // Mask parameters are calibrated so the analysis pipeline at the default
  // geometry/grid lands near the reference (eta, r, sigma^2) triplets per
  // scenario; the acceptance suite prints achieved vs target.
  static const std::vector<ScenarioPreset> presets = [] {
    const ReactiveLoadPair baseline{-70.0, 30.0};
    std::vector<ScenarioPreset> v;

    ScenarioPreset fs;
    fs.name = "free-space";
    fs.mask = PhantomMask{};
    fs.loads = baseline;
    v.push_back(fs);

    ScenarioPreset d5;
    d5.name = "near-head-d5";
    d5.distance_mm = 5.0;
    d5.mask = head_mask(0.5808, 0.80, 20.0, 5.5, 0.1);
    d5.loads = baseline;
    v.push_back(d5);

    ScenarioPreset d75;
    d75.name = "near-head-d7.5";
    d75.distance_mm = 7.5;
    d75.mask = head_mask(0.6546, 0.20, 0.0, 2.0, 1.2);
    d75.loads = baseline;
    v.push_back(d75);

    ScenarioPreset d10;
    d10.name = "near-head-d10";
    d10.distance_mm = 10.0;
    d10.mask = head_mask(0.6460, 0.25, 30.0, 0.25, 0.1);
    d10.loads = baseline;
    v.push_back(d10);

    ScenarioPreset hand;
    hand.name = "in-hand";
    hand.distance_mm = -1.0;
    hand.mask = hand_mask(0.2509, 0.20, 10.0, 1.5, 0.6);
    hand.loads = baseline;
    v.push_back(hand);

    ScenarioPreset talking;
    talking.name = "talking";
    talking.distance_mm = 10.0;
    talking.mask = hand_mask(0.7606, 0.80, 10.0, 0.5, 0.4);
    talking.loads = baseline;
    v.push_back(talking);
    return v;
  }();
  return presets;
}

const ScenarioPreset& preset_by_name(const std::string& name) {
  for (const auto& p : scenario_presets())
    if (p.name == name) return p;
  throw Error("unknown scenario preset: " + name);
}

DipoleTriadGeometry default_geometry() {
  DipoleTriadGeometry g;
  g.frequency = 2.45e9;
  g.element_length = 0.0587;  // ~0.48 wavelengths at 2.45 GHz
  g.spacing = 0.0275;         // ~0.22 wavelengths
  g.wire_radius = 0.0006;
  return g;
}

}  // namespace bsmimo
