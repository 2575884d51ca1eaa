#pragma once

#include <complex>

#include "bsmimo/pattern.hpp"
#include "bsmimo/phantom.hpp"

namespace bsmimo {

/// The virtual basis pair b1 = (e_ii + e_i)/sqrt(2), b2 = (e_ii - e_i)/sqrt(2).
struct BasisPair {
  FarFieldPattern b1;
  FarFieldPattern b2;
};

/// The four key per-scenario antenna characteristics.
struct AntennaMetrics {
  Complex gamma_i{};   // port-0 reflection coefficient, state I
  Complex gamma_ii{};  // state II
  double eta_rad_i = 0.0;   // radiated / accepted power, state I
  double eta_rad_ii = 0.0;  // state II
  double eta_total_i = 0.0;   // (1 - |gamma|^2) * eta_rad per state
  double eta_total_ii = 0.0;
  double eta_avg_total = 0.0;  // mean of the two per-state totals
  double r = 1.0;              // basis power imbalance ratio, >= 1
  Complex sigma{};             // complex basis correlation, |sigma| <= 1
  double sigma_sq_db = 0.0;    // 10*log10(|sigma|^2), -inf representable
};

/// Builds the basis pair from the two state fields. Throws GridMismatch.
BasisPair make_basis(const FarFieldPattern& e_i, const FarFieldPattern& e_ii);

/// Full-sphere overlap integral of two patterns (both polarizations), second
/// argument conjugated; inner_product(p, p) equals radiated_power(p).
Complex inner_product(const FarFieldPattern& a, const FarFieldPattern& b);

/// max(P1, P2) / min(P1, P2). Throws DegenerateBasis when either basis power
/// is below 1e-12 times the other (collapsed states).
double power_imbalance(const BasisPair& basis);

struct BasisCorrelation {
  Complex sigma{};
  double sigma_sq_db = 0.0;
};

/// Normalized complex overlap of the basis patterns and its dB form. Throws
/// DegenerateBasis like power_imbalance.
BasisCorrelation basis_correlation(const BasisPair& basis);

/// Runs the whole per-scenario pipeline: perturb the triad impedance, solve
/// both terminated states, superpose the embedded patterns, apply the
/// phantom mask, build the basis and reduce to metrics. A fully absorbed
/// field (zero basis power) reports r = 1, sigma = 0, sigma_sq_db = -inf.
AntennaMetrics analyze_scenario(const ScenarioPreset& preset,
                                const DipoleTriadGeometry& geom,
                                GridSize grid = {181, 360});

}  // namespace bsmimo
