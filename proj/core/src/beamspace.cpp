#include "bsmimo/beamspace.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bsmimo/errors.hpp"
#include "bsmimo/netport.hpp"

namespace bsmimo {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

BasisPair make_basis(const FarFieldPattern& e_i, const FarFieldPattern& e_ii) {
  if (!e_i.same_grid(e_ii)) throw GridMismatch("state fields live on different grids");
  BasisPair out{e_ii, e_ii};
  out.b1.tag = "basis-1";
  out.b2.tag = "basis-2";
  const std::size_t n = e_i.e_theta.size();
  for (std::size_t k = 0; k < n; ++k) {
    out.b1.e_theta[k] = (e_ii.e_theta[k] + e_i.e_theta[k]) * kInvSqrt2;
    out.b2.e_theta[k] = (e_ii.e_theta[k] - e_i.e_theta[k]) * kInvSqrt2;
    out.b1.e_phi[k] = (e_ii.e_phi[k] + e_i.e_phi[k]) * kInvSqrt2;
    out.b2.e_phi[k] = (e_ii.e_phi[k] - e_i.e_phi[k]) * kInvSqrt2;
  }
  return out;
}

Complex inner_product(const FarFieldPattern& a, const FarFieldPattern& b) {
  if (!a.same_grid(b)) throw GridMismatch("patterns live on different grids");
  const int nt = a.ntheta();
  const int np = a.nphi();
  const auto wt = theta_quadrature_weights(a.theta);
  const double wp = 2.0 * std::numbers::pi / double(np);
  Complex total{};
  for (int it = 0; it < nt; ++it) {
    Complex ring{};
    const std::size_t base = a.index(it, 0);
    for (int ip = 0; ip < np; ++ip) {
      const std::size_t idx = base + std::size_t(ip);
      ring += a.e_theta[idx] * std::conj(b.e_theta[idx]) + a.e_phi[idx] * std::conj(b.e_phi[idx]);
    }
    total += wt[std::size_t(it)] * ring;
  }
  return total * wp;
}

namespace {

void require_nondegenerate(double p1, double p2) {
  const double hi = std::max(p1, p2);
  const double lo = std::min(p1, p2);
  if (hi <= 0.0 || lo < 1e-12 * hi)
    throw DegenerateBasis("one basis pattern carries (almost) no power; states collapsed");
}

}  // namespace

double power_imbalance(const BasisPair& basis) {
  const double p1 = radiated_power(basis.b1);
  const double p2 = radiated_power(basis.b2);
  require_nondegenerate(p1, p2);
  return std::max(p1, p2) / std::min(p1, p2);
}

BasisCorrelation basis_correlation(const BasisPair& basis) {
  const double p1 = radiated_power(basis.b1);
  const double p2 = radiated_power(basis.b2);
  require_nondegenerate(p1, p2);
  BasisCorrelation out;
  out.sigma = inner_product(basis.b1, basis.b2) / std::sqrt(p1 * p2);
  const double mag2 = std::norm(out.sigma);
  out.sigma_sq_db =
      mag2 > 0.0 ? 10.0 * std::log10(mag2) : -std::numeric_limits<double>::infinity();
  return out;
}

AntennaMetrics analyze_scenario(const ScenarioPreset& preset,
                                const DipoleTriadGeometry& geom, GridSize grid) {
  const ImpedanceMatrix3 z = triad_impedance_matrix(geom);
  const ImpedanceMatrix3 zp = perturb_impedance(z, preset.mask);
  const PortSolution sol_i = terminate(zp, preset.loads, SystemState::StateI);
  const PortSolution sol_ii = terminate(zp, preset.loads, SystemState::StateII);

  const auto pats = embedded_patterns(geom, grid);
  const FarFieldPattern e_i = apply_phantom(compose_state_field(sol_i.currents, pats), preset.mask);
  const FarFieldPattern e_ii =
      apply_phantom(compose_state_field(sol_ii.currents, pats), preset.mask);

  AntennaMetrics m;
  m.gamma_i = sol_i.gamma;
  m.gamma_ii = sol_ii.gamma;

  const double acc_i = accepted_power(sol_i);
  const double acc_ii = accepted_power(sol_ii);
  const double rad_i = radiated_power(e_i);
  const double rad_ii = radiated_power(e_ii);
  m.eta_rad_i = acc_i > 0.0 ? rad_i / acc_i : 0.0;
  m.eta_rad_ii = acc_ii > 0.0 ? rad_ii / acc_ii : 0.0;
  m.eta_total_i = mismatch_efficiency(sol_i) * m.eta_rad_i;
  m.eta_total_ii = mismatch_efficiency(sol_ii) * m.eta_rad_ii;
  m.eta_avg_total = 0.5 * (m.eta_total_i + m.eta_total_ii);

  const BasisPair basis = make_basis(e_i, e_ii);
  const double p1 = radiated_power(basis.b1);
  const double p2 = radiated_power(basis.b2);
  if (p1 == 0.0 && p2 == 0.0) {
    // fully absorbed field: no imbalance and no correlation left to measure
    m.r = 1.0;
    m.sigma = Complex{};
    m.sigma_sq_db = -std::numeric_limits<double>::infinity();
    return m;
  }
  m.r = power_imbalance(basis);
  const BasisCorrelation corr = basis_correlation(basis);
  m.sigma = corr.sigma;
  m.sigma_sq_db = corr.sigma_sq_db;
  return m;
}

}  // namespace bsmimo
