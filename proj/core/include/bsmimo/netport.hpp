#pragma once

#include <array>
#include <complex>
#include <string>

#include "bsmimo/text_format.hpp"

namespace bsmimo {

/// 3x3 port impedance matrix of the symmetric three-port radiator.
/// Port 0 is the active center port; ports 1 and 2 are the passive mirror
/// ports. Reciprocity (z[i][j] == z[j][i]) is required everywhere; matrices
/// produced by the analytic radiator are exactly reciprocal, ingested ones
/// are checked to 1e-9 relative.
struct ImpedanceMatrix3 {
  std::array<Complex, 9> m{};  // row-major

  Complex& operator()(int i, int j) { return m[std::size_t(3 * i + j)]; }
  Complex operator()(int i, int j) const { return m[std::size_t(3 * i + j)]; }

  double max_abs() const;
  bool is_reciprocal(double rel_tol = 1e-9) const;
  /// Mirror symmetry additionally requires z11 == z22 and z01 == z02.
  bool is_mirror_symmetric(double rel_tol = 1e-9) const;
  /// Throws Error if reciprocity is violated.
  void require_reciprocal(double rel_tol = 1e-9) const;
};

/// The swappable reactive load pair (ohms, lossless).
struct ReactiveLoadPair {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// StateII applies the exchanged assignment [x2, x1] to ports 1 and 2.
enum class SystemState { StateI, StateII };

ReactiveLoadPair swap_loads(ReactiveLoadPair loads);

/// Solved port quantities for one terminated state, driven by a source of
/// unit available power with series internal impedance z0 at port 0.
struct PortSolution {
  std::array<Complex, 3> currents{};  // amperes (peak phasors)
  Complex v_source{};                 // volts; sqrt(8*z0) for 1 W available
  Complex z_in{};                     // ohms, seen at port 0
  Complex gamma{};                    // (z_in - z0) / (z_in + z0)
  double z0 = 50.0;                   // ohms, reference (real)
};

/// Terminates ports 1 and 2 with the state's reactance assignment and solves
/// the driven three-port network. Throws SingularNetwork when the composite
/// matrix has condition number above 1e12.
PortSolution terminate(const ImpedanceMatrix3& z, ReactiveLoadPair loads,
                       SystemState state, double z0 = 50.0);

/// 1 - |gamma|^2, clamped to [0, 1].
double mismatch_efficiency(const PortSolution& sol);

/// Power delivered into the network, 0.5*Re(V0 * conj(I0)) (watts).
/// Equals available power times the mismatch efficiency for a real z0.
double accepted_power(const PortSolution& sol);

/// Conversions between scattering and impedance representations for a common
/// real reference impedance at every port.
ImpedanceMatrix3 s_to_z(const ImpedanceMatrix3& s, double z0);
ImpedanceMatrix3 z_to_s(const ImpedanceMatrix3& z, double z0);

/// Plain-text Z-matrix file: header "# zmatrix v1 freq_hz=<f>", then three
/// rows of three "re+imj" entries (ohms, row-major).
struct ZMatrixFile {
  ImpedanceMatrix3 z;
  double freq_hz = 0.0;
};

ZMatrixFile load_zmatrix_file(const std::string& path);
void save_zmatrix_file(const std::string& path, const ImpedanceMatrix3& z, double freq_hz);

}  // namespace bsmimo
