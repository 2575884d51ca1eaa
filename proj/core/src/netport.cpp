#include "bsmimo/netport.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bsmimo/errors.hpp"

namespace bsmimo {

namespace {

Eigen::Matrix3cd to_eigen(const ImpedanceMatrix3& z) {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = z(i, j);
  return m;
}

ImpedanceMatrix3 from_eigen(const Eigen::Matrix3cd& m) {
  ImpedanceMatrix3 z;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) z(i, j) = m(i, j);
  return z;
}

}  // namespace

double ImpedanceMatrix3::max_abs() const {
  double v = 0.0;
  for (const auto& e : m) v = std::max(v, std::abs(e));
  return v;
}

bool ImpedanceMatrix3::is_reciprocal(double rel_tol) const {
  const double scale = std::max(max_abs(), 1e-300);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
  return true;
}

bool ImpedanceMatrix3::is_mirror_symmetric(double rel_tol) const {
  if (!is_reciprocal(rel_tol)) return false;
  const double scale = std::max(max_abs(), 1e-300);
  return std::abs((*this)(1, 1) - (*this)(2, 2)) <= rel_tol * scale &&
         std::abs((*this)(0, 1) - (*this)(0, 2)) <= rel_tol * scale;
}

void ImpedanceMatrix3::require_reciprocal(double rel_tol) const {
  if (!is_reciprocal(rel_tol)) throw Error("impedance matrix is not reciprocal");
}

ReactiveLoadPair swap_loads(ReactiveLoadPair loads) { return {loads.x2, loads.x1}; }

PortSolution terminate(const ImpedanceMatrix3& z, ReactiveLoadPair loads,
                       SystemState state, double z0) {
  z.require_reciprocal();
  if (!(z0 > 0.0) || !std::isfinite(z0)) throw Error("z0 must be positive and finite");
  if (!std::isfinite(loads.x1) || !std::isfinite(loads.x2))
    throw Error("reactive loads must be finite");

  const double xa = (state == SystemState::StateI) ? loads.x1 : loads.x2;
  const double xb = (state == SystemState::StateI) ? loads.x2 : loads.x1;

  Eigen::Matrix3cd k = to_eigen(z);
  k(0, 0) += Complex(z0, 0.0);
  k(1, 1) += Complex(0.0, xa);
  k(2, 2) += Complex(0.0, xb);

  const Eigen::JacobiSVD<Eigen::Matrix3cd> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(2) > 0.0) || sv(0) / sv(2) > 1e12)
    throw SingularNetwork("terminated network is numerically singular (condition number > 1e12)");

  PortSolution sol;
  sol.z0 = z0;
  sol.v_source = Complex(std::sqrt(8.0 * z0), 0.0);  // unit available power
  const Eigen::Vector3cd rhs(sol.v_source, Complex(0.0, 0.0), Complex(0.0, 0.0));
  const Eigen::Vector3cd currents = svd.solve(rhs);
  for (int i = 0; i < 3; ++i) sol.currents[std::size_t(i)] = currents(i);

  // gamma = (z_in - z0)/(z_in + z0) rewritten through the source loop so a
  // vanishing port current stays well-defined
  sol.gamma = 1.0 - 2.0 * z0 * currents(0) / sol.v_source;
  sol.z_in = sol.v_source / currents(0) - z0;
  return sol;
}

double mismatch_efficiency(const PortSolution& sol) {
  const double g2 = std::norm(sol.gamma);
  return std::clamp(1.0 - g2, 0.0, 1.0);
}

double accepted_power(const PortSolution& sol) {
  const Complex v0 = sol.v_source - sol.z0 * sol.currents[0];
  const double p = 0.5 * (v0 * std::conj(sol.currents[0])).real();
  return std::max(p, 0.0);
}

ImpedanceMatrix3 s_to_z(const ImpedanceMatrix3& s, double z0) {
  if (!(z0 > 0.0)) throw Error("z0 must be positive");
  const Eigen::Matrix3cd sm = to_eigen(s);
  const Eigen::Matrix3cd eye = Eigen::Matrix3cd::Identity();
  const Eigen::Matrix3cd denom = eye - sm;
  const Eigen::FullPivLU<Eigen::Matrix3cd> lu(denom);
  if (!lu.isInvertible()) throw SingularNetwork("I - S is singular; no impedance representation");
  return from_eigen(z0 * (eye + sm) * lu.inverse());
}

ImpedanceMatrix3 z_to_s(const ImpedanceMatrix3& z, double z0) {
  if (!(z0 > 0.0)) throw Error("z0 must be positive");
  const Eigen::Matrix3cd zm = to_eigen(z);
  const Eigen::Matrix3cd eye = Eigen::Matrix3cd::Identity();
  const Eigen::Matrix3cd denom = zm + z0 * eye;
  const Eigen::FullPivLU<Eigen::Matrix3cd> lu(denom);
  if (!lu.isInvertible()) throw SingularNetwork("Z + z0*I is singular; no scattering representation");
  return from_eigen((zm - z0 * eye) * lu.inverse());
}

ZMatrixFile load_zmatrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);

  std::string header;
  if (!std::getline(in, header)) throw ParseError(path, 1, "missing header");
  const auto tokens = split_whitespace(header);
  if (tokens.size() != 4 || tokens[0] != "#" || tokens[1] != "zmatrix" || tokens[2] != "v1" ||
      tokens[3].rfind("freq_hz=", 0) != 0)
    throw ParseError(path, 1, "expected '# zmatrix v1 freq_hz=<f>'");

  ZMatrixFile out;
  try {
    out.freq_hz = parse_double(std::string_view(tokens[3]).substr(8));
  } catch (const Error& e) {
    throw ParseError(path, 1, e.what());
  }

  std::string line;
  long lineno = 1;
  int row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = split_whitespace(line);
    if (t.empty()) continue;
    if (row >= 3) throw ParseError(path, lineno, "more than 3 matrix rows");
    if (t.size() != 3) throw ParseError(path, lineno, "expected 3 complex entries");
    for (int j = 0; j < 3; ++j) {
      try {
        out.z(row, j) = parse_complex(t[std::size_t(j)]);
      } catch (const Error& e) {
        throw ParseError(path, lineno, e.what());
      }
    }
    ++row;
  }
  if (row != 3) throw ParseError(path, lineno, "expected 3 matrix rows");
  if (!out.z.is_reciprocal(1e-9))
    throw Error(path + ": ingested matrix violates reciprocity beyond 1e-9 relative");
  return out;
}

void save_zmatrix_file(const std::string& path, const ImpedanceMatrix3& z, double freq_hz) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "# zmatrix v1 freq_hz=" << format_double(freq_hz) << "\n";
  for (int i = 0; i < 3; ++i) {
    out << format_complex(z(i, 0)) << ' ' << format_complex(z(i, 1)) << ' '
        << format_complex(z(i, 2)) << "\n";
  }
  if (!out) throw Error("write failed: " + path);
}

}  // namespace bsmimo
