#include "bsmimo/pattern.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "bsmimo/errors.hpp"

namespace bsmimo {

namespace {

constexpr double kPi = std::numbers::pi;

double canonical_theta(int i, int n) { return kPi * (double(i) / double(n - 1)); }
double canonical_phi(int j, int n) { return 2.0 * kPi * (double(j) / double(n)); }

}  // namespace

void FarFieldPattern::validate() const {
  const int nt = ntheta();
  const int np = nphi();
  if (nt < 2) throw Error("theta grid needs at least 2 nodes");
  if (np < 1) throw Error("phi grid needs at least 1 node");
  if (e_theta.size() != std::size_t(nt) * std::size_t(np) || e_phi.size() != e_theta.size())
    throw Error("field storage does not match the grid");
  const double tol = 1e-9;
  for (int i = 0; i < nt; ++i)
    if (std::abs(theta[std::size_t(i)] - canonical_theta(i, nt)) > tol)
      throw NonUniformGrid("theta grid is not the uniform [0, pi] grid");
  for (int j = 0; j < np; ++j)
    if (std::abs(phi[std::size_t(j)] - canonical_phi(j, np)) > tol)
      throw NonUniformGrid("phi grid is not the uniform [0, 2*pi) grid");
  for (const auto& v : e_theta)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error("non-finite field value");
  for (const auto& v : e_phi)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error("non-finite field value");
}

bool FarFieldPattern::same_grid(const FarFieldPattern& other) const {
  return theta == other.theta && phi == other.phi;
}

FarFieldPattern make_pattern_grid(GridSize size, std::string tag) {
  if (size.ntheta < 2 || size.nphi < 1) throw Error("grid must be at least 2 x 1");
  FarFieldPattern p;
  p.tag = std::move(tag);
  p.theta.resize(std::size_t(size.ntheta));
  p.phi.resize(std::size_t(size.nphi));
  for (int i = 0; i < size.ntheta; ++i) p.theta[std::size_t(i)] = canonical_theta(i, size.ntheta);
  for (int j = 0; j < size.nphi; ++j) p.phi[std::size_t(j)] = canonical_phi(j, size.nphi);
  p.e_theta.assign(std::size_t(size.ntheta) * std::size_t(size.nphi), Complex{});
  p.e_phi.assign(p.e_theta.size(), Complex{});
  return p;
}

std::vector<double> theta_quadrature_weights(const std::vector<double>& theta) {
  const std::size_t n = theta.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double a = theta[k];
    const double b = theta[k + 1];
    const double h = b - a;
    const double sa = std::sin(a), sb = std::sin(b);
    const double ca = std::cos(a), cb = std::cos(b);
    // integral of sin(theta) times the linear hat on [a, b], split per node;
    // the two contributions of a panel sum to exactly cos(a) - cos(b)
    w[k] += ca + (sa - sb) / h;
    w[k + 1] += -cb + (sb - sa) / h;
  }
  return w;
}

double radiated_power(const FarFieldPattern& p) {
  const int nt = p.ntheta();
  const int np = p.nphi();
  const auto wt = theta_quadrature_weights(p.theta);
  const double wp = 2.0 * kPi / double(np);
  double total = 0.0;
  for (int it = 0; it < nt; ++it) {
    double ring = 0.0;
    const std::size_t base = p.index(it, 0);
    for (int ip = 0; ip < np; ++ip) {
      const std::size_t idx = base + std::size_t(ip);
      ring += std::norm(p.e_theta[idx]) + std::norm(p.e_phi[idx]);
    }
    total += wt[std::size_t(it)] * ring;
  }
  return total * wp;
}

FarFieldPattern compose_state_field(const std::array<Complex, 3>& currents,
                                    const std::array<FarFieldPattern, 3>& patterns) {
  for (int k = 1; k < 3; ++k)
    if (!patterns[0].same_grid(patterns[std::size_t(k)]))
      throw GridMismatch("element patterns live on different grids");
  FarFieldPattern out = patterns[0];
  out.tag = "composed";
  const std::size_t n = out.e_theta.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.e_theta[i] = currents[0] * patterns[0].e_theta[i] + currents[1] * patterns[1].e_theta[i] +
                     currents[2] * patterns[2].e_theta[i];
    out.e_phi[i] = currents[0] * patterns[0].e_phi[i] + currents[1] * patterns[1].e_phi[i] +
                   currents[2] * patterns[2].e_phi[i];
  }
  return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

long parse_header_count(const std::string& token, const char* key, const std::string& path) {
  const std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0) throw ParseError(path, 1, "expected " + prefix + "<n>");
  return long(parse_double(std::string_view(token).substr(prefix.size())));
}

}  // namespace

FarFieldPattern load_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);

  std::string header;
  if (!std::getline(in, header)) throw ParseError(path, 1, "missing header");
  const auto tokens = split_whitespace(header);
  if (tokens.size() != 6 || tokens[0] != "#" || tokens[1] != "ffpattern" || tokens[2] != "v1" ||
      tokens[5] != "norm=sqrtW_per_sr")
    throw ParseError(path, 1, "expected '# ffpattern v1 ntheta=<a> nphi=<b> norm=sqrtW_per_sr'");
  const long nt = parse_header_count(tokens[3], "ntheta", path);
  const long np = parse_header_count(tokens[4], "nphi", path);
  if (nt < 2 || np < 1) throw ParseError(path, 1, "grid too small");

  FarFieldPattern p = make_pattern_grid({int(nt), int(np)}, "file:" + path);

  std::string line;
  long lineno = 1;
  std::size_t row = 0;
  const std::size_t total = std::size_t(nt) * std::size_t(np);
  const double rad = kPi / 180.0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (row >= total) throw ParseError(path, lineno, "more rows than ntheta*nphi");
    const auto cols = split_csv(line);
    if (cols.size() != 6)
      throw ParseError(path, lineno, "expected 6 columns theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi");
    try {
      const double theta = parse_double(cols[0]) * rad;
      const double phi = parse_double(cols[1]) * rad;
      const std::size_t it = row / std::size_t(np);
      const std::size_t ip = row % std::size_t(np);
      if (std::abs(theta - p.theta[it]) > 1e-9 || std::abs(phi - p.phi[ip]) > 1e-9)
        throw NonUniformGrid(path + ":" + std::to_string(lineno) +
                             ": angles do not match the uniform grid (theta-major order required)");
      p.e_theta[row] = Complex(parse_double(cols[2]), parse_double(cols[3]));
      p.e_phi[row] = Complex(parse_double(cols[4]), parse_double(cols[5]));
    } catch (const NonUniformGrid&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(path, lineno, e.what());
    }
    ++row;
  }
  if (row != total) throw ParseError(path, lineno, "expected ntheta*nphi rows");
  p.validate();
  return p;
}

void save_pattern_file(const std::string& path, const FarFieldPattern& p) {
  p.validate();
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "# ffpattern v1 ntheta=" << p.ntheta() << " nphi=" << p.nphi()
      << " norm=sqrtW_per_sr\n";
  const double deg = 180.0 / kPi;
  for (int it = 0; it < p.ntheta(); ++it) {
    for (int ip = 0; ip < p.nphi(); ++ip) {
      const std::size_t idx = p.index(it, ip);
      out << format_double(p.theta[std::size_t(it)] * deg) << ','
          << format_double(p.phi[std::size_t(ip)] * deg) << ','
          << format_double(p.e_theta[idx].real()) << ',' << format_double(p.e_theta[idx].imag())
          << ',' << format_double(p.e_phi[idx].real()) << ',' << format_double(p.e_phi[idx].imag())
          << "\n";
    }
  }
  if (!out) throw Error("write failed: " + path);
}

}  // namespace bsmimo
