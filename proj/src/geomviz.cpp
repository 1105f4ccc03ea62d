#include "entanglekit/geomviz.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "entanglekit/measures.hpp"
#include "entanglekit/state_io.hpp"

namespace entanglekit {

namespace {

void require_two_qubits(const PureState& psi) {
  if (psi.dims() != BipartiteDims{2, 2}) throw Error(ErrorKind::DimensionMismatch, "octant picture needs two qubits");
}

double wrap_phase(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a -= two_pi;
  return a;
}

constexpr double kModulusFloor = 1e-12;

}  // namespace

std::array<double, 3> gnomonic_projection(const std::array<double, 4>& n) {
  const double dot = 0.5 * (n[0] + n[1] + n[2] + n[3]);
  std::array<double, 4> g{};
  for (int i = 0; i < 4; ++i) g[i] = n[i] / dot - 0.5;
  const double r2 = std::numbers::sqrt2 / 2.0;
  return {r2 * (g[0] - g[1]), r2 * (g[2] - g[3]), 0.5 * (g[0] + g[1] - g[2] - g[3])};
}

OctantCoords octant_coords(const PureState& psi) {
  require_two_qubits(psi);
  const ComplexVector& z = psi.amplitudes();
  int ref = 0;
  while (ref < 3 && std::abs(z(ref)) <= kModulusFloor) ++ref;
  const double ref_phase = std::arg(z(ref));

  OctantCoords c;
  for (int i = 0; i < 4; ++i) c.moduli[static_cast<std::size_t>(i)] = std::abs(z(i));
  for (int i = 1; i < 4; ++i) {
    c.phases[static_cast<std::size_t>(i - 1)] =
        c.moduli[static_cast<std::size_t>(i)] > kModulusFloor ? wrap_phase(std::arg(z(i)) - ref_phase) : 0.0;
  }
  c.gnomonic = gnomonic_projection(c.moduli);
  return c;
}

PureState from_octant(const OctantCoords& c) {
  ComplexVector z(4);
  z(0) = c.moduli[0];
  for (int i = 1; i < 4; ++i) z(i) = std::polar(c.moduli[static_cast<std::size_t>(i)], c.phases[static_cast<std::size_t>(i - 1)]);
  return PureState::from_amplitudes({2, 2}, z);
}

SegreResiduals segre_residuals(const PureState& psi) {
  require_two_qubits(psi);
  const ComplexVector& z = psi.amplitudes();
  const OctantCoords c = octant_coords(psi);
  const auto& n = c.moduli;
  SegreResiduals r;
  r.quadric = std::abs(z(0) * z(3) - z(1) * z(2));
  r.modulus_eq = std::abs(n[0] * n[3] - n[1] * n[2]);
  const bool phases_defined = n[1] > kModulusFloor && n[2] > kModulusFloor && n[3] > kModulusFloor && n[0] > kModulusFloor;
  if (phases_defined) {
    const double d = wrap_phase(c.phases[0] + c.phases[1] - c.phases[2]);
    r.phase_eq = std::min(d, 2.0 * std::numbers::pi - d);
  }
  return r;
}

double max_entangled_residual(const PureState& psi) {
  if (!psi.dims().square()) throw Error(ErrorKind::DimensionMismatch, "maximal entanglement test needs N x N");
  const int n = psi.dims().n_a;
  const ComplexMatrix a = psi.amplitude_matrix();
  return (double(n) * a * a.adjoint() - ComplexMatrix::Identity(n, n)).norm();
}

int orbit_dimension(int n, const std::vector<int>& m) {
  if (n < 2) throw Error(ErrorKind::MalformedProfile, "N must be >= 2");
  if (m.size() < 2) throw Error(ErrorKind::MalformedProfile, "profile needs m_0 and at least one m_n");
  int total = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0 || (i > 0 && m[i] < 1)) throw Error(ErrorKind::MalformedProfile, "invalid multiplicity");
    total += m[i];
  }
  if (total != n) throw Error(ErrorKind::MalformedProfile, "multiplicities sum to " + std::to_string(total) + ", not N");
  int dim = 2 * n * n - 1 - 2 * m[0] * m[0];
  for (std::size_t i = 1; i < m.size(); ++i) dim -= m[i] * m[i];
  return dim;
}

double insphere_radius(int d) {
  if (d < 2) throw Error(ErrorKind::ParameterOutOfRange, "dimension must be >= 2");
  return std::sqrt(1.0 / (2.0 * d * (d - 1.0)));
}

double d2_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) throw Error(ErrorKind::DimensionMismatch, "states live on different spaces");
  return std::sqrt(0.5 * (rho.matrix() - sigma.matrix()).squaredNorm());
}

bool in_separable_ball(const DensityMatrix& rho) {
  const int d = rho.dims().total();
  return d2_distance(rho, DensityMatrix::maximally_mixed(rho.dims())) <= insphere_radius(d) + 1e-12;
}

VolumeRatio volume_ratio(int n) {
  if (n < 2) throw Error(ErrorKind::ParameterOutOfRange, "N must be >= 2");
  const double n2 = double(n) * n;
  const double n4 = n2 * n2;
  double log_value = 0.5 * (n2 - 1.0) * std::log(std::numbers::pi) + 0.5 * (n2 - n4) * std::log(2.0) +
                     std::lgamma(n4) - std::lgamma(0.5 * (n4 + 1.0)) - n4 * std::log(double(n)) -
                     0.5 * (n4 - 1.0) * std::log(n2 - 1.0);
  for (int k = 1; k <= n * n; ++k) log_value -= std::lgamma(double(k));
  VolumeRatio out;
  out.log_value = log_value;
  const double v = std::exp(log_value);
  if (v > 0.0 && std::isfinite(v)) out.value = v;
  return out;
}

double pseudo_pure_threshold(int n) {
  if (n < 2) throw Error(ErrorKind::ParameterOutOfRange, "N must be >= 2");
  return 1.0 / (double(n) * n - 1.0);
}

// ---------------------------------------------------------------------------

std::vector<CrossSectionRow> tetrahedron_cross_section(int resolution, const std::array<double, 3>& phases) {
  if (resolution < 1) throw Error(ErrorKind::ParameterOutOfRange, "resolution must be >= 1");
  std::vector<CrossSectionRow> rows;
  for (int i = 0; i <= resolution; ++i)
    for (int j = 0; i + j <= resolution; ++j)
      for (int k = 0; i + j + k <= resolution; ++k) {
        const int l = resolution - i - j - k;
        std::array<double, 4> n{double(i), double(j), double(k), double(l)};
        const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2] + n[3] * n[3]);
        for (double& v : n) v /= norm;
        OctantCoords c;
        c.moduli = n;
        c.phases = phases;
        c.gnomonic = gnomonic_projection(n);
        rows.push_back({c.gnomonic, entanglement_entropy(from_octant(c))});
      }
  return rows;
}

std::string cross_section_csv(const std::vector<CrossSectionRow>& rows) {
  std::string out = "x,y,z,entanglement_entropy\n";
  for (const auto& r : rows) {
    out += format_real(r.gnomonic[0]) + "," + format_real(r.gnomonic[1]) + "," + format_real(r.gnomonic[2]) + "," +
           format_real(r.entanglement_entropy) + "\n";
  }
  return out;
}

std::vector<RulingPoint> separable_ruling(int lines, int points) {
  if (lines < 1 || points < 2) throw Error(ErrorKind::ParameterOutOfRange, "need lines >= 1 and points >= 2");
  std::vector<RulingPoint> out;
  const double half_pi = std::numbers::pi / 2.0;
  for (int l = 0; l < lines; ++l) {
    // Interior angles keep both factors off the octant boundary.
    const double s = half_pi * (l + 1.0) / (lines + 1.0);
    const double b0 = std::cos(s), b1 = std::sin(s);
    for (int p = 0; p < points; ++p) {
      const double t = half_pi * (p + 1.0) / (points + 1.0);
      const double a0 = std::cos(t), a1 = std::sin(t);
      ComplexVector z(4);
      z << a0 * b0, a0 * b1, a1 * b0, a1 * b1;
      const PureState psi = PureState::from_amplitudes({2, 2}, z);
      out.push_back({l, p, octant_coords(psi).gnomonic, segre_residuals(psi).quadric});
    }
  }
  return out;
}

std::string ruling_csv(const std::vector<RulingPoint>& points) {
  std::string out = "line,index,x,y,z,quadric\n";
  for (const auto& p : points) {
    out += std::to_string(p.line) + "," + std::to_string(p.index) + "," + format_real(p.gnomonic[0]) + "," +
           format_real(p.gnomonic[1]) + "," + format_real(p.gnomonic[2]) + "," + format_real(p.quadric) + "\n";
  }
  return out;
}

}  // namespace entanglekit
