#include "entanglekit/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace entanglekit {

namespace {

constexpr cplx I{0.0, 1.0};

void require_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    throw Error(ErrorKind::ParameterOutOfRange, std::string(name) + " = " + std::to_string(v) +
                                                    " outside [" + std::to_string(lo) + ", " +
                                                    std::to_string(hi) + "]");
  }
}

void require_size(const ComplexMatrix& m, BipartiteDims dims) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    ", dims imply " + std::to_string(dims.total()));
  }
}

ComplexVector basis_vector(int d, int i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

ComplexVector product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

BipartiteDims::BipartiteDims(int a, int b) : n_a(a), n_b(b) {
  if (a < 2 || b < 2) {
    throw Error(ErrorKind::DimensionMismatch,
                "subsystem dimensions must be >= 2, got " + std::to_string(a) + "x" + std::to_string(b));
  }
}

// ---------------------------------------------------------------------------

PureState PureState::from_amplitudes(BipartiteDims dims, const ComplexVector& amplitudes) {
  if (amplitudes.size() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(dims.total()) +
                                                  " amplitudes, got " + std::to_string(amplitudes.size()));
  }
  if (!amplitudes.allFinite()) throw Error(ErrorKind::InvalidState, "non-finite amplitude");
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::ZeroVector, "state vector has zero norm");
  return PureState(dims, amplitudes / norm);
}

ComplexMatrix PureState::amplitude_matrix() const {
  ComplexMatrix a(dims_.n_a, dims_.n_b);
  for (int i = 0; i < dims_.n_a; ++i)
    for (int j = 0; j < dims_.n_b; ++j) a(i, j) = amplitudes_(i * dims_.n_b + j);
  return a;
}

ComplexMatrix PureState::projector() const { return outer(amplitudes_); }

// ---------------------------------------------------------------------------

DensityMatrix DensityMatrix::from_matrix(BipartiteDims dims, const ComplexMatrix& m) {
  require_size(m, dims);
  if (!m.allFinite()) throw Error(ErrorKind::InvalidState, "non-finite matrix entry");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw Error(ErrorKind::InvalidState,
                "hermiticity violated: max |rho - rho^dagger| = " + std::to_string(defect));
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidState, "trace violated: Tr rho = " + std::to_string(tr));
  }
  EigenSystem es = hermitian_eigensystem(h);
  const double lowest = es.values.back();
  if (lowest < -kPsdFloor) {
    throw Error(ErrorKind::InvalidState,
                "positivity violated: minimal eigenvalue " + std::to_string(lowest));
  }
  if (lowest < 0.0) {
    Eigen::VectorXd clamped(static_cast<Eigen::Index>(es.values.size()));
    for (std::size_t i = 0; i < es.values.size(); ++i) clamped(static_cast<Eigen::Index>(i)) = std::max(es.values[i], 0.0);
    clamped /= clamped.sum();
    h = es.vectors * clamped.asDiagonal() * es.vectors.adjoint();
  }
  return DensityMatrix(dims, std::move(h));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.dims(), psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(BipartiteDims dims) {
  const int d = dims.total();
  return DensityMatrix(dims, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

std::vector<double> DensityMatrix::spectrum() const { return hermitian_eigenvalues(matrix_); }

double DensityMatrix::purity() const { return matrix_.squaredNorm(); }

// ---------------------------------------------------------------------------

SchmidtData schmidt(const PureState& psi) {
  const BipartiteDims dims = psi.dims();
  const ComplexMatrix a = psi.amplitude_matrix();
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const int k = static_cast<int>(s.size());

  SchmidtData out;
  out.coefficients.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.coefficients[static_cast<std::size_t>(i)] = s(i) * s(i);
  const double total = std::accumulate(out.coefficients.begin(), out.coefficients.end(), 0.0);
  for (double& c : out.coefficients) c /= total;

  // A = U S V^dagger, so |psi> = sum_k s_k |u_k> (x) |conj(v_k)>.
  out.left_vectors = svd.matrixU();
  out.right_vectors = svd.matrixV().conjugate();
  out.rank = static_cast<int>(std::count_if(out.coefficients.begin(), out.coefficients.end(),
                                            [](double c) { return c > kSchmidtRankTol; }));
  if (dims.n_a == 2 && dims.n_b == 2) {
    const double ratio = out.coefficients[1] / out.coefficients[0];
    out.angle_chi = std::clamp(std::atan(std::sqrt(std::max(ratio, 0.0))), 0.0, std::numbers::pi / 4);
  }

  int zeros = k - out.rank;
  out.multiplicities.push_back(zeros);
  std::vector<double> nonzero(out.coefficients.begin(), out.coefficients.begin() + out.rank);
  std::sort(nonzero.begin(), nonzero.end());
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    if (i > 0 && std::abs(nonzero[i] - nonzero[i - 1]) <= kDegeneracyRelTol * nonzero[i]) {
      ++out.multiplicities.back();
    } else {
      out.multiplicities.push_back(1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims, Side traced) {
  require_size(rho, dims);
  const int na = dims.n_a, nb = dims.n_b;
  if (traced == Side::B) {
    ComplexMatrix out = ComplexMatrix::Zero(na, na);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j)
        for (int mu = 0; mu < nb; ++mu) out(i, j) += rho(i * nb + mu, j * nb + mu);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(nb, nb);
  for (int mu = 0; mu < nb; ++mu)
    for (int nu = 0; nu < nb; ++nu)
      for (int i = 0; i < na; ++i) out(mu, nu) += rho(i * nb + mu, i * nb + nu);
  return out;
}

ComplexMatrix partial_trace(const DensityMatrix& rho, Side traced) {
  return partial_trace(rho.matrix(), rho.dims(), traced);
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims, Side side) {
  require_size(rho, dims);
  const int na = dims.n_a, nb = dims.n_b;
  ComplexMatrix out(rho.rows(), rho.cols());
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int mu = 0; mu < nb; ++mu)
        for (int nu = 0; nu < nb; ++nu) {
          const cplx v = side == Side::A ? rho(j * nb + mu, i * nb + nu) : rho(i * nb + nu, j * nb + mu);
          out(i * nb + mu, j * nb + nu) = v;
        }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Side side) {
  return partial_transpose(rho.matrix(), rho.dims(), side);
}

ComplexMatrix reshuffle(const ComplexMatrix& rho, BipartiteDims dims) {
  require_size(rho, dims);
  const int na = dims.n_a, nb = dims.n_b;
  ComplexMatrix out(na * na, nb * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int mu = 0; mu < nb; ++mu)
        for (int nu = 0; nu < nb; ++nu) out(i * na + j, mu * nb + nu) = rho(i * nb + mu, j * nb + nu);
  return out;
}

ComplexMatrix reshuffle(const DensityMatrix& rho) { return reshuffle(rho.matrix(), rho.dims()); }

// ---------------------------------------------------------------------------

GeneratorBasis generator_basis(int n) {
  if (n < 2) throw Error(ErrorKind::DimensionMismatch, "generator basis needs n >= 2");
  GeneratorBasis basis;
  basis.dimension = n;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      basis.generators.push_back(std::move(m));
    }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      m(j, k) = -I;
      m(k, j) = I;
      basis.generators.push_back(std::move(m));
    }
  for (int l = 1; l < n; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) m(j, j) = scale;
    m(l, l) = -scale * l;
    basis.generators.push_back(std::move(m));
  }
  return basis;
}

FanoForm fano_form(const DensityMatrix& rho) {
  const BipartiteDims dims = rho.dims();
  const GeneratorBasis ga = generator_basis(dims.n_a);
  const GeneratorBasis gb = generator_basis(dims.n_b);
  const ComplexMatrix rho_a = partial_trace(rho, Side::B);
  const ComplexMatrix rho_b = partial_trace(rho, Side::A);

  FanoForm f;
  f.dims = dims;
  for (const auto& s : ga.generators) f.tau_a.push_back(0.5 * dims.n_a * (rho_a * s).trace().real());
  for (const auto& s : gb.generators) f.tau_b.push_back(0.5 * dims.n_b * (rho_b * s).trace().real());
  f.beta.resize(static_cast<Eigen::Index>(ga.generators.size()), static_cast<Eigen::Index>(gb.generators.size()));
  const double scale = 0.25 * dims.n_a * dims.n_b;
  for (std::size_t i = 0; i < ga.generators.size(); ++i)
    for (std::size_t j = 0; j < gb.generators.size(); ++j)
      f.beta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          scale * (rho.matrix() * kron(ga.generators[i], gb.generators[j])).trace().real();
  return f;
}

ComplexMatrix fano_matrix(const FanoForm& f) {
  const int na = f.dims.n_a, nb = f.dims.n_b;
  const GeneratorBasis ga = generator_basis(na);
  const GeneratorBasis gb = generator_basis(nb);
  if (f.tau_a.size() != ga.generators.size() || f.tau_b.size() != gb.generators.size() ||
      f.beta.rows() != static_cast<Eigen::Index>(ga.generators.size()) ||
      f.beta.cols() != static_cast<Eigen::Index>(gb.generators.size())) {
    throw Error(ErrorKind::DimensionMismatch, "Fano components do not match dims");
  }
  const ComplexMatrix ia = ComplexMatrix::Identity(na, na);
  const ComplexMatrix ib = ComplexMatrix::Identity(nb, nb);
  ComplexMatrix m = ComplexMatrix::Identity(na * nb, na * nb);
  for (std::size_t i = 0; i < ga.generators.size(); ++i) m += f.tau_a[i] * kron(ga.generators[i], ib);
  for (std::size_t j = 0; j < gb.generators.size(); ++j) m += f.tau_b[j] * kron(ia, gb.generators[j]);
  for (std::size_t i = 0; i < ga.generators.size(); ++i)
    for (std::size_t j = 0; j < gb.generators.size(); ++j)
      m += f.beta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
           kron(ga.generators[i], gb.generators[j]);
  return m / static_cast<double>(na * nb);
}

DensityMatrix fano_reconstruct(const FanoForm& f) { return DensityMatrix::from_matrix(f.dims, fano_matrix(f)); }

ComplexMatrix fano_flip(const DensityMatrix& rho, FlipSide side) {
  if (!rho.dims().square()) {
    throw Error(ErrorKind::DimensionMismatch, "Fano flip requires subsystems of equal size");
  }
  FanoForm f = fano_form(rho);
  for (double& t : f.tau_b) t = -t;
  if (side == FlipSide::B) {
    f.beta = -f.beta;
  } else {
    for (double& t : f.tau_a) t = -t;
  }
  return fano_matrix(f);
}

DensityMatrix spin_flip_2q(const DensityMatrix& rho) {
  if (rho.dims() != BipartiteDims{2, 2}) {
    throw Error(ErrorKind::DimensionMismatch, "spin flip is defined for two qubits");
  }
  ComplexMatrix sy(2, 2);
  sy << 0.0, -I, I, 0.0;
  const ComplexMatrix yy = kron(sy, sy);
  return DensityMatrix::from_matrix(rho.dims(), yy * rho.matrix().conjugate() * yy);
}

// ---------------------------------------------------------------------------

double renyi_entropy(const std::vector<double>& probabilities, double q) {
  if (!(q >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "Renyi order must be >= 0");
  // for q < 1 roundoff-level eigenvalues would be amplified (p^q >> p)
  const double floor = q < 1.0 ? 1e-12 : 0.0;
  std::vector<double> p;
  for (double v : probabilities)
    if (v > floor) p.push_back(v);
  if (p.empty()) return 0.0;
  if (q == 0.0) return std::log(static_cast<double>(p.size()));
  if (std::isinf(q)) return -std::log(*std::max_element(p.begin(), p.end()));

  double shannon = 0.0;
  for (double v : p) shannon -= v * std::log(v);
  if (std::abs(q - 1.0) < 1e-4) {
    // S_q = S_1 - (q - 1) Var[ln p] / 2 + O((q - 1)^2)
    double second = 0.0;
    for (double v : p) second += v * std::log(v) * std::log(v);
    return shannon - 0.5 * (q - 1.0) * (second - shannon * shannon);
  }
  double sum = 0.0;
  for (double v : p) sum += std::pow(v, q);
  return std::log(sum) / (1.0 - q);
}

double entropy_of_matrix(const ComplexMatrix& m, double q) {
  return renyi_entropy(hermitian_eigenvalues(m), q);
}

double entropy(const DensityMatrix& rho, double q) { return renyi_entropy(rho.spectrum(), q); }

double conditional_entropy(const DensityMatrix& rho) {
  return entropy(rho) - entropy_of_matrix(partial_trace(rho, Side::B));
}

// ---------------------------------------------------------------------------

PureState bell(BellKind kind) {
  ComplexVector v = ComplexVector::Zero(4);
  switch (kind) {
    case BellKind::PhiPlus: v << 1, 0, 0, 1; break;
    case BellKind::PhiMinus: v << 1, 0, 0, -1; break;
    case BellKind::PsiPlus: v << 0, 1, 1, 0; break;
    case BellKind::PsiMinus: v << 0, 1, -1, 0; break;
  }
  return PureState::from_amplitudes({2, 2}, v);
}

PureState max_entangled(int n) {
  ComplexVector v = ComplexVector::Zero(n * n);
  for (int i = 0; i < n; ++i) v(i * n + i) = 1.0;
  return PureState::from_amplitudes({n, n}, v);
}

PureState max_entangled_from_unitary(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw Error(ErrorKind::NotSquare, "unitary must be square");
  const Eigen::Index n = u.rows();
  const double defect = (u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    throw Error(ErrorKind::ParameterOutOfRange, "matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
  const int ni = static_cast<int>(n);
  ComplexVector v(n * n);
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < ni; ++j) v(i * ni + j) = u(i, j);
  return PureState::from_amplitudes({ni, ni}, v);
}

DensityMatrix werner(int n, double x) {
  require_range(x, 0.0, 1.0, "x");
  const BipartiteDims dims{n, n};
  const int d = dims.total();
  const ComplexMatrix m = x * max_entangled(n).projector() + (1.0 - x) * ComplexMatrix::Identity(d, d) / double(d);
  return DensityMatrix::from_matrix(dims, m);
}

DensityMatrix sigma_h(double a) {
  require_range(a, 0.0, 1.0, "a");
  ComplexMatrix m = a * bell(BellKind::PsiMinus).projector();
  m(0, 0) += 1.0 - a;
  return DensityMatrix::from_matrix({2, 2}, m);
}

DensityMatrix sigma_b(double b) {
  require_range(b, 0.0, 1.0, "b");
  const ComplexMatrix m = b * bell(BellKind::PsiMinus).projector() + (1.0 - b) * bell(BellKind::PsiPlus).projector();
  return DensityMatrix::from_matrix({2, 2}, m);
}

DensityMatrix rho_m(double y) {
  require_range(y, 0.0, 1.0, "y");
  const double a = y <= 2.0 / 3.0 ? 1.0 / 3.0 : y / 2.0;
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = 1.0 - 2.0 * a;
  m(3, 3) = a;
  m(0, 3) = y / 2.0;
  m(3, 0) = y / 2.0;
  return DensityMatrix::from_matrix({2, 2}, m);
}

PureState psi_theta(double theta) {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = std::sin(theta / 2.0);
  v(2) = std::cos(theta / 2.0);
  return PureState::from_amplitudes({2, 2}, v);
}

DensityMatrix rho_xtheta(double x, double theta) {
  require_range(x, 0.0, 1.0, "x");
  if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi)) {
    throw Error(ErrorKind::ParameterOutOfRange, "theta = " + std::to_string(theta) + " outside [0, 2pi)");
  }
  const ComplexMatrix m = x * psi_theta(theta).projector() + (1.0 - x) * ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix::from_matrix({2, 2}, m);
}

DensityMatrix pseudo_pure(const PureState& phi, double eps) {
  require_range(eps, 0.0, 1.0, "epsilon");
  const int d = phi.dims().total();
  const ComplexMatrix m = (1.0 - eps) * ComplexMatrix::Identity(d, d) / double(d) + eps * phi.projector();
  return DensityMatrix::from_matrix(phi.dims(), m);
}

std::vector<ComplexVector> tiles_upb_vectors() {
  const auto e = [](int i) { return basis_vector(3, i); };
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexVector all = e(0) + e(1) + e(2);
  return {
      r * product(e(0), e(0) - e(1)),
      r * product(e(2), e(1) - e(2)),
      r * product(e(0) - e(1), e(2)),
      r * product(e(1) - e(2), e(0)),
      product(all, all) / 3.0,
  };
}

DensityMatrix tiles_upb_state() {
  const auto vectors = tiles_upb_vectors();
  ComplexMatrix p = ComplexMatrix::Zero(9, 9);
  for (const auto& v : vectors) p += outer(v);
  const ComplexMatrix m = (ComplexMatrix::Identity(9, 9) - p) / double(9 - vectors.size());
  return DensityMatrix::from_matrix({3, 3}, m);
}

}  // namespace entanglekit
