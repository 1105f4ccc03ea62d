#include "entanglekit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "entanglekit/sampling.hpp"

namespace entanglekit {

namespace {

constexpr cplx I{0.0, 1.0};

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.dims() != BipartiteDims{2, 2}) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is defined for two qubits only");
  }
}

void require_unit(double v, const char* name) {
  if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
    throw Error(ErrorKind::ParameterOutOfRange, std::string(name) + " = " + std::to_string(v) + " outside [0, 1]");
  }
}

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

double binary_entropy(double p) { return -xlogx(p) - xlogx(1.0 - p); }

const ComplexMatrix& sigma_yy() {
  static const ComplexMatrix yy = [] {
    ComplexMatrix sy(2, 2);
    sy << 0.0, -I, I, 0.0;
    return kron(sy, sy);
  }();
  return yy;
}

// Eigenvalues of rho below this are treated as exact zeros when building
// ensemble vectors sqrt(d_j)|e_j>.
constexpr double kRankFloor = 1e-14;

struct Factor {
  ComplexMatrix w;  // columns sqrt(d_j) |e_j>
  std::vector<double> weights;
};

Factor eigen_factor(const DensityMatrix& rho) {
  const EigenSystem es = hermitian_eigensystem(rho.matrix());
  Factor f;
  std::vector<Eigen::Index> keep;
  for (std::size_t j = 0; j < es.values.size(); ++j)
    if (es.values[j] > kRankFloor) keep.push_back(static_cast<Eigen::Index>(j));
  f.w.resize(rho.matrix().rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const double d = es.values[static_cast<std::size_t>(keep[k])];
    f.w.col(static_cast<Eigen::Index>(k)) = std::sqrt(d) * es.vectors.col(keep[k]);
    f.weights.push_back(d);
  }
  return f;
}

// Entanglement entropy of the unnormalized vector v, returned with its weight.
double entropy_of_vector(const ComplexVector& v, BipartiteDims dims, double norm2) {
  if (dims.n_a == 2 && dims.n_b == 2) {
    const double c = std::min(1.0, 2.0 * std::abs(v(0) * v(3) - v(1) * v(2)) / norm2);
    return eof_from_concurrence(c);
  }
  ComplexMatrix a(dims.n_a, dims.n_b);
  for (int i = 0; i < dims.n_a; ++i)
    for (int j = 0; j < dims.n_b; ++j) a(i, j) = v(i * dims.n_b + j);
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  double s = 0.0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    s -= xlogx(svd.singularValues()(k) * svd.singularValues()(k) / norm2);
  }
  return s;
}

double ensemble_entanglement(const ComplexMatrix& vectors, BipartiteDims dims) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < vectors.cols(); ++i) {
    const double p = vectors.col(i).squaredNorm();
    if (p < 1e-300) continue;
    total += p * entropy_of_vector(vectors.col(i), dims, p);
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------

double entanglement_entropy(const PureState& psi) { return renyi_entropy(schmidt(psi).coefficients, 1.0); }

double renyi_entanglement(const PureState& psi, double q) { return renyi_entropy(schmidt(psi).coefficients, q); }

double tangle(const PureState& psi) {
  double s2 = 0.0;
  for (double l : schmidt(psi).coefficients) s2 += l * l;
  return std::max(0.0, 2.0 * (1.0 - s2));
}

double concurrence_pure(const PureState& psi) { return std::sqrt(tangle(psi)); }

ClosestSeparablePure closest_separable_pure(const PureState& psi) {
  const double lmax = std::min(1.0, schmidt(psi).coefficients.front());
  ClosestSeparablePure out;
  out.distance_fs = std::acos(std::sqrt(lmax));
  out.distance_bures = std::sqrt(2.0 * (1.0 - std::sqrt(lmax)));
  out.e_infinity = -std::log(lmax);
  return out;
}

double bures_distance_to_separable(const PureState& psi) {
  const double e2 = renyi_entanglement(psi, 2.0);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::exp(-e2)));
}

// ---------------------------------------------------------------------------

double negativity(const DensityMatrix& rho) {
  return std::max(0.0, trace_norm(partial_transpose(rho, Side::A)) - 1.0);
}

double log_negativity(const DensityMatrix& rho) { return std::log1p(negativity(rho)); }

double reshuffling_negativity(const DensityMatrix& rho) { return trace_norm(reshuffle(rho)) - 1.0; }

// ---------------------------------------------------------------------------

std::vector<double> wootters_lambdas(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  // With rho = W W^dagger, the nonzero eigenvalues of rho * rho~ coincide with
  // those of tau tau^dagger for the symmetric tau = W^T (sy x sy) W, so the
  // lambda_i are the singular values of tau.
  const Factor f = eigen_factor(rho);
  std::vector<double> lambdas(4, 0.0);
  if (f.w.cols() > 0) {
    const ComplexMatrix tau = f.w.transpose() * sigma_yy() * f.w;
    const std::vector<double> s = singular_values(tau);
    std::copy(s.begin(), s.end(), lambdas.begin());
  }
  return lambdas;
}

double concurrence_2q(const DensityMatrix& rho) {
  const std::vector<double> l = wootters_lambdas(rho);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double eof_from_concurrence(double c) {
  require_unit(c, "concurrence");
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double eof_2q(const DensityMatrix& rho) { return eof_from_concurrence(concurrence_2q(rho)); }

double max_fidelity_2q(const DensityMatrix& rho) {
  require_two_qubits(rho, "maximal fidelity");
  const RealMatrix beta = fano_form(rho).beta;
  Eigen::JacobiSVD<RealMatrix> svd(beta);
  const auto& k = svd.singularValues();
  const double sign = beta.determinant() < 0.0 ? -1.0 : 1.0;
  return std::clamp(0.25 * (1.0 + k(0) + k(1) - sign * k(2)), 0.0, 1.0);
}

double max_fidelity_bruteforce(const DensityMatrix& rho, int samples, std::uint64_t seed) {
  require_two_qubits(rho, "maximal fidelity");
  if (samples < 1) throw Error(ErrorKind::ParameterOutOfRange, "need at least one sample");
  Rng rng(seed);
  const ComplexMatrix& m = rho.matrix();
  double best = -1.0;
  ComplexVector phi(4);
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix u = random_su2(rng);
    // (U (x) 1)|phi+> has amplitude matrix U / sqrt(2).
    phi << u(0, 0), u(0, 1), u(1, 0), u(1, 1);
    phi *= std::numbers::sqrt2 / 2.0;
    best = std::max(best, phi.dot(m * phi).real());
  }
  return best;
}

double eigenensemble_entanglement(const DensityMatrix& rho) {
  return ensemble_entanglement(eigen_factor(rho).w, rho.dims());
}

double eof_ensemble_search(const DensityMatrix& rho, const EofSearchConfig& config) {
  const Factor f = eigen_factor(rho);
  const int rank = static_cast<int>(f.w.cols());
  const BipartiteDims dims = rho.dims();
  if (rank <= 1) return ensemble_entanglement(f.w, dims);

  const int m = config.ensemble_size == 0 ? rank : config.ensemble_size;
  if (m < rank || m > rank * rank) {
    throw Error(ErrorKind::ParameterOutOfRange,
                "ensemble size " + std::to_string(m) + " outside [rank, rank^2] = [" + std::to_string(rank) +
                    ", " + std::to_string(rank * rank) + "]");
  }
  if (config.restarts < 1 || config.steps < 0) throw Error(ErrorKind::ParameterOutOfRange, "bad search budget");

  // Ensemble vector i is sum_j U_ij w_j for an m x m unitary U; only the
  // first `rank` columns of U enter.
  const auto objective = [&](const ComplexMatrix& u) {
    return ensemble_entanglement(f.w * u.leftCols(rank).transpose(), dims);
  };

  Rng rng(config.seed);
  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < config.restarts; ++restart) {
    ComplexMatrix u = restart == 0 ? id : random_unitary(m, rng);
    double value = objective(u);
    double step = 0.3;
    for (int it = 0; it < config.steps; ++it) {
      ComplexMatrix g = ginibre(m, m, rng);
      ComplexMatrix h = 0.5 * (g + g.adjoint());
      h /= h.norm();
      // Cayley transform of a Hermitian generator is exactly unitary.
      const ComplexMatrix k = (0.5 * step) * I * h;
      const ComplexMatrix trial = u * (id - k).partialPivLu().solve(id + k);
      const double tv = objective(trial);
      if (tv < value) {
        u = trial;
        value = tv;
        step = std::min(1.0, step * 1.5);
      } else {
        step = std::max(1e-6, step * 0.9);
      }
    }
    best = std::min(best, value);
  }
  return best;
}

// ---------------------------------------------------------------------------

double neg_lower_bound(double c) {
  require_unit(c, "concurrence");
  return std::sqrt((1.0 - c) * (1.0 - c) + c * c) + c - 1.0;
}

Interval fid_bounds_from_c(double c) {
  require_unit(c, "concurrence");
  return {c <= 1.0 / 3.0 ? (1.0 + c) / 4.0 : c, (1.0 + c) / 2.0};
}

Interval fid_bounds_from_n(double n) {
  require_unit(n, "negativity");
  const double knee = (std::sqrt(5.0) - 2.0) / 3.0;
  const double lo = n <= knee ? 0.25 + 0.125 * (n + std::sqrt(5.0 * n * n + 4.0 * n))
                              : std::sqrt(2.0 * n * (n + 1.0)) - n;
  return {lo, (1.0 + n) / 2.0};
}

double er_sigma_h(double a) {
  require_unit(a, "a");
  a = std::clamp(a, 0.0, 1.0);
  const double first = (a - 2.0) * std::log(1.0 - a / 2.0);
  return first + xlogx(1.0 - a);
}

double er_lower_bound(double eof) {
  if (!(eof >= -1e-12 && eof <= std::numbers::ln2 + 1e-12)) {
    throw Error(ErrorKind::ParameterOutOfRange, "E_F = " + std::to_string(eof) + " outside [0, ln 2]");
  }
  // Larger preimage mu in [1/2, 1] of the binary entropy; h decreases there.
  double lo = 0.5, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy(mid) > eof ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  const double c = std::sqrt(std::max(0.0, 1.0 - (2.0 * mu - 1.0) * (2.0 * mu - 1.0)));
  return er_sigma_h(std::min(c, 1.0));
}

// ---------------------------------------------------------------------------

MeasureReport measure_report(const DensityMatrix& rho, const PureState* pure) {
  MeasureReport r;
  r.values["purity"] = rho.purity();
  r.values["participation_ratio"] = rho.participation_ratio();
  r.values["von_neumann_entropy"] = entropy(rho);
  r.values["conditional_entropy"] = conditional_entropy(rho);
  r.values["negativity"] = negativity(rho);
  r.values["log_negativity"] = log_negativity(rho);
  r.values["reshuffling_negativity"] = reshuffling_negativity(rho);

  if (rho.dims() == BipartiteDims{2, 2}) {
    r.values["concurrence"] = concurrence_2q(rho);
    r.values["entanglement_of_formation"] = eof_2q(rho);
    r.values["max_fidelity"] = max_fidelity_2q(rho);
    r.flags["two_qubit_closed_forms"] = "applied";
  } else {
    r.flags["two_qubit_closed_forms"] = "not applicable: dims " + std::to_string(rho.dims().n_a) + "x" +
                                        std::to_string(rho.dims().n_b);
  }

  if (pure != nullptr) {
    const ClosestSeparablePure closest = closest_separable_pure(*pure);
    r.values["entanglement_entropy"] = entanglement_entropy(*pure);
    r.values["renyi_entanglement_2"] = renyi_entanglement(*pure, 2.0);
    r.values["tangle"] = tangle(*pure);
    r.values["concurrence_pure"] = concurrence_pure(*pure);
    r.values["fubini_study_distance"] = closest.distance_fs;
    r.values["bures_distance_pure_separable"] = closest.distance_bures;
    r.values["bures_distance_separable"] = bures_distance_to_separable(*pure);
    r.values["e_infinity"] = closest.e_infinity;
    r.flags["pure_state_measures"] = "applied";
  } else {
    r.flags["pure_state_measures"] = "not applicable: mixed state input";
  }
  return r;
}

}  // namespace entanglekit
