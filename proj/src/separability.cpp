#include "entanglekit/separability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entanglekit/state_io.hpp"

namespace entanglekit {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::EntanglementDetected: return "EntanglementDetected";
    case Outcome::Passed: return "Passed";
    case Outcome::NotApplicable: return "NotApplicable";
  }
  return "?";
}

const char* to_string(Aggregate a) {
  switch (a) {
    case Aggregate::Separable: return "Separable";
    case Aggregate::Entangled: return "Entangled";
    case Aggregate::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

CriterionVerdict verdict(std::string name, bool detected, double evidence, std::string detail) {
  return {std::move(name), detected ? Outcome::EntanglementDetected : Outcome::Passed, evidence, std::move(detail)};
}

std::vector<double> clamped_spectrum(const ComplexMatrix& m) {
  std::vector<double> s = hermitian_eigenvalues(m);
  for (double& v : s) v = std::max(v, 0.0);
  return s;
}

// Largest amount by which a partial sum of `inner` exceeds that of `outer`
// (both descending, zero padded). Positive means inner is not majorized by outer.
double majorization_excess(const std::vector<double>& inner, const std::vector<double>& outer) {
  const std::size_t n = std::max(inner.size(), outer.size());
  double si = 0.0, so = 0.0, worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    si += k < inner.size() ? inner[k] : 0.0;
    so += k < outer.size() ? outer[k] : 0.0;
    worst = std::max(worst, si - so);
  }
  return worst;
}

std::string order_label(double q) {
  if (std::isinf(q)) return "inf";
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

CriterionVerdict ppt_criterion(const DensityMatrix& rho, double threshold) {
  const double lowest = hermitian_eigenvalues(partial_transpose(rho, Side::A)).back();
  return verdict("ppt", lowest < -threshold, lowest, "minimal eigenvalue of rho^{T_A}");
}

CriterionVerdict reduction_criterion(const DensityMatrix& rho, double threshold) {
  const BipartiteDims dims = rho.dims();
  const ComplexMatrix ia = ComplexMatrix::Identity(dims.n_a, dims.n_a);
  const ComplexMatrix ib = ComplexMatrix::Identity(dims.n_b, dims.n_b);
  const ComplexMatrix left = kron(partial_trace(rho, Side::B), ib) - rho.matrix();
  const ComplexMatrix right = kron(ia, partial_trace(rho, Side::A)) - rho.matrix();
  const double lowest = std::min(hermitian_eigenvalues(left).back(), hermitian_eigenvalues(right).back());
  return verdict("reduction", lowest < -threshold, lowest, "minimal eigenvalue of rho_A(x)1 - rho and 1(x)rho_B - rho");
}

CriterionVerdict majorisation_criterion(const DensityMatrix& rho, double threshold) {
  const std::vector<double> global = clamped_spectrum(rho.matrix());
  const double excess = std::max(majorization_excess(global, clamped_spectrum(partial_trace(rho, Side::B))),
                                 majorization_excess(global, clamped_spectrum(partial_trace(rho, Side::A))));
  return verdict("majorisation", excess > threshold, excess, "largest partial-sum excess of spec(rho) over spec(rho_A), spec(rho_B)");
}

CriterionVerdict entropy_criterion(const DensityMatrix& rho, double q, double threshold) {
  const double global = entropy(rho, q);
  const double ea = entropy_of_matrix(partial_trace(rho, Side::B), q);
  const double eb = entropy_of_matrix(partial_trace(rho, Side::A), q);
  const double excess = std::max(ea, eb) - global;
  return verdict("entropy_q=" + order_label(q), excess > threshold, excess,
                 "max(S_q(rho_A), S_q(rho_B)) - S_q(rho)");
}

CriterionVerdict reshuffling_criterion(const DensityMatrix& rho, double threshold) {
  const double excess = trace_norm(reshuffle(rho)) - 1.0;
  return verdict("reshuffling", excess > threshold, excess, "||rho^R||_Tr - 1");
}

BallMembership mehta_ball_test(const DensityMatrix& rho) {
  if (!rho.dims().square()) throw Error(ErrorKind::NotApplicable, "Mehta ball test needs N x N");
  const double n = rho.dims().n_a;
  return 1.0 / rho.purity() >= n * n - 1.0 - 1e-12 ? BallMembership::InsideSeparableBall : BallMembership::Outside;
}

double absolute_separability_margin(const std::vector<double>& x) {
  if (x.size() != 4) throw Error(ErrorKind::MalformedSpectrum, "two-qubit spectrum needs 4 entries");
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(x[i] >= -1e-12)) throw Error(ErrorKind::MalformedSpectrum, "negative eigenvalue");
    if (i > 0 && x[i] > x[i - 1] + 1e-12) throw Error(ErrorKind::MalformedSpectrum, "spectrum not descending");
    sum += x[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorKind::MalformedSpectrum, "spectrum does not sum to 1");
  return x[0] - x[2] - 2.0 * std::sqrt(std::max(x[1], 0.0) * std::max(x[3], 0.0));
}

AbsoluteSeparability absolute_separability_2q(const std::vector<double>& spectrum) {
  return absolute_separability_margin(spectrum) <= 1e-12 ? AbsoluteSeparability::AbsolutelySeparable
                                                         : AbsoluteSeparability::Not;
}

BoundaryClass boundary_membership_2q(const DensityMatrix& rho) {
  if (rho.dims() != BipartiteDims{2, 2}) throw Error(ErrorKind::DimensionMismatch, "two qubits only");
  const std::vector<double> pt = hermitian_eigenvalues(partial_transpose(rho, Side::A));
  if (pt.back() < -kViolationThreshold) {
    throw Error(ErrorKind::NotApplicable, "state is not PPT, so it is entangled");
  }
  double det_rho = 1.0, det_pt = 1.0;
  for (double v : rho.spectrum()) det_rho *= v;
  for (double v : pt) det_pt *= v;
  return (det_rho <= 1e-12 || det_pt <= 1e-12) ? BoundaryClass::BoundarySeparable : BoundaryClass::InteriorSeparable;
}

WitnessOperator WitnessOperator::normalized(const ComplexMatrix& w) {
  const double defect = hermiticity_defect(w);
  if (defect > kHermitianTol) throw Error(ErrorKind::NotHermitian, "witness is not Hermitian");
  const double tr = w.trace().real();
  if (std::abs(tr) < 1e-15) throw Error(ErrorKind::ParameterOutOfRange, "witness has zero trace");
  return WitnessOperator{0.5 * (w + w.adjoint()) / tr};
}

WitnessResult witness_expectation(const DensityMatrix& rho, const WitnessOperator& w) {
  if (w.matrix.rows() != rho.matrix().rows() || w.matrix.cols() != rho.matrix().cols()) {
    throw Error(ErrorKind::DimensionMismatch, "witness and state sizes differ");
  }
  const double value = (rho.matrix() * w.matrix).trace().real();
  return {value, value < -1e-12};
}

SeparabilityReport aggregate_report(const DensityMatrix& rho, const CriterionSelection& config) {
  SeparabilityReport report;
  const double t = config.threshold;
  if (config.ppt) report.verdicts.push_back(ppt_criterion(rho, t));
  if (config.reduction) report.verdicts.push_back(reduction_criterion(rho, t));
  if (config.majorisation) report.verdicts.push_back(majorisation_criterion(rho, t));
  for (double q : config.entropy_orders) report.verdicts.push_back(entropy_criterion(rho, q, t));
  if (config.reshuffling) report.verdicts.push_back(reshuffling_criterion(rho, t));
  if (rho.dims().square()) report.inside_separable_ball = mehta_ball_test(rho) == BallMembership::InsideSeparableBall;

  const bool detected = std::any_of(report.verdicts.begin(), report.verdicts.end(),
                                    [](const CriterionVerdict& v) { return v.outcome == Outcome::EntanglementDetected; });
  const bool ppt_decisive =
      config.ppt && rho.dims().total() <= 6 &&
      std::any_of(report.verdicts.begin(), report.verdicts.end(),
                  [](const CriterionVerdict& v) { return v.criterion == "ppt" && v.outcome == Outcome::Passed; });
  const bool ball_decisive = rho.dims() == BipartiteDims{2, 2} && report.inside_separable_ball.value_or(false);

  if (detected) {
    report.aggregate = Aggregate::Entangled;
  } else if (ppt_decisive || ball_decisive) {
    report.aggregate = Aggregate::Separable;
  } else {
    report.aggregate = Aggregate::Inconclusive;
  }
  return report;
}

}  // namespace entanglekit
