#pragma once

// Separability criteria. Each criterion reports a verdict plus the scalar it
// was decided on; aggregate_report combines them and only claims
// separability where a criterion is decisive.

#include <optional>
#include <string>
#include <vector>

#include "entanglekit/states.hpp"

namespace entanglekit {

inline constexpr double kViolationThreshold = 1e-9;

enum class Outcome { EntanglementDetected, Passed, NotApplicable };
enum class Aggregate { Separable, Entangled, Inconclusive };

const char* to_string(Outcome o);
const char* to_string(Aggregate a);

struct CriterionVerdict {
  std::string criterion;
  Outcome outcome = Outcome::NotApplicable;
  double evidence = 0.0;
  std::string detail;
};

// Evidence conventions:
//   ppt, reduction        minimal eigenvalue; detected when < -threshold
//   majorisation, entropy largest violation; detected when > threshold
//   reshuffling           ||rho^R||_Tr - 1;   detected when > threshold
CriterionVerdict ppt_criterion(const DensityMatrix& rho, double threshold = kViolationThreshold);
CriterionVerdict reduction_criterion(const DensityMatrix& rho, double threshold = kViolationThreshold);
CriterionVerdict majorisation_criterion(const DensityMatrix& rho, double threshold = kViolationThreshold);
CriterionVerdict entropy_criterion(const DensityMatrix& rho, double q, double threshold = kViolationThreshold);
CriterionVerdict reshuffling_criterion(const DensityMatrix& rho, double threshold = kViolationThreshold);

enum class BallMembership { InsideSeparableBall, Outside };

/// Mehta's bound: 1/Tr rho^2 >= N^2 - 1 implies PPT. N x N only.
BallMembership mehta_ball_test(const DensityMatrix& rho);

enum class AbsoluteSeparability { AbsolutelySeparable, Not };

/// x1 - x3 - 2 sqrt(x2 x4) for a descending two-qubit spectrum.
double absolute_separability_margin(const std::vector<double>& spectrum);
AbsoluteSeparability absolute_separability_2q(const std::vector<double>& spectrum);

enum class BoundaryClass { InteriorSeparable, BoundarySeparable };

/// Two-qubit PPT states only: on the separable boundary iff det rho = 0 or
/// det rho^{T_A} = 0. Throws NotApplicable when the state is not PPT.
BoundaryClass boundary_membership_2q(const DensityMatrix& rho);

struct WitnessOperator {
  ComplexMatrix matrix;

  /// Hermitian check, then rescales to unit trace.
  static WitnessOperator normalized(const ComplexMatrix& w);
};

struct WitnessResult {
  double value = 0.0;
  bool detected = false;
};

WitnessResult witness_expectation(const DensityMatrix& rho, const WitnessOperator& w);

struct CriterionSelection {
  bool ppt = true;
  bool reduction = true;
  bool majorisation = true;
  bool reshuffling = true;
  std::vector<double> entropy_orders{0.5, 1.0, 2.0, kInfiniteOrder};
  double threshold = kViolationThreshold;
};

struct SeparabilityReport {
  std::vector<CriterionVerdict> verdicts;
  Aggregate aggregate = Aggregate::Inconclusive;
  std::optional<bool> inside_separable_ball;  // N x N only
};

SeparabilityReport aggregate_report(const DensityMatrix& rho, const CriterionSelection& config = {});

}  // namespace entanglekit
