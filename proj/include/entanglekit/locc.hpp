#pragma once

// Pure-state LOCC convertibility through majorization of Schmidt vectors.

#include <vector>

#include "entanglekit/states.hpp"

namespace entanglekit {

inline constexpr double kMajorizationTol = 1e-9;

/// Descending, nonnegative, unit-sum vector. The constructor sorts,
/// validates the sum within 1e-9, and renormalizes.
class SchmidtVector {
 public:
  explicit SchmidtVector(std::vector<double> values);
  static SchmidtVector of(const PureState& psi);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  int rank(double tol = kSchmidtRankTol) const;

 private:
  std::vector<double> values_;
};

/// True when b is majorized by a: every partial sum of a dominates that of b
/// (ties within 1e-9 count as satisfied). Shorter vectors are zero padded.
bool majorizes(const SchmidtVector& a, const SchmidtVector& b);

/// Deterministic LOCC conversion source -> target is possible iff the source
/// Schmidt vector is majorized by the target's.
bool nielsen_convertible(const SchmidtVector& source, const SchmidtVector& target);
bool nielsen_convertible(const PureState& source, const PureState& target);

/// Where `target` sits relative to `source`: Future when only source -> target
/// works, Past when only target -> source, both, or neither.
enum class Relation { Future, Past, Interconvertible, Incomparable };

const char* to_string(Relation r);

struct ConversionReport {
  Relation relation = Relation::Incomparable;
  double p_c = 0.0;
};

Relation classify(const SchmidtVector& source, const SchmidtVector& target);

/// Optimal probability of source -> target:
/// min_k sum_{i>=k} source_i / sum_{i>=k} target_i, clamped to [0, 1], and
/// exactly 1 whenever the deterministic conversion is possible.
double vidal_probability(const SchmidtVector& source, const SchmidtVector& target);

ConversionReport conversion_report(const SchmidtVector& source, const SchmidtVector& target);
ConversionReport conversion_report(const PureState& source, const PureState& target);

}  // namespace entanglekit
