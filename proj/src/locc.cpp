#include "entanglekit/locc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace entanglekit {

namespace {

std::vector<double> padded(const std::vector<double>& v, std::size_t n) {
  std::vector<double> out = v;
  out.resize(n, 0.0);
  return out;
}

}  // namespace

SchmidtVector::SchmidtVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::MalformedSpectrum, "empty Schmidt vector");
  for (double& v : values_) {
    if (!std::isfinite(v) || v < -kMajorizationTol) {
      throw Error(ErrorKind::MalformedSpectrum, "Schmidt coefficients must be nonnegative");
    }
    v = std::max(v, 0.0);
  }
  const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::MalformedSpectrum, "Schmidt coefficients sum to " + std::to_string(sum));
  }
  for (double& v : values_) v /= sum;
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

SchmidtVector SchmidtVector::of(const PureState& psi) { return SchmidtVector(schmidt(psi).coefficients); }

int SchmidtVector::rank(double tol) const {
  return static_cast<int>(std::count_if(values_.begin(), values_.end(), [tol](double v) { return v > tol; }));
}

bool majorizes(const SchmidtVector& a, const SchmidtVector& b) {
  const std::size_t n = std::max(a.size(), b.size());
  const std::vector<double> pa = padded(a.values(), n), pb = padded(b.values(), n);
  double sa = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sa += pa[k];
    sb += pb[k];
    if (sa < sb - kMajorizationTol) return false;
  }
  return true;
}

bool nielsen_convertible(const SchmidtVector& source, const SchmidtVector& target) {
  return majorizes(target, source);
}

bool nielsen_convertible(const PureState& source, const PureState& target) {
  return nielsen_convertible(SchmidtVector::of(source), SchmidtVector::of(target));
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Future: return "Future";
    case Relation::Past: return "Past";
    case Relation::Interconvertible: return "Interconvertible";
    case Relation::Incomparable: return "Incomparable";
  }
  return "?";
}

Relation classify(const SchmidtVector& source, const SchmidtVector& target) {
  const bool forward = nielsen_convertible(source, target);
  const bool backward = nielsen_convertible(target, source);
  if (forward && backward) return Relation::Interconvertible;
  if (forward) return Relation::Future;
  if (backward) return Relation::Past;
  return Relation::Incomparable;
}

double vidal_probability(const SchmidtVector& source, const SchmidtVector& target) {
  if (nielsen_convertible(source, target)) return 1.0;
  const std::size_t n = std::max(source.size(), target.size());
  const std::vector<double> ps = padded(source.values(), n), pt = padded(target.values(), n);
  double p = 1.0;
  double tail_s = 0.0, tail_t = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    tail_s += ps[k];
    tail_t += pt[k];
    if (tail_t > kSchmidtRankTol) p = std::min(p, tail_s / tail_t);
  }
  // A target of larger Schmidt rank leaves a tail the source cannot fill.
  if (target.rank() > source.rank()) p = 0.0;
  return std::clamp(p, 0.0, 1.0);
}

ConversionReport conversion_report(const SchmidtVector& source, const SchmidtVector& target) {
  return {classify(source, target), vidal_probability(source, target)};
}

ConversionReport conversion_report(const PureState& source, const PureState& target) {
  return conversion_report(SchmidtVector::of(source), SchmidtVector::of(target));
}

}  // namespace entanglekit
