#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "entanglekit/matkernel.hpp"
#include "entanglekit/sampling.hpp"
#include "entanglekit/states.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs(double(a) - double(b)) <= (tol))

namespace testing {

using namespace entanglekit;

inline ComplexMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(d.size(), d.size());
  int i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix random_hermitian(int n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

inline DensityMatrix conjugate_local(const DensityMatrix& rho, const ComplexMatrix& ua, const ComplexMatrix& ub) {
  const ComplexMatrix u = kron(ua, ub);
  return DensityMatrix::from_matrix(rho.dims(), u * rho.matrix() * u.adjoint());
}

inline PureState apply_local(const PureState& psi, const ComplexMatrix& ua, const ComplexMatrix& ub) {
  return PureState::from_amplitudes(psi.dims(), kron(ua, ub) * psi.amplitudes());
}

inline PureState product(const ComplexVector& a, const ComplexVector& b) {
  return PureState::from_amplitudes({int(a.size()), int(b.size())}, kron(a, b));
}

inline PureState from_schmidt(const std::vector<double>& lambda) {
  const int n = int(lambda.size());
  ComplexVector v = ComplexVector::Zero(n * n);
  for (int i = 0; i < n; ++i) v(i * n + i) = std::sqrt(lambda[i]);
  return PureState::from_amplitudes({n, n}, v);
}

inline DensityMatrix dm(const PureState& psi) { return DensityMatrix::from_pure(psi); }

inline void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace testing
