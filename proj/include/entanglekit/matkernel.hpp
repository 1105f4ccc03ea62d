#pragma once

// Dense complex linear algebra for small matrices (dimension up to ~100).
// Storage and the underlying decompositions come from Eigen; this layer adds
// the validation, ordering, and tolerance conventions the rest of the library
// relies on.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "entanglekit/error.hpp"

namespace entanglekit {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Maximum absolute entry deviation |m - m^dagger| accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues in [-kPsdFloor, 0) are treated as rounding noise and clamped.
inline constexpr double kPsdFloor = 1e-9;

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column i belongs to values[i]
};

/// max_ij |m_ij - conj(m_ji)|. Throws NotSquare for rectangular input.
double hermiticity_defect(const ComplexMatrix& m);

/// Full eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// The basis inside a degenerate eigenspace is unspecified.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double tol = kHermitianTol);

/// Eigenvalues only (descending); cheaper than the full system.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = kHermitianTol);

/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& m);

double trace_norm(const ComplexMatrix& m);

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-tol, 0) are clamped to zero; anything more negative raises NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol = kPsdFloor);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Projector |v><v| (no normalization applied).
ComplexMatrix outer(const ComplexVector& v);

}  // namespace entanglekit
