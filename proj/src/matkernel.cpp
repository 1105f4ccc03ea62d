#include "entanglekit/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace entanglekit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::MalformedSpectrum: return "MalformedSpectrum";
    case ErrorKind::MalformedProfile: return "MalformedProfile";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::UnknownMeasure: return "UnknownMeasure";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

namespace {

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::NotSquare, "expected a nonempty square matrix, got " +
                                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m);
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol)) {
    throw Error(ErrorKind::NotHermitian,
                "max |m - m^dagger| = " + std::to_string(defect) + " exceeds " + std::to_string(tol));
  }
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double tol) {
  require_hermitian(m, tol);
  // Eigen reads only the lower triangle; symmetrize so both halves count.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::ComputeEigenvectors);
  const Eigen::Index n = h.rows();
  EigenSystem out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
  require_hermitian(m, tol);
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
  std::reverse(values.begin(), values.end());
  return values;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) throw Error(ErrorKind::MalformedInput, "singular_values of an empty matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());  // Eigen sorts descending
}

double trace_norm(const ComplexMatrix& m) {
  double total = 0.0;
  for (double s : singular_values(m)) total += s;
  return total;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol) {
  const EigenSystem es = hermitian_eigensystem(m, std::max(tol, kHermitianTol));
  const Eigen::Index n = m.rows();
  // eigenvalues at roundoff level are zero; their square roots would not be
  const double noise = 8.0 * std::numeric_limits<double>::epsilon() * double(n) *
                       std::max(std::abs(es.values.front()), std::abs(es.values.back()));
  Eigen::VectorXd roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = es.values[static_cast<std::size_t>(i)];
    if (v < -tol) {
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(v) + " below -" + std::to_string(tol));
    }
    roots(i) = v > noise ? std::sqrt(v) : 0.0;
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace entanglekit
