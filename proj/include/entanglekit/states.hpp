#pragma once

// Bipartite pure and mixed states on H_A (x) H_B, their structural transforms,
// and the named two-party state families used throughout the library.
//
// Index convention: the composite basis vector |i>|mu> has flat index
// i * n_b + mu, with i running over subsystem A.

#include <limits>
#include <optional>
#include <vector>

#include "entanglekit/matkernel.hpp"

namespace entanglekit {

struct BipartiteDims {
  int n_a = 2;
  int n_b = 2;

  BipartiteDims() = default;
  BipartiteDims(int a, int b);

  int total() const { return n_a * n_b; }
  bool square() const { return n_a == n_b; }
  bool operator==(const BipartiteDims&) const = default;
};

enum class Side { A, B };

/// Unit vector sum_ij A_ij |i>|j>. The amplitude matrix A is stored directly;
/// the coordinate matrix Gamma = sqrt(N) A is derived on request.
class PureState {
 public:
  static PureState from_amplitudes(BipartiteDims dims, const ComplexVector& amplitudes);

  const BipartiteDims& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }

  /// n_a x n_b matrix with entries A_ij.
  ComplexMatrix amplitude_matrix() const;
  ComplexMatrix projector() const;

 private:
  PureState(BipartiteDims dims, ComplexVector amplitudes)
      : dims_(dims), amplitudes_(std::move(amplitudes)) {}

  BipartiteDims dims_;
  ComplexVector amplitudes_;
};

/// Validated bipartite density matrix: Hermitian within 1e-10, unit trace
/// within 1e-10, eigenvalues >= -1e-9. Small negative eigenvalues are clamped
/// to zero and the trace renormalized on construction.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(BipartiteDims dims, const ComplexMatrix& m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(BipartiteDims dims);

  const BipartiteDims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  std::vector<double> spectrum() const;  // descending
  double purity() const;                 // Tr rho^2
  double participation_ratio() const { return 1.0 / purity(); }

 private:
  DensityMatrix(BipartiteDims dims, ComplexMatrix m) : dims_(dims), matrix_(std::move(m)) {}

  BipartiteDims dims_;
  ComplexMatrix matrix_;
};

struct SchmidtData {
  std::vector<double> coefficients;  // lambda_i, descending, length min(n_a, n_b)
  ComplexMatrix left_vectors;        // columns |u_i> on H_A
  ComplexMatrix right_vectors;       // columns |v_i> on H_B
  int rank = 0;
  std::optional<double> angle_chi;   // 2x2 only, in [0, pi/4]
  // (m_0, m_1, ..., m_J): m_0 vanishing coefficients, then the multiplicity
  // of each distinct nonzero value in increasing order of value.
  std::vector<int> multiplicities;
};

inline constexpr double kSchmidtRankTol = 1e-10;
inline constexpr double kDegeneracyRelTol = 1e-8;

SchmidtData schmidt(const PureState& psi);

/// Reduced density matrix on the surviving subsystem (tracing out `traced`).
ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims, Side traced);
ComplexMatrix partial_trace(const DensityMatrix& rho, Side traced);

/// Partial transpose on the given subsystem; Hermitian, possibly indefinite.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims, Side side);
ComplexMatrix partial_transpose(const DensityMatrix& rho, Side side);

/// Realignment: R[(i,j),(mu,nu)] = rho[(i,mu),(j,nu)], size n_a^2 x n_b^2.
ComplexMatrix reshuffle(const ComplexMatrix& rho, BipartiteDims dims);
ComplexMatrix reshuffle(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Fano form

/// Hermitian traceless generators with Tr(s_i s_j) = 2 delta_ij. For n = 2
/// these are the Pauli matrices (x, y, z); for larger n the generalized
/// Gell-Mann matrices in the order symmetric, antisymmetric, diagonal.
struct GeneratorBasis {
  int dimension = 0;
  std::vector<ComplexMatrix> generators;
};

GeneratorBasis generator_basis(int n);

struct FanoForm {
  BipartiteDims dims;
  std::vector<double> tau_a;  // n_a^2 - 1
  std::vector<double> tau_b;  // n_b^2 - 1
  RealMatrix beta;            // (n_a^2 - 1) x (n_b^2 - 1)
};

FanoForm fano_form(const DensityMatrix& rho);
/// Rebuilds the matrix from its Fano components; no positivity check.
ComplexMatrix fano_matrix(const FanoForm& f);
DensityMatrix fano_reconstruct(const FanoForm& f);

enum class FlipSide { B, Both };

/// Sign flip of the Bloch vector(s) in the Fano form. Flipping B negates
/// tau_b and beta; flipping both negates tau_a and tau_b and keeps beta.
/// Requires n_a == n_b.
ComplexMatrix fano_flip(const DensityMatrix& rho, FlipSide side);

/// (sigma_y x sigma_y) rho^* (sigma_y x sigma_y) for two qubits.
DensityMatrix spin_flip_2q(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Entropies (natural logarithm)

inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

/// Renyi entropy S_q of a probability vector; q = 1 is Shannon/von Neumann,
/// q = kInfiniteOrder gives -ln max p, q = 0 gives ln(support size).
double renyi_entropy(const std::vector<double>& probabilities, double q);
double entropy(const DensityMatrix& rho, double q = 1.0);
double entropy_of_matrix(const ComplexMatrix& m, double q = 1.0);
/// S(rho_AB) - S(rho_A).
double conditional_entropy(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Families

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

PureState bell(BellKind kind);
/// (1/sqrt(N)) sum_i |ii> on N x N.
PureState max_entangled(int n);
/// Amplitude matrix U / sqrt(N) for a unitary U.
PureState max_entangled_from_unitary(const ComplexMatrix& u);
/// x |phi+><phi+| + (1 - x) 1/N^2 on N x N.
DensityMatrix werner(int n, double x);
/// a |psi-><psi-| + (1 - a) |00><00|.
DensityMatrix sigma_h(double a);
/// b |psi-><psi-| + (1 - b) |psi+><psi+|.
DensityMatrix sigma_b(double b);
DensityMatrix rho_m(double y);
/// sin(theta/2) |01> + cos(theta/2) |10>.
PureState psi_theta(double theta);
/// x |psi_theta><psi_theta| + (1 - x) 1/4.
DensityMatrix rho_xtheta(double x, double theta);
/// (1 - eps) 1/d + eps |phi><phi|.
DensityMatrix pseudo_pure(const PureState& phi, double eps);
/// The five product vectors of the 3x3 "Tiles" unextendible product basis.
std::vector<ComplexVector> tiles_upb_vectors();
/// (1 - P) / 4 with P the projector onto the Tiles basis.
DensityMatrix tiles_upb_state();

}  // namespace entanglekit
