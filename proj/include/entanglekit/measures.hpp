#pragma once

// Entanglement quantifiers. Entropic values use the natural logarithm.

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "entanglekit/states.hpp"

namespace entanglekit {

// --- pure states -----------------------------------------------------------

double entanglement_entropy(const PureState& psi);
double renyi_entanglement(const PureState& psi, double q);
/// 2 (1 - sum lambda_i^2), in [0, 2(N-1)/N].
double tangle(const PureState& psi);
double concurrence_pure(const PureState& psi);

struct ClosestSeparablePure {
  double distance_fs = 0.0;      // arccos sqrt(lambda_max)
  double distance_bures = 0.0;   // [2 (1 - sqrt(lambda_max))]^{1/2}
  double e_infinity = 0.0;       // -ln lambda_max
};

ClosestSeparablePure closest_separable_pure(const PureState& psi);

/// Bures distance of a pure state to the closest separable mixed state,
/// sqrt(2 - 2 exp(-E_2)), equal to the concurrence.
double bures_distance_to_separable(const PureState& psi);

// --- general mixed states --------------------------------------------------

/// ||rho^{T_A}||_Tr - 1 (never negative).
double negativity(const DensityMatrix& rho);
double log_negativity(const DensityMatrix& rho);
/// ||rho^R||_Tr - 1, reported signed.
double reshuffling_negativity(const DensityMatrix& rho);

// --- two qubits ------------------------------------------------------------

/// Descending lambda_i of the Wootters construction: square roots of the
/// eigenvalues of rho * spin_flip(rho).
std::vector<double> wootters_lambdas(const DensityMatrix& rho);
double concurrence_2q(const DensityMatrix& rho);
/// Binary entropy of (1 + sqrt(1 - C^2)) / 2.
double eof_from_concurrence(double c);
double eof_2q(const DensityMatrix& rho);
double max_fidelity_2q(const DensityMatrix& rho);

/// Largest <phi|rho|phi> over `samples` Haar-random maximally entangled
/// (U (x) 1)|phi+>. A lower estimate of max_fidelity_2q.
double max_fidelity_bruteforce(const DensityMatrix& rho, int samples, std::uint64_t seed);

struct EofSearchConfig {
  int ensemble_size = 0;  // 0: use the rank of rho
  int restarts = 20;
  int steps = 2000;
  std::uint64_t seed = 1;
};

/// Upper estimate of the entanglement of formation: minimizes the average
/// entanglement entropy over ensembles obtained by mixing the eigen-ensemble
/// with isometries. Restart 0 starts from the eigen-ensemble itself.
double eof_ensemble_search(const DensityMatrix& rho, const EofSearchConfig& config = {});

/// Average entanglement entropy of the eigen-ensemble of rho.
double eigenensemble_entanglement(const DensityMatrix& rho);

// --- bound curves between two-qubit measures -------------------------------

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// sqrt((1-C)^2 + C^2) + C - 1, lower bound of negativity at concurrence C.
double neg_lower_bound(double c);
Interval fid_bounds_from_c(double c);
Interval fid_bounds_from_n(double n);
/// Lower bound on relative entropy of entanglement at a given E_F.
double er_lower_bound(double eof);
/// Relative entropy of entanglement of sigma_H(a).
double er_sigma_h(double a);

// --- aggregated report -----------------------------------------------------

struct MeasureReport {
  std::map<std::string, double> values;
  std::map<std::string, std::string> flags;
};

/// Everything applicable to the state: negativities and purity always,
/// two-qubit closed forms for 2x2, pure-state measures when `pure` is given.
MeasureReport measure_report(const DensityMatrix& rho, const PureState* pure = nullptr);

}  // namespace entanglekit
