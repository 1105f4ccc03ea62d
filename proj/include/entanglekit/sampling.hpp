#pragma once

// Seeded random states and Monte Carlo estimates.
//
// The generator is std::mt19937_64 (whose output sequence is fixed by the
// C++ standard) feeding a hand-written Box-Muller transform, so a seed gives
// the same sample stream on every conforming platform.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "entanglekit/measures.hpp"
#include "entanglekit/states.hpp"

namespace entanglekit {

class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64+box-muller/v1";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal();
  /// Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  cplx complex_normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// n x n matrix of independent standard complex Gaussians.
ComplexMatrix ginibre(int rows, int cols, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(int n, Rng& rng);
/// Haar-distributed element of SU(2) from a uniform point on S^3.
ComplexMatrix random_su2(Rng& rng);

/// Fubini-Study (unitarily invariant) random pure state.
PureState random_pure(BipartiteDims dims, Rng& rng);
/// Hilbert-Schmidt random mixed state G G^dagger / Tr(G G^dagger), G square Ginibre.
DensityMatrix random_density_hs(BipartiteDims dims, Rng& rng);
/// Random separable state: convex mixture of `terms` random product pure states.
DensityMatrix random_separable(BipartiteDims dims, int terms, Rng& rng);

enum class Ensemble { Pure, HilbertSchmidt };

const char* to_string(Ensemble e);
Ensemble parse_ensemble(const std::string& name);

enum class MeasureId {
  Concurrence,
  Negativity,
  LogNegativity,
  ReshufflingNegativity,
  EntanglementEntropy,
  Tangle,
  EntanglementOfFormation,
  MaxFidelity,
  Purity,
  VonNeumannEntropy,
  ParticipationRatio,
};

const char* to_string(MeasureId m);
/// Throws UnknownMeasure.
MeasureId parse_measure(const std::string& name);

/// Evaluates a measure on a sampled state; pure-only measures throw
/// NotApplicable for mixed input, two-qubit-only measures throw
/// DimensionMismatch elsewhere.
double evaluate_measure(MeasureId m, const DensityMatrix& rho, const PureState* pure);

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t n = 0;
};

McEstimate summarize(const std::vector<double>& values);

struct SamplingSpec {
  BipartiteDims dims{2, 2};
  Ensemble ensemble = Ensemble::Pure;
  std::int64_t n = 1000;
  std::uint64_t seed = 1;
  int workers = 1;  // worker w draws from seed ^ w; results merged in worker order
};

/// One value per sample, in deterministic merge order.
std::vector<double> mc_values(MeasureId m, const SamplingSpec& spec);
McEstimate mc_average(MeasureId m, const SamplingSpec& spec);

struct ScatterRow {
  double x = 0.0;
  double y = 0.0;
};

std::vector<ScatterRow> mc_scatter(MeasureId x, MeasureId y, const SamplingSpec& spec);

/// CSV with a header row naming the columns, then one row per record.
std::string values_csv(MeasureId m, const std::vector<double>& values);
std::string scatter_csv(MeasureId x, MeasureId y, const std::vector<ScatterRow>& rows);
/// Sidecar metadata: seed, n, generator id, dims, ensemble, workers.
std::string sampling_metadata_json(const SamplingSpec& spec, const std::vector<std::string>& measures);

}  // namespace entanglekit
