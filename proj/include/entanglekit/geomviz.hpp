#pragma once

// Geometric diagnostics: the octant picture of two-qubit pure states, Segre
// and maximal-entanglement tests, local orbit dimensions, the separable ball
// around the maximally mixed state, and CSV emitters for figure data.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entanglekit/states.hpp"

namespace entanglekit {

struct OctantCoords {
  std::array<double, 4> moduli{};   // n_0..n_3, sum of squares 1
  std::array<double, 3> phases{};   // nu_1..nu_3 in [0, 2 pi)
  std::array<double, 3> gnomonic{}; // tangent-plane coordinates at (1,1,1,1)/2
};

/// Z = (A_00, A_01, A_10, A_11) with the global phase fixed so Z^0 is real
/// and nonnegative; when n_0 vanishes the first nonzero component is used.
OctantCoords octant_coords(const PureState& psi);
/// Inverse chart: (n_0, n_1 e^{i nu_1}, n_2 e^{i nu_2}, n_3 e^{i nu_3}).
PureState from_octant(const OctantCoords& c);
/// Gnomonic projection of a point of the positive hyperoctant.
std::array<double, 3> gnomonic_projection(const std::array<double, 4>& moduli);

struct SegreResiduals {
  double quadric = 0.0;     // |Z0 Z3 - Z1 Z2|
  double modulus_eq = 0.0;  // |n0 n3 - n1 n2|
  double phase_eq = 0.0;    // |nu1 + nu2 - nu3| wrapped to [0, pi]
};

inline constexpr double kSegreTol = 1e-9;

SegreResiduals segre_residuals(const PureState& psi);

/// ||N A A^dagger - 1||_F; zero exactly for maximally entangled states.
double max_entangled_residual(const PureState& psi);

/// Real dimension of the local-unitary orbit of a pure N x N state with
/// Schmidt degeneracy profile (m_0, m_1, ..., m_J).
int orbit_dimension(int n, const std::vector<int>& multiplicities);

/// Radius of the largest ball around 1/d inside the state space, in the
/// distance d2(rho, sigma) = sqrt(Tr (rho - sigma)^2 / 2).
double insphere_radius(int d);
double d2_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
bool in_separable_ball(const DensityMatrix& rho);

struct VolumeRatio {
  double log_value = 0.0;
  std::optional<double> value;  // absent when exp(log_value) underflows
};

/// Volume of the separable ball over the volume of the N^2-dimensional state
/// space, evaluated with log-gamma.
VolumeRatio volume_ratio(int n);

/// Largest epsilon for which every pseudo-pure N x N state is separable.
double pseudo_pure_threshold(int n);

// --- figure data -----------------------------------------------------------

struct CrossSectionRow {
  std::array<double, 3> gnomonic{};
  double entanglement_entropy = 0.0;
};

/// Lattice over the hyperoctant: moduli proportional to (i, j, k, l) with
/// i + j + k + l = resolution, phases held fixed.
std::vector<CrossSectionRow> tetrahedron_cross_section(int resolution, const std::array<double, 3>& phases);
std::string cross_section_csv(const std::vector<CrossSectionRow>& rows);

struct RulingPoint {
  int line = 0;
  int index = 0;
  std::array<double, 3> gnomonic{};
  double quadric = 0.0;
};

/// Straight lines ruling the separable surface: for each line the second
/// factor is fixed with modulus ratio k = |b0/b1| while the first sweeps
/// cos t |0> + sin t |1>.
std::vector<RulingPoint> separable_ruling(int lines, int points);
std::string ruling_csv(const std::vector<RulingPoint>& points);

}  // namespace entanglekit
