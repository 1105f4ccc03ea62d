#pragma once

// State files: {"kind": "pure"|"density", "dims": [n_a, n_b], "re": [...], "im": [...]}
// Density matrices are stored row-major; pure states as the flat amplitude
// vector. Numbers are written with 17 significant digits.

#include <iosfwd>
#include <string>
#include <variant>

#include "entanglekit/states.hpp"

namespace entanglekit {

using AnyState = std::variant<PureState, DensityMatrix>;

std::string state_to_json(const PureState& psi);
std::string state_to_json(const DensityMatrix& rho);
std::string state_to_json(const AnyState& state);

/// Parses and validates a state document. Throws MalformedInput for schema
/// problems and InvalidState (naming the violated invariant) for bad physics.
AnyState state_from_json(const std::string& text);

AnyState read_state_file(const std::string& path);
void write_state_file(const std::string& path, const AnyState& state);

DensityMatrix as_density(const AnyState& state);

/// "%.17g" formatting used by every writer in the library.
std::string format_real(double v);

}  // namespace entanglekit
