#pragma once

#include <stdexcept>

namespace awmm {

// Invalid scenario, flag, or problem setup; the CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lens construction over a circle pair that does not properly intersect, or a
// density with no mass. Range estimation falls back to hop-scaled ranging.
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rank-deficient multilateration geometry (e.g. collinear anchors).
struct DegenerateGeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem failures while writing outputs; the CLI maps this to exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace awmm
