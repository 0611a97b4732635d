#pragma once

#include <stdexcept>
#include <string>

namespace magelast {

// Vacuum permeability in N/A^2. All quantities are SI: Pa, T, A/m, rad.
inline constexpr double mu0 = 4.0e-7 * 3.14159265358979323846;
inline constexpr double pi = 3.14159265358979323846;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A tensor that must be invertible is numerically singular.
struct singular_tensor_error : error {
  using error::error;
};

// A deformation gradient with det(F) <= 0 or otherwise unusable kinematics.
struct invalid_deformation_error : error {
  using error::error;
};

// A documented precondition was violated by the caller.
struct contract_violation : error {
  using error::error;
};

// Bad or missing run configuration.
struct config_error : error {
  using error::error;
};

}  // namespace magelast
