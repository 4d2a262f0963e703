#pragma once

#include <stdexcept>
#include <string>

namespace torusct {

// A direction required by the requested coefficient is absent from the data.
struct MissingDirectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested DFT bin falls outside the alias-free band of the sampled profile.
struct AliasingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The sinogram carries no projection at the angle a geodesic needs.
struct MissingAngleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of panels; carries the achieved error estimate.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error(achieved) {}
  double achieved_error = 0.0;
};

// Relative-error denominator vanishes.
struct DegenerateReferenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or parsed.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace torusct
