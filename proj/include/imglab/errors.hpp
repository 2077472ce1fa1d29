#pragma once

#include <stdexcept>
#include <string>

namespace imglab {

// Bad user-supplied data: malformed words, out-of-range levels, oversized input.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A rational-map denominator vanished; carries which one.
struct PoleError : std::runtime_error {
  std::string denominator;
  PoleError(std::string den, double value)
      : std::runtime_error("pole: denominator '" + den + "' vanishes (value " +
                           std::to_string(value) + ")"),
        denominator(std::move(den)) {}
};

// Point lies on a non-invertibility variety (Z1: the D-block of the pencil is singular).
struct VarietyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Group-algebra inversion breaks down (D = z^2 - 2z + 1 - y^2 near zero, degenerate measure).
struct SingularAlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Random-walk increment classified outside the closed-form support {e, a, b, c}.
struct SupportViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidAutomatonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace imglab
