#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace polygeo {

// Base class for all library errors. name() is the stable identifier the CLI
// prints to stderr; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define POLYGEO_ERROR_TYPE(NAME)                                    \
  class NAME : public Error {                                       \
   public:                                                          \
    explicit NAME(const std::string& what) : Error(#NAME, what) {}  \
  };

// Geometry / metric errors.
POLYGEO_ERROR_TYPE(DegenerateCurve)
POLYGEO_ERROR_TYPE(InvalidRotation)
POLYGEO_ERROR_TYPE(NotPositiveDefinite)

// Geodesic solver errors.
POLYGEO_ERROR_TYPE(TooLarge)
POLYGEO_ERROR_TYPE(LeftTheSpace)
POLYGEO_ERROR_TYPE(MaxIterations)
POLYGEO_ERROR_TYPE(InitializationFailed)

// Shape-space errors.
POLYGEO_ERROR_TYPE(NearPuncture)
POLYGEO_ERROR_TYPE(NumericallyUnstable)
POLYGEO_ERROR_TYPE(DegenerateConfiguration)

// Quadrature / IO errors.
POLYGEO_ERROR_TYPE(QuadratureNotConverged)
POLYGEO_ERROR_TYPE(ParseError)
POLYGEO_ERROR_TYPE(ValidationError)

#undef POLYGEO_ERROR_TYPE

}  // namespace polygeo
