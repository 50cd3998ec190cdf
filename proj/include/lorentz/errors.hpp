#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lorentz {

enum class ErrorKind {
  domain,
  range,
  convergence,
  domain_mismatch,
  not_fixing_endpoints,
  not_fixing_origin,
  not_monotone,
  not_invertible,
  cyclic_violation,
  not_odd,
  not_even,
  inconsistent_gauge,
  vertices_not_on_axes,
  not_bijective_on_half_line,
  non_positive_derivative,
  non_positive_density,
  degenerate_point,
  nondifferentiable_crossing,
  degenerate_rectangle,
  ray_escapes,
  constant_function,
  non_unique_image,
  empty_window,
  parse,
};

inline constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::range: return "RangeError";
    case ErrorKind::convergence: return "ConvergenceError";
    case ErrorKind::domain_mismatch: return "DomainMismatch";
    case ErrorKind::not_fixing_endpoints: return "NotFixingEndpoints";
    case ErrorKind::not_fixing_origin: return "NotFixingOrigin";
    case ErrorKind::not_monotone: return "NotMonotone";
    case ErrorKind::not_invertible: return "NotInvertible";
    case ErrorKind::cyclic_violation: return "CyclicViolation";
    case ErrorKind::not_odd: return "NotOdd";
    case ErrorKind::not_even: return "NotEven";
    case ErrorKind::inconsistent_gauge: return "InconsistentGauge";
    case ErrorKind::vertices_not_on_axes: return "VerticesNotOnAxes";
    case ErrorKind::not_bijective_on_half_line: return "NotBijectiveOnHalfLine";
    case ErrorKind::non_positive_derivative: return "NonPositiveDerivative";
    case ErrorKind::non_positive_density: return "NonPositiveDensity";
    case ErrorKind::degenerate_point: return "DegeneratePoint";
    case ErrorKind::nondifferentiable_crossing: return "NondifferentiableCrossing";
    case ErrorKind::degenerate_rectangle: return "DegenerateRectangle";
    case ErrorKind::ray_escapes: return "RayEscapes";
    case ErrorKind::constant_function: return "ConstantFunction";
    case ErrorKind::non_unique_image: return "NonUniqueImage";
    case ErrorKind::empty_window: return "EmptyWindow";
    case ErrorKind::parse: return "ParseError";
  }
  return "Error";
}

/// Numeric failures map to exit code 3, everything else is a validation failure.
inline constexpr bool is_numeric_failure(ErrorKind kind) {
  return kind == ErrorKind::convergence || kind == ErrorKind::nondifferentiable_crossing;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lorentz
