/// @file errors.hpp
/// @brief Error taxonomy shared by every module.
///
/// All failure paths throw LabError carrying a machine-readable kind plus a
/// human-readable message.  The CLI maps kinds to process exit codes
/// (config problems -> 2, numerical failures -> 3); library code and tests
/// match on the kind, never on message text.

#pragma once

#include <stdexcept>
#include <string>

namespace ovallab {

enum class ErrorKind {
  invalid_argument,    // precondition violated by the caller
  out_of_domain,       // evaluation requested outside tabulated range
  degenerate_ratio,    // denominator below the documented floor
  integration_failure, // ODE step collapse / no convergence
  chart_breakdown,     // radial flow chart invariant violated
  domain_collapse,     // grid flow mask shrank past the minimum radius
  blow_up,             // ODE trajectory exceeded its norm cap
  gauge_failure,       // gauge solve did not reach tolerance
  precondition,        // diagnostic input fails a stated requirement
  parse_error,         // config / CLI input malformed
  io_error,            // file system problem
};

/// Stable identifier used in CLI output and tests.
const char* error_kind_name(ErrorKind kind);

class LabError : public std::runtime_error {
 public:
  LabError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Throws LabError(kind, message) when `condition` is false.
inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw LabError(kind, message);
}

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:    return "invalid-argument";
    case ErrorKind::out_of_domain:       return "out-of-domain";
    case ErrorKind::degenerate_ratio:    return "degenerate-ratio";
    case ErrorKind::integration_failure: return "integration-failure";
    case ErrorKind::chart_breakdown:     return "chart-breakdown";
    case ErrorKind::domain_collapse:     return "domain-collapse";
    case ErrorKind::blow_up:             return "blow-up";
    case ErrorKind::gauge_failure:       return "gauge-failure";
    case ErrorKind::precondition:        return "precondition";
    case ErrorKind::parse_error:         return "parse-error";
    case ErrorKind::io_error:            return "io-error";
  }
  return "unknown";
}

}  // namespace ovallab
