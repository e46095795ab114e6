#pragma once

#include <stdexcept>
#include <string>

namespace sonic {

/// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  kSuccess = 0,
  kConfig = 2,
  kTolerance = 3,
  kResolution = 4,
};

/// Base class of all library errors. Each error carries the exit code the CLI
/// reports when it escapes a subcommand.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, ExitCode code)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Parameter outside the domain of an operation (rho <= 0, eps <= 0, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what, ExitCode::kConfig) {}
};

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what, ExitCode::kConfig) {}
};

/// A numerical procedure could not reach its requested tolerance.
class ToleranceError : public Error {
 public:
  explicit ToleranceError(const std::string& what)
      : Error(what, ExitCode::kTolerance) {}
};

/// The adaptive ODE integrator could not take a step meeting its tolerance.
class StepFailure : public ToleranceError {
 public:
  using ToleranceError::ToleranceError;
};

/// Both ends of a separatrix bracket classify the same way.
class BracketError : public ToleranceError {
 public:
  using ToleranceError::ToleranceError;
};

/// A backward characteristic left the domain [rho_min, inf).
class CaptureError : public ToleranceError {
 public:
  using ToleranceError::ToleranceError;
};

/// Norm growth of the wave solver exceeded the per-step bound.
class InstabilityError : public ToleranceError {
 public:
  using ToleranceError::ToleranceError;
};

/// Grid too coarse for the requested wavenumber, or grids do not match.
class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& what)
      : Error(what, ExitCode::kResolution) {}
};

/// Throws DomainError with `what` unless `ok`.
void require(bool ok, const std::string& what);

}  // namespace sonic
