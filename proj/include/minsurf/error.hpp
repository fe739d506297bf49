#pragma once

#include <stdexcept>
#include <string>

namespace minsurf {

enum class ErrorKind {
  InputDomain = 1,
  DegenerateTriangle,
  NoSolution,
  InconsistentConfiguration,
  SolverFailure,
  GraphViolation,
  MeshQuality,
  NotApplicable,
  ReconstructionInconsistency,
  DegenerateHeight,
  InvalidDomain,
  Embeddedness,
  Indeterminate,
  NoRootCertificate,
  PrecisionLimit,
  Sewing,
  Assembly,
  AssemblyDefect,
  Audit,
  Format,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Solver errors carry the last residual so callers can report it.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double last_residual)
      : Error(ErrorKind::SolverFailure, what), residual_(last_residual) {}
  double last_residual() const { return residual_; }

 private:
  double residual_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace minsurf
