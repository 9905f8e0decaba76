#pragma once

#include <stdexcept>
#include <string>

namespace hypgeo {

enum class ErrorKind {
  domain,
  parameter,
  singularity,
  non_convergence,
  division_hazard,
  inconsistency,
  precondition,
  derivative_zero,
};

const char* to_string(ErrorKind kind);

// Base for every failure raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hypgeo
