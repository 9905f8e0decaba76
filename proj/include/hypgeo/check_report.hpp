#pragma once

#include <string>

namespace hypgeo {

/// Verdict of one checker. `passed` is exactly `worst_violation <= tolerance`;
/// compound checks fold each part's own tolerance into the violation and use
/// a tolerance of zero.
struct CheckReport {
  std::string name;
  bool passed = false;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::string location;
  std::string details;
};

inline CheckReport make_report(std::string name, double worst, double tolerance,
                               std::string location, std::string details) {
  CheckReport r;
  r.name = std::move(name);
  r.worst_violation = worst;
  r.tolerance = tolerance;
  r.passed = worst <= tolerance;
  r.location = std::move(location);
  r.details = std::move(details);
  return r;
}

}  // namespace hypgeo
