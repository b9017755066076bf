#pragma once

// Named checks with residuals and tolerances, serialized to a versioned
// JSON document.

#include <string>
#include <vector>

#include "json.hpp"

namespace exotori {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kHamiltonianSign = "iota_X omega = -dH";

struct Check {
  std::string name;
  double value = 0.0;     // measured quantity
  double residual = 0.0;  // quantity compared against tol
  double tol = 0.0;
  std::string comparison;  // "<": residual < tol; ">": residual > tol (negative controls)
  bool pass = false;
  std::string grid;
  std::string provenance;
};

class VerificationReport {
 public:
  explicit VerificationReport(std::string scenario = {}) : scenario_(std::move(scenario)) {}

  /// Passes when residual < tol.
  void less(const std::string& name, double residual, double tol, const std::string& grid,
            const std::string& provenance);
  /// Passes when residual > tol; used by negative controls.
  void greater(const std::string& name, double residual, double tol, const std::string& grid,
               const std::string& provenance);
  /// Passes when |value - target| < tol.
  void near(const std::string& name, double value, double target, double tol, const std::string& grid,
            const std::string& provenance);

  void abort(const std::string& message) { aborted_ = message; }
  bool aborted() const { return !aborted_.empty(); }
  const std::string& abort_message() const { return aborted_; }

  const std::string& scenario() const { return scenario_; }
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;
  /// Pass iff every check passes and the run was not aborted.
  bool verdict() const;

  nlohmann::json to_json() const;
  /// One line per check.
  std::string summary() const;

 private:
  std::string scenario_;
  std::vector<Check> checks_;
  std::string aborted_;
};

}  // namespace exotori
