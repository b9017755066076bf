#include "exotori/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace exotori {

void VerificationReport::less(const std::string& name, double residual, double tol, const std::string& grid,
                              const std::string& provenance) {
  checks_.push_back({name, residual, residual, tol, "<", residual < tol, grid, provenance});
}

void VerificationReport::greater(const std::string& name, double residual, double tol, const std::string& grid,
                                 const std::string& provenance) {
  checks_.push_back({name, residual, residual, tol, ">", residual > tol, grid, provenance});
}

void VerificationReport::near(const std::string& name, double value, double target, double tol,
                              const std::string& grid, const std::string& provenance) {
  const double r = std::abs(value - target);
  checks_.push_back({name, value, r, tol, "<", r < tol, grid, provenance});
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool VerificationReport::verdict() const {
  if (aborted()) return false;
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"residual", c.residual},
                      {"tol", c.tol},
                      {"comparison", c.comparison},
                      {"pass", c.pass},
                      {"grid", c.grid},
                      {"provenance", c.provenance}});
  }
  nlohmann::json j = {{"schema_version", kReportSchemaVersion},
                      {"scenario", scenario_},
                      {"convention", {{"hamiltonian_sign", kHamiltonianSign}}},
                      {"checks", checks},
                      {"verdict", verdict() ? "pass" : "fail"}};
  if (aborted()) j["aborted"] = aborted_;
  return j;
}

std::string VerificationReport::summary() const {
  std::ostringstream out;
  char line[512];
  for (const auto& c : checks_) {
    std::snprintf(line, sizeof line, "%-4s %-58s %12.3e %s %.1e\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                  c.residual, c.comparison.c_str(), c.tol);
    out << line;
  }
  if (aborted()) out << "ABORTED: " << aborted_ << "\n";
  out << scenario_ << ": " << (verdict() ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace exotori
