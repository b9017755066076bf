#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exotori {

// Error taxonomy shared by every module.
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// n equispaced parameters 2*pi*k/n on [0, 2*pi).
class PeriodicGrid {
 public:
  explicit PeriodicGrid(int n);

  int size() const { return n_; }
  double node(int k) const { return kTwoPi * k / n_; }
  double spacing() const { return kTwoPi / n_; }
  std::vector<double> nodes() const;

 private:
  int n_;
};

/// Trapezoid rule (2*pi/n) * sum f(node_k). Spectrally accurate for smooth
/// periodic integrands; exact for trigonometric polynomials of degree < n.
double integrate_periodic(const std::function<double(double)>& f, const PeriodicGrid& grid);

struct WindingResult {
  int winding = 0;
  double residual = 0.0;  // |accumulated/(2 pi) - winding|
  double max_jump = 0.0;  // largest adjacent-node phase increment
};

/// Winding number of a closed curve about the origin by phase accumulation.
/// Throws EvaluationError("grid too coarse") if adjacent phases jump by >= pi
/// and EvaluationError("winding undefined") if |z| drops below min_modulus.
WindingResult winding_number(const std::function<std::complex<double>(double)>& z,
                             const PeriodicGrid& grid, double min_modulus = 1e-12);

/// Root of f in [lo, hi] by bisection. Requires f(lo) * f(hi) <= 0.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Gauss-Legendre nodes and weights on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace exotori
