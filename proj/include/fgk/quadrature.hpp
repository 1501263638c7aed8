#ifndef FGK_QUADRATURE_HPP
#define FGK_QUADRATURE_HPP

#include <functional>
#include <optional>

#include "fgk/common.hpp"

namespace fgk {

enum class IntegralStatus {
  Finite,              // declared-exponent path, value within tolerance
  DivergentByExponent, // non-integrable tail detected from the declared exponent
  NumericDivergent,    // partial sums exceeded the divergence threshold
  FiniteNumeric,       // window-doubling converged without a declared exponent
};

struct IntegralResult {
  IntegralStatus status = IntegralStatus::Finite;
  double value = 0.0;
  double rel_error_estimate = 0.0;
  std::optional<double> tail_exponent;

  bool finite() const {
    return status == IntegralStatus::Finite ||
           status == IntegralStatus::FiniteNumeric;
  }
};

using Integrand = std::function<double(double)>;

/// Default relative tolerance; criterion decisions need margins well above
/// quadrature noise.
inline constexpr double kDefaultTol = 1e-10;

/// Partial sums beyond this are classified numeric-divergent.
inline constexpr double kDivergenceThreshold = 1e12;

/// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.
double integrate_adaptive(const Integrand& f, double a, double b,
                          double abs_tol, double* err_out = nullptr);

/// Improper integral of a positive, eventually monotone integrand over
/// (rho, inf). If `declared_exponent` p is given and p >= -1 the integral is
/// classified divergent without numeric work; if p < -1 it is integrated on
/// doubling windows with a geometric tail. Without a declared exponent the
/// window ratio is tracked to decide finite-numeric vs numeric-divergent.
IntegralResult integrate_tail(const Integrand& f, double rho, double tol,
                              std::optional<double> declared_exponent = {});

/// Integral over (0, T) of f(s) = s^beta g(s) with beta > -1 and g bounded
/// near zero. T may be +inf, in which case `tail_exponent` (when given)
/// classifies the behaviour at infinity as in integrate_tail. Uses the log
/// substitution s = e^u on dyadic windows toward zero.
IntegralResult integrate_singular(const Integrand& f, double beta, double T,
                                  double tol,
                                  std::optional<double> tail_exponent = {});

}  // namespace fgk

#endif  // FGK_QUADRATURE_HPP
