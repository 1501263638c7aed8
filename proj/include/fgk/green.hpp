#ifndef FGK_GREEN_HPP
#define FGK_GREEN_HPP

#include <functional>
#include <span>
#include <utility>

#include "fgk/profiles.hpp"
#include "fgk/quadrature.hpp"

namespace fgk {

enum class GreenRoute { RieszExact, Subordination, VolumeEstimate };

struct GreenValue {
  double value = 0.0;  // +inf marker at distance 0 (transient case)
  GreenRoute route = GreenRoute::RieszExact;
  double distance = 0.0;

  bool is_infinite() const { return std::isinf(value); }
};

/// C(n, alpha) in G(x,y) = C(n,alpha) |x-y|^{2a-n}.
double riesz_constant(double n, double alpha);

/// Closed-form Riesz kernel; requires n > 2*alpha (transience).
GreenValue green_riesz(double n, double alpha, double r);

/// Heat kernel p_s at distance r: callable (s, r) -> density value.
using HeatKernel = std::function<double(double s, double r)>;

/// Gaussian heat kernel on R^n at distance r.
HeatKernel euclidean_heat_kernel(double n);

/// Subordination quadrature (1/Gamma(a)) * int s^{a-1} p_s(r) ds.
/// `integrand_tail_exponent`, when known, classifies the behaviour of
/// s^{a-1} p_s(r) at s -> inf; a non-integrable tail raises RecurrenceError.
GreenValue green_subordinated(const HeatKernel& p, double alpha, double r,
                              double tol,
                              std::optional<double> integrand_tail_exponent = {});

/// Euclidean convenience wrapper (tail exponent alpha - 1 - n/2).
GreenValue green_subordinated_euclidean(double n, double alpha, double r,
                                        double tol = 1e-9);

/// R(d) = int_d^inf t^{2a-1} / V(t) dt; closed form for (piecewise) power
/// profiles, tail quadrature for tables. Divergent tail raises
/// RecurrenceError.
GreenValue green_volume_estimate(const VolumeProfile& profile, double alpha,
                                 double d);

/// Two-sided ratio bounds of the volume estimate against the exact Riesz
/// kernel over a distance grid.
std::pair<double, double> comparison_ratio(const VolumeProfile& profile,
                                           double n, double alpha,
                                           std::span<const double> d_grid);

/// Radial Euclidean Green evaluation context for m = G(.,o) ^ a^{-1}.
struct GreenContext {
  double n;
  double alpha;

  double green(double d) const { return green_riesz(n, alpha, d).value; }
};

/// min(G(x,o), 1/a) at distance x_distance from o.
double truncated_m(const GreenContext& ctx, double a, double x_distance);

}  // namespace fgk

#endif  // FGK_GREEN_HPP
