#include "fgk/green.hpp"

#include <algorithm>
#include <cmath>

namespace fgk {

double riesz_constant(double n, double alpha) {
  if (!(n > 2.0 * alpha))
    throw RecurrenceError("riesz_constant: n > 2*alpha required (not transient)");
  return std::tgamma(0.5 * n - alpha) /
         (std::tgamma(alpha) * std::pow(4.0, alpha) * std::pow(M_PI, 0.5 * n));
}

GreenValue green_riesz(double n, double alpha, double r) {
  if (!(n > 2.0 * alpha))
    throw RecurrenceError("green_riesz: n > 2*alpha required (not transient)");
  if (r < 0.0) throw DomainError("green_riesz: negative distance");
  GreenValue g;
  g.route = GreenRoute::RieszExact;
  g.distance = r;
  g.value = (r == 0.0) ? kInf
                       : riesz_constant(n, alpha) * std::pow(r, 2.0 * alpha - n);
  return g;
}

HeatKernel euclidean_heat_kernel(double n) {
  return [n](double s, double r) {
    return std::pow(4.0 * M_PI * s, -0.5 * n) * std::exp(-r * r / (4.0 * s));
  };
}

GreenValue green_subordinated(const HeatKernel& p, double alpha, double r,
                              double tol,
                              std::optional<double> integrand_tail_exponent) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("green_subordinated: alpha must lie in (0,1)");
  if (!(r > 0.0)) throw DomainError("green_subordinated: r must be positive");
  if (integrand_tail_exponent && *integrand_tail_exponent >= -1.0)
    throw RecurrenceError("green_subordinated: non-integrable tail (recurrent)");

  // Substitute s = r^2 u so the integrand peaks at u = O(1) for every
  // distance; otherwise the quadrature windows never reach the mass when r
  // is large.
  const double r2 = r * r;
  const Integrand f = [&p, alpha, r, r2](double u) {
    return std::pow(u, alpha - 1.0) * p(r2 * u, r);
  };
  const IntegralResult res =
      integrate_singular(f, alpha - 1.0, kInf, tol, integrand_tail_exponent);
  if (!res.finite())
    throw RecurrenceError("green_subordinated: subordination integral diverges");

  GreenValue g;
  g.route = GreenRoute::Subordination;
  g.distance = r;
  g.value = std::pow(r2, alpha) * res.value / std::tgamma(alpha);
  return g;
}

GreenValue green_subordinated_euclidean(double n, double alpha, double r,
                                        double tol) {
  return green_subordinated(euclidean_heat_kernel(n), alpha, r, tol,
                            alpha - 1.0 - 0.5 * n);
}

namespace {

// int_lo^hi t^p dt, with the log case p = -1
double power_piece(double lo, double hi, double p) {
  if (std::fabs(p + 1.0) < 1e-14) return std::log(hi / lo);
  return (std::pow(hi, p + 1.0) - std::pow(lo, p + 1.0)) / (p + 1.0);
}

}  // namespace

GreenValue green_volume_estimate(const VolumeProfile& profile, double alpha,
                                 double d) {
  if (!(d > 0.0)) throw DomainError("green_volume_estimate: d must be positive");
  GreenValue g;
  g.route = GreenRoute::VolumeEstimate;
  g.distance = d;

  if (profile.kind() != VolumeProfile::Kind::Table) {
    // closed-form sum over the power pieces of V
    const auto& breaks = profile.breakpoints();
    const auto& exps = profile.exponents();
    const auto& coeffs = profile.coefficients();
    const double p_last = 2.0 * alpha - 1.0 - exps.back();
    if (p_last >= -1.0)
      throw RecurrenceError("green_volume_estimate: tail integral diverges (recurrent)");
    double sum = 0.0;
    double lo = d;
    for (size_t i = 0; i < exps.size(); ++i) {
      const double hi = i < breaks.size() ? breaks[i] : kInf;
      if (hi <= lo && i < breaks.size()) continue;
      const double p = 2.0 * alpha - 1.0 - exps[i];
      if (i < breaks.size()) {
        sum += power_piece(lo, hi, p) / coeffs[i];
        lo = hi;
      } else {
        sum += -std::pow(lo, p + 1.0) / ((p + 1.0) * coeffs[i]);
      }
    }
    g.value = sum;
    return g;
  }

  const std::optional<double> nv = profile.tail_exponent();
  if (nv && 2.0 * alpha - 1.0 - *nv >= -1.0)
    throw RecurrenceError("green_volume_estimate: tail integral diverges (recurrent)");
  const Integrand f = [&profile, alpha](double t) {
    return std::pow(t, 2.0 * alpha - 1.0) / profile(t);
  };
  std::optional<double> decl;
  if (nv) decl = 2.0 * alpha - 1.0 - *nv;
  const IntegralResult res = integrate_tail(f, d, kDefaultTol, decl);
  if (!res.finite())
    throw RecurrenceError("green_volume_estimate: tail integral diverges (recurrent)");
  g.value = res.value;
  return g;
}

std::pair<double, double> comparison_ratio(const VolumeProfile& profile,
                                           double n, double alpha,
                                           std::span<const double> d_grid) {
  if (d_grid.empty()) throw DomainError("comparison_ratio: empty grid");
  double lo = kInf, hi = 0.0;
  for (double d : d_grid) {
    const double est = green_volume_estimate(profile, alpha, d).value;
    const double exact = green_riesz(n, alpha, d).value;
    const double ratio = est / exact;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo, hi};
}

double truncated_m(const GreenContext& ctx, double a, double x_distance) {
  if (!(a > 0.0)) throw DomainError("truncated_m: a must be positive");
  if (x_distance == 0.0) return 1.0 / a;
  return std::min(ctx.green(x_distance), 1.0 / a);
}

}  // namespace fgk
