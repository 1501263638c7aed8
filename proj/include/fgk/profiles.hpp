#ifndef FGK_PROFILES_HPP
#define FGK_PROFILES_HPP

#include <optional>
#include <span>
#include <vector>

#include "fgk/common.hpp"

namespace fgk {

/// Radial volume growth r -> V(r) modeling mu(B(o,r)). Immutable after
/// construction; all evaluations are pure.
class VolumeProfile {
 public:
  enum class Kind { PowerLaw, PiecewisePower, Table };

  static VolumeProfile power_law(double c, double n);

  /// Pieces (0,b_1], (b_1,b_2], ..., (b_k, inf) with exponents e_0..e_k.
  /// Coefficients after the first are derived from continuity at the
  /// breakpoints, so a single normalization c0 fixes the profile.
  static VolumeProfile piecewise_power(double c0,
                                       std::vector<double> breakpoints,
                                       std::vector<double> exponents);

  /// Sampled (r, V(r)) pairs, strictly increasing in r, V monotone.
  /// Interpolation is log-log linear so power-law pieces are preserved
  /// exactly. Extrapolation above the sample range requires a declared
  /// asymptotic exponent.
  static VolumeProfile table(std::vector<double> r, std::vector<double> v,
                             std::optional<double> tail_exponent = {});

  double operator()(double r) const;  // eval_volume

  Kind kind() const { return kind_; }
  double doubling_constant() const { return doubling_; }

  /// Exact asymptotic exponent at infinity when the kind provides one.
  std::optional<double> tail_exponent() const;

  /// Coefficient of the asymptotic power piece: V(r) ~ coeff * r^exp.
  std::optional<double> tail_coefficient() const;

  /// max over the grid of V(2r)/V(r).
  double check_doubling(std::span<const double> r_grid) const;

  // piecewise internals, exposed for the closed-form tail integrals in green
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& exponents() const { return exps_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  VolumeProfile() = default;

  Kind kind_ = Kind::PowerLaw;
  // piecewise representation (power law is the 1-piece case)
  std::vector<double> breaks_;
  std::vector<double> exps_;
  std::vector<double> coeffs_;
  // table representation (log-log)
  std::vector<double> log_r_;
  std::vector<double> log_v_;
  std::optional<double> declared_tail_;
  double doubling_ = 1.0;
};

/// Radial growth of the measure sigma plus, where meaningful, a pointwise
/// density theta.
class MeasureProfile {
 public:
  enum class Kind { PowerDensity, DiracAtOrigin, SameAsVolume, Table };

  /// Euclidean model in dimension n with density |x|^gamma; gamma > -2a is
  /// enforced where alpha enters.
  static MeasureProfile power_density(double n, double gamma);
  static MeasureProfile dirac_at_origin();
  static MeasureProfile same_as_volume(VolumeProfile vol);
  static MeasureProfile table(std::vector<double> r, std::vector<double> s,
                              std::optional<double> tail_exponent = {});

  Kind kind() const { return kind_; }

  /// sigma(B(o,r)).
  double sigma_ball(double r) const;

  /// sigma(B(x,s)) for a point at distance d from the origin; exact for
  /// dirac and same-as-volume, two-scale comparable value for power density.
  double sigma_ball_at(double d, double s) const;

  /// theta(x) as a function of |x|, when the measure has a density.
  std::optional<double> density(double r) const;

  std::optional<double> tail_exponent() const;
  double gamma() const { return gamma_; }

 private:
  MeasureProfile() = default;

  Kind kind_ = Kind::PowerDensity;
  double n_ = 0.0;
  double gamma_ = 0.0;
  double coeff_ = 1.0;  // sigma(B(o,r)) = coeff * r^{n+gamma} for power density
  std::optional<VolumeProfile> vol_;
  std::vector<double> log_r_;
  std::vector<double> log_s_;
  std::optional<double> declared_tail_;
};

/// Scenario parameters shared across the criteria and solver modules.
struct ModelParams {
  double alpha = 0.5;  // in (0,1)
  double q = 2.0;      // > 1 for the iteration/solver modules; criteria only
                       // need q > 0 (threshold grids may dip below 1)
  double n = 3.0;      // volume growth exponent / dimension
  double gamma = 0.0;  // measure density exponent, > -2*alpha
  double r0 = 1.0;     // lower cutoff of the tail criteria
  double a = 1.0;      // truncation level in m = G(.,o) ^ a^{-1}

  void validate(bool require_q_gt_1 = true, bool require_transient_dim = true) const;
};

double eval_volume(const VolumeProfile& p, double r);
double check_doubling(const VolumeProfile& p, std::span<const double> r_grid);

}  // namespace fgk

#endif  // FGK_PROFILES_HPP
