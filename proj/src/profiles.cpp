#include "fgk/profiles.hpp"

#include <algorithm>
#include <cmath>

namespace fgk {

namespace {

double piecewise_eval(const std::vector<double>& breaks,
                      const std::vector<double>& exps,
                      const std::vector<double>& coeffs, double r) {
  size_t i = 0;
  while (i < breaks.size() && r > breaks[i]) ++i;
  return coeffs[i] * std::pow(r, exps[i]);
}

}  // namespace

VolumeProfile VolumeProfile::power_law(double c, double n) {
  if (!(c > 0.0) || !(n > 0.0))
    throw DomainError("VolumeProfile: power-law needs c > 0 and n > 0");
  VolumeProfile p;
  p.kind_ = Kind::PowerLaw;
  p.exps_ = {n};
  p.coeffs_ = {c};
  p.doubling_ = std::pow(2.0, n);
  return p;
}

VolumeProfile VolumeProfile::piecewise_power(double c0,
                                             std::vector<double> breakpoints,
                                             std::vector<double> exponents) {
  if (!(c0 > 0.0)) throw DomainError("VolumeProfile: c0 must be positive");
  if (exponents.size() != breakpoints.size() + 1)
    throw DomainError("VolumeProfile: need one exponent per piece");
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw DomainError("VolumeProfile: breakpoints must increase");
  for (double b : breakpoints)
    if (!(b > 0.0)) throw DomainError("VolumeProfile: breakpoints must be positive");
  for (double e : exponents)
    if (!(e >= 0.0)) throw DomainError("VolumeProfile: exponents must be non-negative");

  VolumeProfile p;
  p.kind_ = Kind::PiecewisePower;
  p.breaks_ = std::move(breakpoints);
  p.exps_ = std::move(exponents);
  p.coeffs_.resize(p.exps_.size());
  p.coeffs_[0] = c0;
  for (size_t i = 0; i < p.breaks_.size(); ++i)
    p.coeffs_[i + 1] =
        p.coeffs_[i] * std::pow(p.breaks_[i], p.exps_[i] - p.exps_[i + 1]);
  // sup of V(2r)/V(r) is attained within the steepest piece
  p.doubling_ = std::pow(2.0, *std::max_element(p.exps_.begin(), p.exps_.end()));
  return p;
}

VolumeProfile VolumeProfile::table(std::vector<double> r, std::vector<double> v,
                                   std::optional<double> tail_exponent) {
  if (r.size() < 2 || r.size() != v.size())
    throw DomainError("VolumeProfile: table needs >= 2 matched samples");
  for (size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !(v[i] > 0.0))
      throw DomainError("VolumeProfile: table entries must be positive");
    if (i > 0 && (!(r[i] > r[i - 1]) || !(v[i] >= v[i - 1])))
      throw DomainError("VolumeProfile: table must be increasing/monotone");
  }
  VolumeProfile p;
  p.kind_ = Kind::Table;
  p.log_r_.reserve(r.size());
  p.log_v_.reserve(v.size());
  for (size_t i = 0; i < r.size(); ++i) {
    p.log_r_.push_back(std::log(r[i]));
    p.log_v_.push_back(std::log(v[i]));
  }
  p.declared_tail_ = tail_exponent;
  // doubling over the sample grid only
  double dbl = 1.0;
  for (size_t i = 0; i < r.size(); ++i) {
    const double two_r = 2.0 * r[i];
    if (two_r > r.back() && !tail_exponent) continue;
    VolumeProfile probe = p;  // safe: evaluation is const
    dbl = std::max(dbl, probe(two_r) / v[i]);
  }
  p.doubling_ = dbl;
  return p;
}

double VolumeProfile::operator()(double r) const {
  if (!(r > 0.0)) throw DomainError("eval_volume: r must be positive");
  if (kind_ != Kind::Table) return piecewise_eval(breaks_, exps_, coeffs_, r);

  const double lr = std::log(r);
  if (lr > log_r_.back()) {
    if (!declared_tail_)
      throw DomainError(
          "eval_volume: table extrapolation beyond the sampled range needs a "
          "declared asymptotic exponent");
    return std::exp(log_v_.back() + *declared_tail_ * (lr - log_r_.back()));
  }
  if (lr <= log_r_.front()) {
    // extrapolate below with the first segment's slope
    const double slope =
        (log_v_[1] - log_v_[0]) / (log_r_[1] - log_r_[0]);
    return std::exp(log_v_.front() + slope * (lr - log_r_.front()));
  }
  const auto it = std::upper_bound(log_r_.begin(), log_r_.end(), lr);
  const size_t i = static_cast<size_t>(it - log_r_.begin());
  const double t = (lr - log_r_[i - 1]) / (log_r_[i] - log_r_[i - 1]);
  return std::exp(log_v_[i - 1] + t * (log_v_[i] - log_v_[i - 1]));
}

std::optional<double> VolumeProfile::tail_exponent() const {
  switch (kind_) {
    case Kind::PowerLaw:
    case Kind::PiecewisePower:
      return exps_.back();
    case Kind::Table:
      return declared_tail_;
  }
  return {};
}

std::optional<double> VolumeProfile::tail_coefficient() const {
  switch (kind_) {
    case Kind::PowerLaw:
    case Kind::PiecewisePower:
      return coeffs_.back();
    case Kind::Table:
      if (!declared_tail_) return {};
      return std::exp(log_v_.back() - *declared_tail_ * log_r_.back());
  }
  return {};
}

double VolumeProfile::check_doubling(std::span<const double> r_grid) const {
  if (r_grid.empty()) throw DomainError("check_doubling: empty grid");
  double best = 0.0;
  for (double r : r_grid) best = std::max(best, (*this)(2.0 * r) / (*this)(r));
  return best;
}

double eval_volume(const VolumeProfile& p, double r) { return p(r); }

double check_doubling(const VolumeProfile& p, std::span<const double> grid) {
  return p.check_doubling(grid);
}

// ---------------------------------------------------------------------------

MeasureProfile MeasureProfile::power_density(double n, double gamma) {
  if (!(n > 0.0)) throw DomainError("MeasureProfile: n must be positive");
  if (!(n + gamma > 0.0))
    throw DomainError("MeasureProfile: n + gamma must be positive");
  MeasureProfile m;
  m.kind_ = Kind::PowerDensity;
  m.n_ = n;
  m.gamma_ = gamma;
  // sigma(B(o,r)) = omega_{n-1} r^{n+gamma}/(n+gamma), Euclidean model
  const double omega = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
  m.coeff_ = omega / (n + gamma);
  return m;
}

MeasureProfile MeasureProfile::dirac_at_origin() {
  MeasureProfile m;
  m.kind_ = Kind::DiracAtOrigin;
  return m;
}

MeasureProfile MeasureProfile::same_as_volume(VolumeProfile vol) {
  MeasureProfile m;
  m.kind_ = Kind::SameAsVolume;
  m.vol_ = std::move(vol);
  return m;
}

MeasureProfile MeasureProfile::table(std::vector<double> r,
                                     std::vector<double> s,
                                     std::optional<double> tail_exponent) {
  if (r.size() < 2 || r.size() != s.size())
    throw DomainError("MeasureProfile: table needs >= 2 matched samples");
  MeasureProfile m;
  m.kind_ = Kind::Table;
  for (size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !(s[i] > 0.0))
      throw DomainError("MeasureProfile: table entries must be positive");
    if (i > 0 && (!(r[i] > r[i - 1]) || !(s[i] >= s[i - 1])))
      throw DomainError("MeasureProfile: table must be increasing/monotone");
    m.log_r_.push_back(std::log(r[i]));
    m.log_s_.push_back(std::log(s[i]));
  }
  m.declared_tail_ = tail_exponent;
  return m;
}

double MeasureProfile::sigma_ball(double r) const {
  if (!(r > 0.0)) throw DomainError("sigma_ball: r must be positive");
  switch (kind_) {
    case Kind::PowerDensity:
      return coeff_ * std::pow(r, n_ + gamma_);
    case Kind::DiracAtOrigin:
      return 1.0;
    case Kind::SameAsVolume:
      return (*vol_)(r);
    case Kind::Table: {
      const double lr = std::log(r);
      if (lr > log_r_.back()) {
        if (!declared_tail_)
          throw DomainError("sigma_ball: table extrapolation needs a declared exponent");
        return std::exp(log_s_.back() + *declared_tail_ * (lr - log_r_.back()));
      }
      if (lr <= log_r_.front()) {
        const double slope = (log_s_[1] - log_s_[0]) / (log_r_[1] - log_r_[0]);
        return std::exp(log_s_.front() + slope * (lr - log_r_.front()));
      }
      const auto it = std::upper_bound(log_r_.begin(), log_r_.end(), lr);
      const size_t i = static_cast<size_t>(it - log_r_.begin());
      const double t = (lr - log_r_[i - 1]) / (log_r_[i] - log_r_[i - 1]);
      return std::exp(log_s_[i - 1] + t * (log_s_[i] - log_s_[i - 1]));
    }
  }
  return 0.0;
}

double MeasureProfile::sigma_ball_at(double d, double s) const {
  if (!(s > 0.0)) throw DomainError("sigma_ball_at: s must be positive");
  switch (kind_) {
    case Kind::DiracAtOrigin:
      return s > d ? 1.0 : 0.0;
    case Kind::SameAsVolume:
    case Kind::Table:
      // translation-invariant model
      return sigma_ball(s);
    case Kind::PowerDensity:
      // two-scale comparable value: density ~ d^gamma on small balls around
      // x, full radial growth once the ball swallows the origin
      if (d <= 0.0 || s >= 0.5 * d) return sigma_ball(s + d);
      {
        const double omega = coeff_ * (n_ + gamma_);  // omega_{n-1}
        return (omega / n_) * std::pow(s, n_) * std::pow(d, gamma_);
      }
  }
  return 0.0;
}

std::optional<double> MeasureProfile::density(double r) const {
  switch (kind_) {
    case Kind::PowerDensity:
      if (!(r > 0.0)) throw DomainError("density: r must be positive");
      return std::pow(r, gamma_);
    case Kind::SameAsVolume:
      return 1.0;
    default:
      return {};
  }
}

std::optional<double> MeasureProfile::tail_exponent() const {
  switch (kind_) {
    case Kind::PowerDensity:
      return n_ + gamma_;
    case Kind::DiracAtOrigin:
      return 0.0;
    case Kind::SameAsVolume:
      return vol_->tail_exponent();
    case Kind::Table:
      return declared_tail_;
  }
  return {};
}

// ---------------------------------------------------------------------------

void ModelParams::validate(bool require_q_gt_1, bool require_transient_dim) const {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("ModelParams: alpha must lie in (0,1)");
  if (require_q_gt_1 ? !(q > 1.0) : !(q > 0.0))
    throw DomainError("ModelParams: q out of range");
  if (!(n > 0.0)) throw DomainError("ModelParams: n must be positive");
  if (require_transient_dim && !(n > 2.0 * alpha))
    throw RecurrenceError("ModelParams: n > 2*alpha required (not transient)");
  if (!(gamma > -2.0 * alpha))
    throw DomainError("ModelParams: gamma must exceed -2*alpha");
  if (!(r0 > 0.0)) throw DomainError("ModelParams: r0 must be positive");
  if (!(a > 0.0)) throw DomainError("ModelParams: a must be positive");
}

}  // namespace fgk
