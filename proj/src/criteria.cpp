#include "fgk/criteria.hpp"

#include <algorithm>
#include <cmath>

namespace fgk {

TransienceStatus check_transience(const VolumeProfile& vol, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("check_transience: alpha must lie in (0,1)");
  if (const auto nv = vol.tail_exponent())
    return *nv > 2.0 * alpha ? TransienceStatus::Transient
                             : TransienceStatus::Recurrent;
  const Integrand f = [&vol, alpha](double t) {
    return std::pow(t, 2.0 * alpha - 1.0) / vol(t);
  };
  return integrate_tail(f, 1.0, kDefaultTol).finite()
             ? TransienceStatus::Transient
             : TransienceStatus::Recurrent;
}

IntegralResult eval_cond_int1(const VolumeProfile& vol,
                              const MeasureProfile& meas, double alpha,
                              double q, double r0) {
  if (!(r0 > 0.0)) throw DomainError("eval_cond_int1: r0 must be positive");
  if (!(q > 0.0)) throw DomainError("eval_cond_int1: q must be positive");
  const Integrand f = [&](double r) {
    const double R = green_volume_estimate(vol, alpha, r).value;
    return std::pow(R, q - 1.0) * meas.sigma_ball(r) / vol(r) *
           std::pow(r, 2.0 * alpha - 1.0);
  };
  std::optional<double> decl;
  const auto nv = vol.tail_exponent();
  const auto se = meas.tail_exponent();
  if (nv && se)
    decl = (2.0 * alpha - *nv) * (q - 1.0) + (*se - *nv) + 2.0 * alpha - 1.0;
  return integrate_tail(f, r0, kDefaultTol, decl);
}

IntegralResult eval_cond_int1b(const VolumeProfile& vol, double alpha, double q,
                               double r0) {
  if (!(r0 > 0.0)) throw DomainError("eval_cond_int1b: r0 must be positive");
  if (!(q > 1.0)) throw DomainError("eval_cond_int1b: q > 1 required");
  const Integrand f = [&](double r) {
    return std::pow(r, 2.0 * alpha * q - 1.0) / std::pow(vol(r), q - 1.0);
  };
  std::optional<double> decl;
  if (const auto nv = vol.tail_exponent())
    decl = 2.0 * alpha * q - 1.0 - *nv * (q - 1.0);
  return integrate_tail(f, r0, kDefaultTol, decl);
}

namespace {

// smallest s with sigma(B(x,s)) >= target, bisected in log s; sigma_ball_at
// is nondecreasing in s for every supported measure kind
double crossing_radius(const MeasureProfile& meas, double d, double target) {
  double lo = 1e-12, hi = 1e15;
  if (meas.sigma_ball_at(d, lo) >= target) return lo;
  if (meas.sigma_ball_at(d, hi) < target) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (meas.sigma_ball_at(d, mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

double cond_int2_inner_upper(const VolumeProfile& vol,
                             const MeasureProfile& meas, double alpha, double d,
                             double r) {
  const double sigma_or = meas.sigma_ball(r);
  const double s_star = crossing_radius(meas, d, sigma_or);
  const double lo_cut = std::max(d - r, 0.0);
  const double tail_from = std::max(s_star, lo_cut);
  // beyond the crossing the intersection is capped by sigma(B(o,r))
  double value =
      sigma_or * green_volume_estimate(vol, alpha, tail_from).value;
  if (s_star <= lo_cut) return value;

  const Integrand h = [&](double s) {
    return meas.sigma_ball_at(d, s) / vol(s) * std::pow(s, 2.0 * alpha - 1.0);
  };
  if (lo_cut > 0.0) {
    double err = 0.0;
    value += integrate_adaptive(h, lo_cut, s_star, kDefaultTol, &err);
    return value;
  }
  // endpoint at zero: probe the local power exponent numerically
  const double eps = std::min(s_star, 1.0) * 1e-7;
  const double h1 = h(eps), h2 = h(2.0 * eps);
  double beta = 2.0 * alpha - 1.0;
  if (h1 > 0.0 && h2 > 0.0 && std::isfinite(h1) && std::isfinite(h2))
    beta = std::log(h2 / h1) / std::log(2.0);
  const IntegralResult head = integrate_singular(h, beta, s_star, kDefaultTol);
  if (!head.finite())
    throw SingularityError("eval_cond_int2: head integral diverges at zero");
  return value + head.value;
}

struct BracketStats {
  double global = 0.0;
  double excl_top_r = 0.0;    // sup over r below the top two decades
  double excl_small_x = 0.0;  // sup over x above the bottom two decades
};

bool bracket_bounded(const BracketStats& st) {
  return st.global <= 1.05 * st.excl_top_r &&
         st.global <= 1.05 * st.excl_small_x;
}

}  // namespace

CondInt2Result eval_cond_int2(const VolumeProfile& vol,
                              const MeasureProfile& meas, double alpha,
                              double q, double r0,
                              std::span<const double> x_grid,
                              std::span<const double> r_grid) {
  if (x_grid.empty() || r_grid.empty())
    throw DomainError("eval_cond_int2: empty sampling grid");
  if (!(q > 0.0)) throw DomainError("eval_cond_int2: q must be positive");
  (void)r0;

  const double r_max = *std::max_element(r_grid.begin(), r_grid.end());
  const double r_min = *std::min_element(r_grid.begin(), r_grid.end());
  const double x_min = *std::min_element(x_grid.begin(), x_grid.end());
  const double x_max = *std::max_element(x_grid.begin(), x_grid.end());
  double r_cut = r_max / 100.0;  // drop the top two r-decades
  if (r_cut <= r_min) r_cut = std::sqrt(r_min * r_max);
  double x_cut = x_min * 100.0;  // drop the bottom two x-decades
  if (x_cut >= x_max) x_cut = std::sqrt(x_min * x_max);

  CondInt2Result out;
  out.samples.reserve(x_grid.size() * r_grid.size());
  BracketStats up, low;
  for (double d : x_grid) {
    for (double r : r_grid) {
      const double Rr = green_volume_estimate(vol, alpha, r).value;
      const double weight = std::pow(Rr, q - 1.0);
      double inner_up, inner_low;
      if (meas.kind() == MeasureProfile::Kind::DiracAtOrigin) {
        // one atom: exact intersection, upper and lower coincide
        inner_up = inner_low = green_volume_estimate(vol, alpha, d).value;
      } else {
        inner_up = cond_int2_inner_upper(vol, meas, alpha, d, r);
        inner_low =
            meas.sigma_ball(r) *
            green_volume_estimate(vol, alpha, 3.0 * std::max(r, d)).value;
      }
      const CondInt2Sample s{d, r, inner_up * weight, inner_low * weight};
      out.samples.push_back(s);
      up.global = std::max(up.global, s.upper);
      low.global = std::max(low.global, s.lower);
      if (r <= r_cut) {
        up.excl_top_r = std::max(up.excl_top_r, s.upper);
        low.excl_top_r = std::max(low.excl_top_r, s.lower);
      }
      if (d >= x_cut) {
        up.excl_small_x = std::max(up.excl_small_x, s.upper);
        low.excl_small_x = std::max(low.excl_small_x, s.lower);
      }
    }
  }
  out.sup_estimate = up.global;
  const bool up_ok = bracket_bounded(up);
  const bool low_ok = bracket_bounded(low);
  out.verdict = (up_ok && low_ok) ? BoundednessVerdict::Bounded
                                  : BoundednessVerdict::UnboundedTrend;
  out.brackets_agree = (up_ok == low_ok);
  return out;
}

Existence henon_classify(double n, double alpha, double gamma, double q) {
  if (!(n > 2.0 * alpha))
    throw RecurrenceError("henon_classify: n > 2*alpha required");
  if (!(gamma > -2.0 * alpha))
    throw DomainError("henon_classify: gamma must exceed -2*alpha");
  if (!(q > 0.0)) throw DomainError("henon_classify: q must be positive");
  const double threshold = (n + gamma) / (n - 2.0 * alpha);
  // strict inequality: the critical exponent itself has no solution
  return q > threshold ? Existence::Exists : Existence::NotExists;
}

std::vector<double> make_log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2)
    throw DomainError("make_log_grid: need 0 < lo < hi and >= 2 points");
  std::vector<double> g(static_cast<size_t>(points));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < points; ++i)
    g[static_cast<size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / (points - 1));
  return g;
}

CriterionReport evaluate_criteria(const VolumeProfile& vol,
                                  const MeasureProfile& meas,
                                  const ModelParams& params,
                                  std::span<const double> x_grid,
                                  std::span<const double> r_grid) {
  params.validate(/*require_q_gt_1=*/false, /*require_transient_dim=*/false);

  CriterionReport rep;
  rep.transient = check_transience(vol, params.alpha);

  const auto nv = vol.tail_exponent();
  if (nv && *nv > 2.0 * params.alpha &&
      meas.kind() == MeasureProfile::Kind::PowerDensity)
    rep.henon_threshold = (*nv + meas.gamma()) / (*nv - 2.0 * params.alpha);

  if (rep.transient == TransienceStatus::Recurrent) {
    // no finite Green kernel: the inequality has no positive solution
    rep.cond_int1.status = IntegralStatus::DivergentByExponent;
    rep.existence_verdict = Existence::NotExists;
    return rep;
  }

  std::vector<double> xs, rs;
  if (x_grid.empty()) {
    xs = make_log_grid(1e-3, 1e6, 25);
    x_grid = xs;
  }
  if (r_grid.empty()) {
    rs = make_log_grid(params.r0, 1e6, 25);
    r_grid = rs;
  }

  rep.cond_int1 =
      eval_cond_int1(vol, meas, params.alpha, params.q, params.r0);
  rep.cond_int2 = eval_cond_int2(vol, meas, params.alpha, params.q, params.r0,
                                 x_grid, r_grid);

  if (meas.kind() == MeasureProfile::Kind::SameAsVolume) {
    // sigma = mu: the single-integral form decides on its own
    rep.cond_int1b = eval_cond_int1b(vol, params.alpha, params.q, params.r0);
    rep.existence_verdict = rep.cond_int1b->finite() ? Existence::Exists
                                                     : Existence::NotExists;
    return rep;
  }

  const bool int1_ok = rep.cond_int1.finite();
  const bool int2_ok =
      rep.cond_int2.verdict == BoundednessVerdict::Bounded;
  if (int1_ok && int2_ok) {
    rep.existence_verdict = Existence::Exists;
  } else if (int1_ok && !int2_ok && !rep.cond_int2.brackets_agree) {
    // only the coarse upper bracket trends upward: cannot conclude
    rep.existence_verdict = Existence::Inconclusive;
  } else {
    rep.existence_verdict = Existence::NotExists;
  }
  return rep;
}

PropSResult check_prop_s(const Integrand& phi, double phi_tail_exponent,
                         double s, double alpha, double r) {
  if (!(s > 0.0) || !(s < 1.0))
    throw DomainError("check_prop_s: s must lie in (0,1)");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("check_prop_s: alpha must lie in (0,1)");
  if (!(r > 0.0)) throw DomainError("check_prop_s: r must be positive");
  const double p_full = phi_tail_exponent + 2.0 * alpha - 1.0;
  if (p_full >= -1.0)
    throw DomainError("check_prop_s: phi t^{2a-1} is not integrable at infinity");

  const double ta = 2.0 * alpha;
  const Integrand f_full = [&](double t) {
    return phi(t) * std::pow(t, ta - 1.0);
  };
  const Integrand f_s = [&](double t) {
    return std::pow(phi(t), s) * std::pow(t, ta * s - 1.0);
  };
  const IntegralResult full = integrate_tail(f_full, r, kDefaultTol, p_full);
  const IntegralResult part = integrate_tail(
      f_s, r, kDefaultTol, s * phi_tail_exponent + ta * s - 1.0);
  if (!full.finite() || !part.finite())
    throw DomainError("check_prop_s: tail integral diverges");

  PropSResult out;
  out.lhs = std::pow(full.value, s);
  out.rhs_integral = part.value;
  out.rhs_boundary = std::pow(r, ta * s) * std::pow(phi(r), s);
  out.proof_constant =
      s * std::pow(ta, 1.0 - s) *
      std::max(std::pow(1.0 - std::pow(2.0, -ta), s - 1.0),
               std::pow(std::pow(2.0, ta) - 1.0, s) / (ta * s));
  out.empirical_constant = out.lhs / (out.rhs_integral + out.rhs_boundary);
  out.holds =
      out.lhs <=
      out.proof_constant * (out.rhs_integral + out.rhs_boundary) * (1.0 + 1e-9);
  return out;
}

ElementaryLemmaResult check_elementary_lemma(std::span<const double> a_seq,
                                             std::span<const double> u_seq) {
  const size_t K = std::min(a_seq.size(), u_seq.size());
  if (K < 3) throw DomainError("check_elementary_lemma: need >= 3 terms");
  for (size_t k = 0; k < K; ++k) {
    if (!(a_seq[k] > 0.0))
      throw DomainError("check_elementary_lemma: a must be positive");
    if (!(a_seq[k] >= (k ? a_seq[k - 1] : 0.0)))
      throw DomainError("check_elementary_lemma: a must be nondecreasing");
    if (!(u_seq[k] >= 0.0) || (k && !(u_seq[k] <= u_seq[k - 1])))
      throw DomainError("check_elementary_lemma: u must be nonincreasing >= 0");
  }

  ElementaryLemmaResult out;
  std::vector<double> incr(K - 1);
  double max_incr = 0.0;
  for (size_t k = 0; k + 1 < K; ++k) {
    incr[k] = a_seq[k] * (u_seq[k] - u_seq[k + 1]);
    out.increment_sum += incr[k];
    max_incr = std::max(max_incr, incr[k]);
  }
  // summability heuristic on the truncation: the last increment has to have
  // decayed well below the peak (a constant increment stream fails)
  out.precondition_ok = max_incr == 0.0 || incr.back() <= 0.01 * max_incr;

  // truncated form of the key display: a_k u_k <= sum_{l=k}^{m} a_l
  // (u_l - u_{l+1}) + a_k u_{m+1}
  out.bound_holds = true;
  const size_t m = K - 2;
  double suffix = 0.0;
  for (size_t l = m + 1; l-- > 0;) {
    suffix += incr[l];
    const double rhs = suffix + a_seq[l] * u_seq[m + 1];
    if (a_seq[l] * u_seq[l] > rhs * (1.0 + 1e-12)) {
      out.bound_holds = false;
      break;
    }
  }
  return out;
}

}  // namespace fgk
