#ifndef FGK_CRITERIA_HPP
#define FGK_CRITERIA_HPP

#include <optional>
#include <span>
#include <vector>

#include "fgk/green.hpp"
#include "fgk/profiles.hpp"
#include "fgk/quadrature.hpp"

namespace fgk {

enum class TransienceStatus { Transient, Recurrent };

/// Finite iff int_1^inf t^{2a-1}/V(t) dt < inf.
TransienceStatus check_transience(const VolumeProfile& vol, double alpha);

/// Outer tail integral over [r0, inf) of [R(r)]^{q-1} sigma(B(o,r))/V(r)
/// r^{2a-1}.
IntegralResult eval_cond_int1(const VolumeProfile& vol,
                              const MeasureProfile& meas, double alpha,
                              double q, double r0);

/// int_{r0}^inf r^{2aq-1} / V(r)^{q-1} dr (sigma = mu scenario).
IntegralResult eval_cond_int1b(const VolumeProfile& vol, double alpha, double q,
                               double r0);

enum class BoundednessVerdict { Bounded, UnboundedTrend };

struct CondInt2Sample {
  double x_distance;
  double r;
  double upper;  // upper bracket of the product
  double lower;  // lower bracket
};

struct CondInt2Result {
  double sup_estimate = 0.0;  // sup of the upper bracket over the grid
  BoundednessVerdict verdict = BoundednessVerdict::Bounded;
  bool brackets_agree = true;
  std::vector<CondInt2Sample> samples;
};

/// Sampled sup over (x, r) of the cond-int2 product, with the intersection
/// measure bracketed from above by min(sigma(B(x,s)), sigma(B(o,r))) (empty
/// below s = d - r) and from below by sigma(B(o,r)) on the outer window
/// s > 3 max(r, d). Dirac measures use the exact one-atom intersection.
CondInt2Result eval_cond_int2(const VolumeProfile& vol,
                              const MeasureProfile& meas, double alpha,
                              double q, double r0,
                              std::span<const double> x_grid,
                              std::span<const double> r_grid);

enum class Existence { Exists, NotExists, Inconclusive };

/// Hardy-Henon closed-form threshold: exists iff q > (n+gamma)/(n-2a).
Existence henon_classify(double n, double alpha, double gamma, double q);

struct CriterionReport {
  TransienceStatus transient = TransienceStatus::Recurrent;
  IntegralResult cond_int1;
  CondInt2Result cond_int2;
  std::optional<IntegralResult> cond_int1b;  // set when sigma = mu
  std::optional<double> henon_threshold;
  Existence existence_verdict = Existence::Inconclusive;
};

/// Default grids from the scenario ranges: x in [1e-3, 1e6], r in [r0, 1e6],
/// log-spaced.
std::vector<double> make_log_grid(double lo, double hi, int points);

CriterionReport evaluate_criteria(const VolumeProfile& vol,
                                  const MeasureProfile& meas,
                                  const ModelParams& params,
                                  std::span<const double> x_grid = {},
                                  std::span<const double> r_grid = {});

struct PropSResult {
  bool holds = false;
  double proof_constant = 0.0;
  double empirical_constant = 0.0;  // minimal C making the inequality hold
  double lhs = 0.0;
  double rhs_integral = 0.0;
  double rhs_boundary = 0.0;
};

/// (int_r^inf phi t^{2a-1} dt)^s <= C int_r^inf phi^s t^{2as-1} dt
///                                 + C r^{2as} phi(r)^s,
/// with the proof's constant C = s (2a)^{1-s} max{(1-2^{-2a})^{s-1},
/// (2^{2a}-1)^s/(2as)}. `phi_tail_exponent` declares the decay of phi so
/// both sides classify; a non-integrable side raises DomainError.
PropSResult check_prop_s(const Integrand& phi, double phi_tail_exponent,
                         double s, double alpha, double r);

struct ElementaryLemmaResult {
  bool precondition_ok = false;  // sum a_k (u_k - u_{k+1}) looks summable
  bool bound_holds = false;      // a_k u_k <= sum_{l>=k} a_l (u_l - u_{l+1})
  double increment_sum = 0.0;
};

ElementaryLemmaResult check_elementary_lemma(std::span<const double> a_seq,
                                             std::span<const double> u_seq);

}  // namespace fgk

#endif  // FGK_CRITERIA_HPP
