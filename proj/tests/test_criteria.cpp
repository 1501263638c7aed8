#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fgk/criteria.hpp"

using namespace fgk;

TEST_CASE("transience from volume growth") {
  CHECK(check_transience(VolumeProfile::power_law(1.0, 3.0), 0.5) ==
        TransienceStatus::Transient);
  CHECK(check_transience(VolumeProfile::power_law(1.0, 1.2), 0.5) ==
        TransienceStatus::Transient);
  CHECK(check_transience(VolumeProfile::power_law(1.0, 1.0), 0.5) ==
        TransienceStatus::Recurrent);
  CHECK(check_transience(VolumeProfile::power_law(1.0, 0.5), 0.5) ==
        TransienceStatus::Recurrent);
  // alpha enters through t^{2 alpha - 1}
  CHECK(check_transience(VolumeProfile::power_law(1.0, 1.2), 0.75) ==
        TransienceStatus::Recurrent);
}

TEST_CASE("closed-form Hardy-Henon threshold") {
  // q* = (n + gamma) / (n - 2 alpha)
  CHECK(henon_classify(3.0, 0.5, 0.0, 1.6) == Existence::Exists);
  CHECK(henon_classify(3.0, 0.5, 0.0, 1.5) == Existence::NotExists);  // equality
  CHECK(henon_classify(3.0, 0.5, 0.0, 1.4) == Existence::NotExists);
  CHECK(henon_classify(4.0, 0.25, 1.0, 1.5) == Existence::Exists);
  CHECK(henon_classify(4.0, 0.25, 1.0, 10.0 / 7.0) == Existence::NotExists);
}

TEST_CASE("sigma = mu criterion integral has the right threshold and value") {
  // V = r^3, alpha = 1/2, q = 2: integrand r^{2q alpha - 1 - n(q-1)} = r^{-2},
  // integral over [1, inf) equals 1
  const auto vol = VolumeProfile::power_law(1.0, 3.0);
  const auto fin = eval_cond_int1b(vol, 0.5, 2.0, 1.0);
  REQUIRE(fin.finite());
  CHECK(fin.value == doctest::Approx(1.0).epsilon(1e-8));

  // q at the threshold n/(n-2 alpha) = 1.5 diverges
  const auto crit = eval_cond_int1b(vol, 0.5, 1.5, 1.0);
  CHECK(crit.status == IntegralStatus::DivergentByExponent);
  const auto below = eval_cond_int1b(vol, 0.5, 1.4, 1.0);
  CHECK_FALSE(below.finite());
}

TEST_CASE("outer tail integral matches the declared exponent threshold") {
  const auto vol = VolumeProfile::power_law(1.0, 3.0);
  const auto mu = MeasureProfile::power_density(3.0, 0.0);
  // exponent (2a-n)(q-1) + (n+gamma-n) + 2a-1 = -2(q-1) for this scenario;
  // finite iff -2(q-1) < -1, i.e. q > 1.5
  CHECK(eval_cond_int1(vol, mu, 0.5, 2.0, 1.0).finite());
  CHECK_FALSE(eval_cond_int1(vol, mu, 0.5, 1.5, 1.0).finite());
  CHECK_FALSE(eval_cond_int1(vol, mu, 0.5, 1.2, 1.0).finite());

  // Dirac measure: sigma(B(o,r)) = 1, integrand ~ R(r)^{q-1} r^{2a-1} / V(r)
  const auto dirac = MeasureProfile::dirac_at_origin();
  const auto r = eval_cond_int1(vol, dirac, 0.5, 2.0, 1.0);
  CHECK(r.finite());
}

TEST_CASE("sup-type criterion verdicts") {
  const auto vol = VolumeProfile::power_law(1.0, 3.0);
  const auto xs = make_log_grid(1e-3, 1e6, 25);
  const auto rs = make_log_grid(1.0, 1e6, 25);

  // supercritical sigma = mu scenario stays bounded
  const auto mu = MeasureProfile::same_as_volume(vol);
  const auto ok = eval_cond_int2(vol, mu, 0.5, 2.0, 1.0, xs, rs);
  CHECK(ok.verdict == BoundednessVerdict::Bounded);
  CHECK(!ok.samples.empty());

  // Dirac at the origin: the inner integral blows up as x -> o
  const auto dirac = MeasureProfile::dirac_at_origin();
  const auto bad = eval_cond_int2(vol, dirac, 0.5, 2.0, 1.0, xs, rs);
  CHECK(bad.verdict == BoundednessVerdict::UnboundedTrend);
}

TEST_CASE("criteria report for the benchmark scenarios") {
  const auto vol = VolumeProfile::power_law(4.0 * M_PI / 3.0, 3.0);
  ModelParams p;
  p.n = 3.0;
  p.alpha = 0.5;
  p.gamma = 0.0;
  p.r0 = 1.0;

  // supercritical
  p.q = 2.0;
  auto rep = evaluate_criteria(vol, MeasureProfile::power_density(3.0, 0.0), p);
  CHECK(rep.transient == TransienceStatus::Transient);
  CHECK(rep.existence_verdict == Existence::Exists);
  REQUIRE(rep.henon_threshold);
  CHECK(*rep.henon_threshold == doctest::Approx(1.5));

  // subcritical
  p.q = 1.4;
  rep = evaluate_criteria(vol, MeasureProfile::power_density(3.0, 0.0), p);
  CHECK(rep.existence_verdict == Existence::NotExists);

  // threshold itself is not attained
  p.q = 1.5;
  rep = evaluate_criteria(vol, MeasureProfile::power_density(3.0, 0.0), p);
  CHECK(rep.existence_verdict == Existence::NotExists);

  // sigma = mu path decides through the one-dimensional integral
  p.q = 2.0;
  rep = evaluate_criteria(vol, MeasureProfile::same_as_volume(vol), p);
  REQUIRE(rep.cond_int1b);
  CHECK(rep.cond_int1b->finite());
  CHECK(rep.existence_verdict == Existence::Exists);

  // recurrent geometry: nothing exists
  ModelParams rec = p;
  rec.n = 1.0;
  const auto thin = VolumeProfile::power_law(2.0, 1.0);
  rep = evaluate_criteria(thin, MeasureProfile::power_density(1.0, 0.0), rec);
  CHECK(rep.transient == TransienceStatus::Recurrent);
  CHECK(rep.existence_verdict == Existence::NotExists);
}

TEST_CASE("dirac scenario: tail integral finite, sup criterion fails") {
  const auto vol = VolumeProfile::power_law(4.0 * M_PI / 3.0, 3.0);
  ModelParams p;
  p.n = 3.0;
  p.alpha = 0.5;
  p.q = 2.0;
  const auto rep =
      evaluate_criteria(vol, MeasureProfile::dirac_at_origin(), p);
  CHECK(rep.cond_int1.finite());
  CHECK(rep.cond_int2.verdict == BoundednessVerdict::UnboundedTrend);
}

TEST_CASE("tail comparison inequality with the proof constant") {
  // phi = t^{-3}, s = 1/2, alpha = 1/2, r = 1:
  // lhs = sqrt(1/2), integral side = 1, boundary side = 1, proof C = 1
  const auto res = check_prop_s([](double t) { return std::pow(t, -3.0); },
                                -3.0, 0.5, 0.5, 1.0);
  CHECK(res.holds);
  CHECK(res.proof_constant == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.lhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
  CHECK(res.rhs_integral == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(res.rhs_boundary == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(res.empirical_constant ==
        doctest::Approx(std::sqrt(0.5) / 2.0).epsilon(1e-6));
  CHECK(res.empirical_constant <= res.proof_constant);

  // steeper decay and a different fractional s
  const auto res2 = check_prop_s([](double t) { return std::pow(t, -4.0); },
                                 -4.0, 0.75, 0.75, 2.0);
  CHECK(res2.holds);
  CHECK(res2.empirical_constant <= res2.proof_constant * (1.0 + 1e-9));
}

TEST_CASE("summation-by-parts bound for decreasing sequences") {
  // a_k = 1, u_k = 2^{-k}: both sides agree exactly
  std::vector<double> a(12, 1.0), u(13);
  for (size_t k = 0; k < u.size(); ++k) u[k] = std::pow(2.0, -double(k));
  const auto res = check_elementary_lemma(a, u);
  CHECK(res.precondition_ok);
  CHECK(res.bound_holds);

  // growing a against slowly decaying u: precondition fails
  std::vector<double> a2(6), u2(7);
  for (size_t k = 0; k < a2.size(); ++k) a2[k] = std::pow(4.0, double(k));
  for (size_t k = 0; k < u2.size(); ++k) u2[k] = 1.0 / (1.0 + double(k));
  const auto res2 = check_elementary_lemma(a2, u2);
  CHECK_FALSE(res2.precondition_ok);
}

TEST_CASE("log grid construction") {
  const auto g = make_log_grid(1.0, 100.0, 3);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[1] == doctest::Approx(10.0));
  CHECK(g[2] == doctest::Approx(100.0));
}
