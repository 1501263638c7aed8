#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fgk/green.hpp"

using namespace fgk;

// independent closed forms for n=3, alpha=1/2:
// C(3, 1/2) = 1/(2 pi^2), G(r) = r^{-2}/(2 pi^2)
constexpr double kC3Half = 0.050660591821168885;

TEST_CASE("Riesz constant closed form") {
  CHECK(riesz_constant(3.0, 0.5) == doctest::Approx(kC3Half).epsilon(1e-15));
  // C(n, alpha) = Gamma(n/2 - alpha) / (Gamma(alpha) 4^alpha pi^{n/2})
  const double expect45 = std::tgamma(2.0 - 0.25) /
                          (std::tgamma(0.25) * std::pow(4.0, 0.25) *
                           std::pow(M_PI, 2.0));
  CHECK(riesz_constant(4.0, 0.25) == doctest::Approx(expect45).epsilon(1e-14));
}

TEST_CASE("Riesz kernel values") {
  CHECK(green_riesz(3.0, 0.5, 1.0).value ==
        doctest::Approx(kC3Half).epsilon(1e-15));
  CHECK(green_riesz(3.0, 0.5, 2.0).value ==
        doctest::Approx(0.012665147955292221).epsilon(1e-15));  // 1/(8 pi^2)
  CHECK(green_riesz(3.0, 0.5, 0.1).value ==
        doctest::Approx(5.0660591821168885).epsilon(1e-14));
  CHECK(green_riesz(3.0, 0.5, 0.0).is_infinite());
  CHECK_THROWS_AS(green_riesz(1.0, 0.5, 1.0), RecurrenceError);
}

TEST_CASE("subordination quadrature reproduces the Riesz kernel") {
  for (const double n : {3.0, 4.0, 5.0}) {
    for (const double alpha : {0.25, 0.5, 0.75}) {
      for (const double r : {0.1, 1.0, 10.0}) {
        const double exact = green_riesz(n, alpha, r).value;
        const double sub = green_subordinated_euclidean(n, alpha, r).value;
        CHECK(sub == doctest::Approx(exact).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("subordination flags non-transient tails") {
  // constant-in-s kernel: integrand ~ s^{alpha-1}, not integrable at infinity
  const HeatKernel flat = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(green_subordinated(flat, 0.5, 1.0, 1e-9, -0.5),
                  RecurrenceError);
}

TEST_CASE("volume estimate closed form for power profiles") {
  // V(t) = t^3, alpha = 1/2: R(d) = int_d^inf dt/t^3 = 1/(2 d^2)
  const auto vol = VolumeProfile::power_law(1.0, 3.0);
  CHECK(green_volume_estimate(vol, 0.5, 1.0).value ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(green_volume_estimate(vol, 0.5, 2.0).value ==
        doctest::Approx(0.125).epsilon(1e-12));

  // recurrent growth raises
  const auto thin = VolumeProfile::power_law(1.0, 0.9);
  CHECK_THROWS_AS(green_volume_estimate(thin, 0.5, 1.0), RecurrenceError);
}

TEST_CASE("volume estimate for piecewise and table profiles") {
  // piecewise: V = t^3 on (0,1], t^4 beyond; R(1) = int_1^inf t^{-4} = 1/3
  const auto pw = VolumeProfile::piecewise_power(1.0, {1.0}, {3.0, 4.0});
  CHECK(green_volume_estimate(pw, 0.5, 1.0).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  std::vector<double> r{0.5, 1.0, 2.0, 4.0, 8.0};
  std::vector<double> v;
  for (double x : r) v.push_back(x * x * x);
  const auto tab = VolumeProfile::table(r, v, 3.0);
  CHECK(green_volume_estimate(tab, 0.5, 1.0).value ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("volume estimate is comparable to the exact kernel") {
  // with V(t) = v_3 t^3 the ratio R(d)/G(d) = 3 pi / 4 at every d
  const double v3 = 4.0 * M_PI / 3.0;
  const auto vol = VolumeProfile::power_law(v3, 3.0);
  const std::vector<double> grid{0.01, 0.1, 1.0, 10.0, 1000.0};
  const auto [lo, hi] = comparison_ratio(vol, 3.0, 0.5, grid);
  CHECK(lo == doctest::Approx(0.75 * M_PI).epsilon(1e-10));
  CHECK(hi == doctest::Approx(0.75 * M_PI).epsilon(1e-10));
  CHECK(lo <= hi);
}

TEST_CASE("doubling profiles keep R(rho)/R(2 rho) bounded") {
  const auto pw = VolumeProfile::piecewise_power(1.0, {1.0, 10.0},
                                                 {3.0, 4.0, 3.5});
  double worst = 0.0;
  for (double rho : {0.1, 0.5, 1.0, 5.0, 10.0, 100.0, 1000.0}) {
    const double r1 = green_volume_estimate(pw, 0.5, rho).value;
    const double r2 = green_volume_estimate(pw, 0.5, 2.0 * rho).value;
    worst = std::max(worst, r1 / r2);
  }
  // the ratio is controlled by the doubling constant of the profile
  CHECK(worst < 20.0);
  CHECK(worst >= 1.0);  // R is decreasing
}

TEST_CASE("truncated minorant m = min(G, 1/a)") {
  const GreenContext ctx{3.0, 0.5};
  CHECK(truncated_m(ctx, 1.0, 0.1) == doctest::Approx(1.0));
  CHECK(truncated_m(ctx, 1.0, 1.0) == doctest::Approx(kC3Half));
  CHECK(truncated_m(ctx, 4.0, 1.0) == doctest::Approx(kC3Half));
  CHECK(truncated_m(ctx, 100.0, 0.5) == doctest::Approx(0.01));
}
