#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fgk/discrete.hpp"

using namespace fgk;

namespace {

DiscreteKernelSpace three_point_chain() {
  // K(x,y) = K(y,z) = 1, K(x,z) = 1/2: quasi-metric constant exactly 2
  DiscreteKernelSpace s;
  s.kernel = {{kInf, 1.0, 0.5}, {1.0, kInf, 1.0}, {0.5, 1.0, kInf}};
  s.weights = {1.0, 1.0, 1.0};
  return s;
}

}  // namespace

TEST_CASE("quasi-metric constant on a hand-computed space") {
  const auto res = quasi_metric_constant(three_point_chain());
  CHECK(res.kappa == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(res.witness.ratio == doctest::Approx(2.0));
}

TEST_CASE("zero kernel entry against positive minimum gives infinite kappa") {
  DiscreteKernelSpace s;
  s.kernel = {{kInf, 1.0, 0.0}, {1.0, kInf, 1.0}, {0.0, 1.0, kInf}};
  s.weights = {1.0, 1.0, 1.0};
  CHECK(std::isinf(quasi_metric_constant(s).kappa));
}

TEST_CASE("random quasi-metric generators satisfy the kernel axioms") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = make_random_quasi_metric_space(6, seed);
    CHECK_NOTHROW(s.validate());
    const auto qm = quasi_metric_constant(s);
    CHECK(std::isfinite(qm.kappa));
    CHECK(qm.kappa >= 1.0);
  }
}

TEST_CASE("riesz point clouds have kappa at most 2^{n-2alpha}") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = make_riesz_space(8, 3.0, 0.5, seed);
    const auto qm = quasi_metric_constant(s);
    CHECK(qm.kappa <= std::pow(2.0, 3.0 - 1.0) * (1.0 + 1e-12));
  }
}

TEST_CASE("weak maximum principle constant on a two-point space") {
  DiscreteKernelSpace s;
  s.kernel = {{2.0, 1.0}, {1.0, 2.0}};
  s.weights = {1.0, 1.0};
  const auto rep = wmp_constant(s);
  // every subset LP caps the off-subset potential by the on-subset one
  CHECK(rep.constant_b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.lp_cells_solved > 0);
}

TEST_CASE("wmp constant is at most kappa on random quasi-metric spaces") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    const auto s = make_random_quasi_metric_space(3 + seed % 6, seed);
    const auto qm = quasi_metric_constant(s);
    const auto rep = wmp_constant(s);
    CHECK(rep.constant_b <= qm.kappa * (1.0 + 1e-9));
  }
}

TEST_CASE("ptolemy inequality holds with constant kappa^2") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    const auto s = make_random_quasi_metric_space(4 + seed % 5, seed);
    const auto pt = ptolemy_check(s);
    CHECK(pt.holds);
    CHECK(pt.minimal_constant <= pt.kappa_sq * (1.0 + 1e-9));
  }
}

TEST_CASE("tilde kernel stays quasi-metric with constant kappa^2") {
  const auto s = make_random_quasi_metric_space(6, 7);
  const double kappa = quasi_metric_constant(s).kappa;
  const auto tk = tilde_kernel(s, 0, 1.0);
  const double tilde_kappa = quasi_metric_constant(tk).kappa;
  CHECK(tilde_kappa <= kappa * kappa * (1.0 + 1e-9));
}

TEST_CASE("kernel truncation caps the diagonal") {
  const auto s = make_riesz_space(5, 3.0, 0.5, 11);
  const auto t = truncate_kernel(s, 10.0);
  for (size_t i = 0; i < t.size(); ++i) {
    CHECK(t.kernel[i][i] == doctest::Approx(10.0));
    for (size_t j = 0; j < t.size(); ++j) CHECK(t.kernel[i][j] <= 10.0);
  }
}

TEST_CASE("minimality of the truncated green minorant") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    auto s = make_riesz_space(8, 3.0, 0.5, seed);
    // keep mass on a strict subset so some points carry finite potential
    for (size_t i = 5; i < s.size(); ++i) s.weights[i] = 0.0;
    const auto res = minimality_bound(s, 0, 1.0);
    CHECK(res.holds);
    CHECK(res.min_ratio >= res.proof_bound * (1.0 - 1e-9));
  }
}

TEST_CASE("rearrangement inequality on a hand-checked instance") {
  // omega = (1,1), f = (1,2), phi(t) = t:
  // lhs = int_0^2 t dt = 2, rhs = 1*phi(1) + 1*phi(2) = 3
  CHECK(rearrangement_check({1.0, 1.0}, {1.0, 2.0},
                            [](double t) { return t; }));
}

TEST_CASE("rearrangement inequality on random instances") {
  std::vector<std::function<double(double)>> phis{
      [](double t) { return t; },
      [](double t) { return t * t; },
      [](double t) { return std::sqrt(t); },
      [](double t) { return std::expm1(t); },
  };
  uint64_t state = 12345;
  auto rnd = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return double(state >> 11) / double(1ULL << 53);
  };
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 2 + size_t(rnd() * 6);
    std::vector<double> w(n), f(n);
    for (size_t i = 0; i < n; ++i) {
      w[i] = 0.1 + rnd();
      f[i] = rnd() * 10.0;
    }
    for (const auto& phi : phis) CHECK(rearrangement_check(w, f, phi));
  }
}

TEST_CASE("space serialization round trip") {
  const auto s = make_random_quasi_metric_space(5, 99);
  const auto text = save_space(s);
  const auto back = load_space(text);
  REQUIRE(back.size() == s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    CHECK(back.weights[i] == s.weights[i]);
    for (size_t j = 0; j < s.size(); ++j)
      CHECK(back.kernel[i][j] == s.kernel[i][j]);  // exact decimal round trip
  }
  REQUIRE(back.coords.size() == s.coords.size());
  for (size_t i = 0; i < s.coords.size(); ++i)
    for (int d = 0; d < 3; ++d) CHECK(back.coords[i][d] == s.coords[i][d]);
}

TEST_CASE("validation rejects malformed spaces") {
  DiscreteKernelSpace s;
  s.kernel = {{1.0, 2.0}, {3.0, 1.0}};  // asymmetric
  s.weights = {1.0, 1.0};
  CHECK_THROWS_AS(s.validate(), DomainError);

  DiscreteKernelSpace t;
  t.kernel = {{1.0, 1.0}, {1.0, 1.0}};
  t.weights = {1.0};  // size mismatch
  CHECK_THROWS_AS(t.validate(), DomainError);

  DiscreteKernelSpace u;
  u.kernel = {{1.0, -1.0}, {-1.0, 1.0}};  // negative entry
  u.weights = {1.0, 1.0};
  CHECK_THROWS_AS(u.validate(), DomainError);
}
