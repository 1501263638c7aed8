#ifndef FGK_DISCRETE_HPP
#define FGK_DISCRETE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fgk/common.hpp"

namespace fgk {

/// Finite symmetric kernel space with per-point atom masses. Diagonal
/// entries may be +inf; every min-convention treats min(+inf, v) = v.
struct DiscreteKernelSpace {
  std::vector<std::array<double, 3>> coords;  // empty when abstract
  std::vector<std::vector<double>> kernel;    // symmetric, non-negative
  std::vector<double> weights;                // atom masses (the measure nu)

  size_t size() const { return kernel.size(); }
  void validate() const;
};

struct TripleWitness {
  size_t x = 0, y = 0, z = 0;
  double ratio = 0.0;
};

struct QuasiMetricResult {
  double kappa = 1.0;  // smallest constant over all triples; may be +inf
  TripleWitness witness;
};

/// Smallest kappa with min(K(x,y), K(y,z)) <= kappa K(x,z) over all
/// ordered triples of distinct points. A zero denominator against a
/// positive min yields kappa = +inf (reported, not an error).
QuasiMetricResult quasi_metric_constant(const DiscreteKernelSpace& space);

struct PtolemyResult {
  bool holds = false;           // with constant kappa^2
  double minimal_constant = 0;  // smallest constant that works empirically
  double kappa_sq = 0.0;
};

/// min(K(x,y)K(o,z), K(y,z)K(o,x)) <= kappa^2 K(x,z)K(o,y) over all
/// distinct quadruples; `origin`, when given, pins the base point.
PtolemyResult ptolemy_check(const DiscreteKernelSpace& space,
                            std::optional<size_t> origin = {});

struct WmpWitness {
  std::vector<size_t> subset;
  size_t x = 0;
  std::vector<double> nu;  // optimal atom masses on the subset
};

struct WmpReport {
  double constant_b = 1.0;
  std::optional<WmpWitness> witness;
  size_t lp_cells_solved = 0;
};

/// Weak-maximum-principle constant of the truncated kernel K ^ N:
/// b = max over nonempty subsets A and points x of
///     max{ sum_j K(x,j) nu_j : sum_j K(i,j) nu_j <= 1 for i in A,
///          nu >= 0 supported on A }.
/// Exact subset enumeration for <= 10 points, seeded random subsets beyond.
/// Default truncation N = 1e6 * max off-diagonal entry.
WmpReport wmp_constant(const DiscreteKernelSpace& space,
                       std::optional<double> truncation = {},
                       size_t sampled_subsets = 2000, uint64_t seed = 1);

/// K~(x,y) = K(x,y) / (k(x) k(y)) with k(.) = K(o,.) ^ c; the result's
/// quasi-metric constant is at most kappa^2.
DiscreteKernelSpace tilde_kernel(const DiscreteKernelSpace& space, size_t o,
                                 double c);

/// Kernel truncated at level N (diagonal becomes finite).
DiscreteKernelSpace truncate_kernel(const DiscreteKernelSpace& space, double N);

struct MinimalityResult {
  double min_ratio = 0.0;    // min over x != o of K_w1(x) / m(x)
  double proof_bound = 0.0;  // (w(A)/kappa) * min(lambda a, 1)
  bool holds = false;
};

/// Verifies K_w1(x) >= (w(A)/kappa) min(lambda a, 1) m(x) with
/// m = K(.,o) ^ 1/a and lambda = min of K(.,o) over the support.
MinimalityResult minimality_bound(const DiscreteKernelSpace& space, size_t o,
                                  double a);

/// Non-decreasing continuous phi:
/// int_0^{w(Omega)} phi(t) dt <= sum_y w_y phi(w({z : f(z) <= f(y)})).
bool rearrangement_check(const std::vector<double>& omega_weights,
                         const std::vector<double>& f_values,
                         const std::function<double(double)>& phi);

// --- serialization (exact decimal round-trip) ---
std::string save_space(const DiscreteKernelSpace& space);
DiscreteKernelSpace load_space(const std::string& text);

// --- generators ---
/// Uniform points in the unit cube with the Riesz kernel C(n,a) r^{2a-n},
/// +inf diagonal, unit weights.
DiscreteKernelSpace make_riesz_space(size_t count, double n, double alpha,
                                     uint64_t seed);

/// Random points with kernel s * r^{-p} (random scale and exponent),
/// +inf diagonal, random positive weights. Always quasi-metric.
DiscreteKernelSpace make_random_quasi_metric_space(size_t count, uint64_t seed);

}  // namespace fgk

#endif  // FGK_DISCRETE_HPP
