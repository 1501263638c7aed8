#ifndef FGK_ITERATE_HPP
#define FGK_ITERATE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgk/discrete.hpp"

namespace fgk {

/// Tabulated iterates psi_k of psi(t) = (t/b)^q under
/// psi_{k+1}(t) = int_0^t psi(psi_k(s)) ds, built by cumulative quadrature
/// on a shared log grid. Log-log interpolation keeps pure powers exact.
class PsiTable {
 public:
  /// depth > 8 trips the cost guard.
  PsiTable(double q, double b, double t_max, int depth);

  /// psi_k(t); k = 0 is the identity.
  double eval(int k, double t) const;
  int depth() const { return static_cast<int>(log_psi_.size()); }

 private:
  double q_ = 2.0;
  double b_ = 1.0;
  std::vector<double> log_t_;
  std::vector<std::vector<double>> log_psi_;  // index k-1
};

/// psi_k evaluated on t_grid for k = 1..depth.
std::vector<std::vector<double>> psi_sequence(double q, double b,
                                              const std::vector<double>& t_grid,
                                              int depth);

/// log c(q,k) with c(q,k) = prod_{j=1..k} (1+q+...+q^j)^{q^{k-j}}.
double log_c_qk(double q, int k);

struct IterationTrace {
  std::vector<std::vector<double>> f_seq;      // f_0..f_K per point
  std::vector<std::vector<double>> psi_of_f0;  // k = 1..K per point
  std::vector<double> c_qk;                    // c(q,k), +inf on overflow
  std::vector<std::vector<bool>> bound_checks; // k = 1..K per point
  double wmp_b = 1.0;
  bool truncated = false;  // overflow stopped the trace early
  bool all_checks_pass() const;
};

/// f_0 = K_nu 1, f_{k+1} = K_nu(f_k^q); records the psi_k(f_0) <= f_k
/// comparisons and the product-constant bound
/// [K_nu1]^{1+q+...+q^k} <= b^{q+...+q^k} c(q,k) f_k (checked in logs).
IterationTrace run_iteration(const DiscreteKernelSpace& space, double q,
                             int depth);

struct SupersolutionResult {
  bool precondition_ok = false;
  std::vector<size_t> failing_points;  // where u < K_nu(u^q) + h
  bool conclusion_holds = false;
  double b = 1.0;
  double max_ratio = 0.0;  // max of K_nu1 (q-1)/b, or weighted analogue
};

/// u >= K_nu(u^q) + 1 pointwise implies K_nu1 < b/(q-1) everywhere.
SupersolutionResult supersolution_bound_check(const DiscreteKernelSpace& space,
                                              double q,
                                              const std::vector<double>& u);

/// u >= K_nu(u^q) + h implies K_nu(h^q) < b/(q-1) h, with b the WMP
/// constant of K(x,y)/(h(x)h(y)).
SupersolutionResult weighted_supersolution_check(
    const DiscreteKernelSpace& space, double q, const std::vector<double>& h,
    const std::vector<double>& u);

// ---------------------------------------------------------------------------

struct EtaSpec {
  double radius = 1.0;    // eta = strength on |x| <= radius, 0 outside
  double strength = 1.0;
};

/// Cell-centered discretization of the ball |x| <= R_max for the Picard
/// scheme. Kernel entries are stored per squared integer center distance.
struct GridProblem {
  int dim = 3;
  double alpha = 0.5;
  double q = 2.0;
  double gamma = 0.0;
  double R_max = 2.0;
  double h = 0.25;
  double cell_volume = 0.0;  // h^dim
  bool dirac_measure = false;  // sigma = unit mass at the cell nearest o
  std::vector<std::array<int, 3>> cells;  // center = (index + 1/2) h
  std::vector<double> theta;
  std::vector<double> eta;
  std::vector<double> kernel_by_d2;  // green values; [0] is the diagonal

  size_t cell_count() const { return cells.size(); }
  double center_norm(size_t i) const;
  double kernel(size_t i, size_t j) const;
};

inline constexpr size_t kMaxGridCells = 100000;

/// `dirac_measure` replaces the |x|^gamma density by a unit point mass on
/// the cell nearest the origin (theta = 1/h^n there, 0 elsewhere).
GridProblem build_grid_problem(int n, double alpha, double q, double gamma,
                               double R_max, double h, const EtaSpec& eta,
                               bool dirac_measure = false);

/// out_i = sum_j kernel(i,j) f_j, deterministic row-block parallelism.
std::vector<double> grid_matvec(const GridProblem& p,
                                const std::vector<double>& f, int threads = 1);

struct PicardResult {
  std::vector<double> v;
  bool converged = false;
  bool blew_up = false;
  size_t iterations = 0;
  double residual = 0.0;
  double eta_scale = 1.0;      // forcing multiplier actually used
  double domination_c = 0.0;   // max v / m with m = G(.,o) ^ 1/a
};

inline constexpr double kPicardBlowUp = 1e6;

/// v_0 = 0, v_{k+1} = G(v_k^q theta) + G(eta theta); monotone from zero.
/// With auto_scale the forcing is halved until the iteration stays bounded.
PicardResult picard_minimal_solution(const GridProblem& problem, double a,
                                     size_t max_iters = 10000,
                                     double tol = 1e-8, int threads = 1,
                                     bool auto_scale = true,
                                     double initial_scale = 1.0);

struct SweepEntry {
  double R_max = 0.0;
  PicardResult result;
};

/// Runs the scheme over increasing domain radii at one fixed forcing scale
/// (calibrated at the largest radius when auto-scaling is on), so the
/// domination constants are comparable across the sweep.
std::vector<SweepEntry> picard_sweep(int n, double alpha, double q,
                                     double gamma,
                                     const std::vector<double>& R_list,
                                     double h, const EtaSpec& eta, double a,
                                     size_t max_iters = 10000,
                                     double tol = 1e-8, int threads = 1,
                                     bool dirac_measure = false);

struct EquivalenceProbe {
  bool picard_exists = false;       // domination constant stable in R
  bool pointwise_domination = false;  // G_sigma(m^q) <= C m with stable C
  bool int_m_q_finite = false;      // sum m^q dsigma stable in R
  bool sup_condition = false;       // sup_x int_{G(o,y) > 1/r} G dsigma vs r^{q-1}
  bool agree = false;
  double picard_c_ratio = 0.0;
  double domination_c_ratio = 0.0;
  double mass_ratio = 0.0;
  double sup_ratio_spread = 0.0;
};

/// Desk-scale probe of the four-way equivalence: each side is evaluated on
/// the given domain and on its half-radius restriction; stability of the
/// associated constant across the doubling is the finite-domain verdict.
EquivalenceProbe equivalence_probe(const GridProblem& problem, double a,
                                   int threads = 1);

// --- kernel cache (16-byte header: magic, version, entry count) ---
void save_kernel_cache(const std::string& path,
                       const std::vector<double>& kernel_by_d2);
std::vector<double> load_kernel_cache(const std::string& path);

}  // namespace fgk

#endif  // FGK_ITERATE_HPP
