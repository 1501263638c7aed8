#include "fgk/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <thread>

#include "fgk/green.hpp"

namespace fgk {

namespace {

constexpr int kPsiGridPoints = 4001;
constexpr int kMaxPsiDepth = 8;

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

PsiTable::PsiTable(double q, double b, double t_max, int depth) : q_(q), b_(b) {
  if (!(q > 1.0)) throw DomainError("PsiTable: q > 1 required");
  if (!(b > 0.0)) throw DomainError("PsiTable: b must be positive");
  if (!(t_max > 0.0)) throw DomainError("PsiTable: t_max must be positive");
  if (depth < 1) throw DomainError("PsiTable: depth must be >= 1");
  if (depth > kMaxPsiDepth)
    throw ResourceGuardError("PsiTable: depth exceeds the recursion guard (8)");

  log_t_.resize(kPsiGridPoints);
  const double lt_hi = std::log(t_max);
  const double lt_lo = lt_hi + std::log(1e-14);
  for (int i = 0; i < kPsiGridPoints; ++i)
    log_t_[static_cast<size_t>(i)] =
        lt_lo + (lt_hi - lt_lo) * i / (kPsiGridPoints - 1);

  std::vector<double> prev = log_t_;  // psi_0 = identity
  const double log_b = std::log(b);
  for (int k = 1; k <= depth; ++k) {
    // g = psi(psi_{k-1}) in logs, then cumulative integral in logs
    std::vector<double> g(prev.size());
    for (size_t i = 0; i < prev.size(); ++i) g[i] = q * (prev[i] - log_b);

    std::vector<double> cur(prev.size());
    const double p0 = (g[1] - g[0]) / (log_t_[1] - log_t_[0]);
    double acc = g[0] + log_t_[0] - std::log(p0 + 1.0);  // head piece [0, t_0]
    cur[0] = acc;
    for (size_t i = 1; i < prev.size(); ++i) {
      const double dlt = log_t_[i] - log_t_[i - 1];
      const double p = (g[i] - g[i - 1]) / dlt;
      // int_{t_{i-1}}^{t_i} of the power interpolant, in logs
      const double seg = g[i - 1] + log_t_[i - 1] +
                         std::log(std::expm1((p + 1.0) * dlt)) -
                         std::log(p + 1.0);
      acc = log_add_exp(acc, seg);
      cur[i] = acc;
    }
    log_psi_.push_back(cur);
    prev = std::move(cur);
  }
}

double PsiTable::eval(int k, double t) const {
  if (k < 0 || k > depth()) throw DomainError("PsiTable: k out of range");
  if (t < 0.0) throw DomainError("PsiTable: t must be non-negative");
  if (k == 0 || t == 0.0) return k == 0 ? t : 0.0;
  const auto& lp = log_psi_[static_cast<size_t>(k - 1)];
  const double lt = std::log(t);
  size_t i;
  if (lt <= log_t_.front())
    i = 1;
  else if (lt >= log_t_.back())
    i = log_t_.size() - 1;
  else
    i = static_cast<size_t>(std::upper_bound(log_t_.begin(), log_t_.end(), lt) -
                            log_t_.begin());
  const double slope = (lp[i] - lp[i - 1]) / (log_t_[i] - log_t_[i - 1]);
  return std::exp(lp[i - 1] + slope * (lt - log_t_[i - 1]));
}

std::vector<std::vector<double>> psi_sequence(double q, double b,
                                              const std::vector<double>& t_grid,
                                              int depth) {
  for (double t : t_grid)
    if (!(t > 0.0)) throw DomainError("psi_sequence: t_grid must be positive");
  if (t_grid.empty()) throw DomainError("psi_sequence: empty t_grid");
  const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
  const PsiTable table(q, b, t_max, depth);
  std::vector<std::vector<double>> out(static_cast<size_t>(depth));
  for (int k = 1; k <= depth; ++k) {
    auto& row = out[static_cast<size_t>(k - 1)];
    row.reserve(t_grid.size());
    for (double t : t_grid) row.push_back(table.eval(k, t));
  }
  return out;
}

double log_c_qk(double q, int k) {
  if (!(q > 1.0)) throw DomainError("log_c_qk: q > 1 required");
  if (k < 1) throw DomainError("log_c_qk: k must be >= 1");
  double sum = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double e_j = (std::pow(q, j + 1) - 1.0) / (q - 1.0);  // 1+q+...+q^j
    sum += std::pow(q, k - j) * std::log(e_j);
  }
  return sum;
}

bool IterationTrace::all_checks_pass() const {
  for (const auto& row : bound_checks)
    for (bool ok : row)
      if (!ok) return false;
  return true;
}

namespace {

std::vector<double> apply_knu(const DiscreteKernelSpace& space,
                              const std::vector<double>& f) {
  const size_t n = space.size();
  std::vector<double> out(n, 0.0);
  for (size_t x = 0; x < n; ++x)
    for (size_t j = 0; j < n; ++j) {
      if (!(space.weights[j] > 0.0)) continue;
      out[x] += space.kernel[x][j] * space.weights[j] * f[j];
    }
  return out;
}

}  // namespace

IterationTrace run_iteration(const DiscreteKernelSpace& space, double q,
                             int depth) {
  space.validate();
  if (!(q > 1.0)) throw DomainError("run_iteration: q > 1 required");
  if (depth < 1) throw DomainError("run_iteration: depth must be >= 1");
  if (depth > kMaxPsiDepth)
    throw ResourceGuardError("run_iteration: depth exceeds the guard (8)");
  const size_t n = space.size();
  for (size_t x = 0; x < n; ++x)
    if (space.weights[x] > 0.0 && std::isinf(space.kernel[x][x]))
      throw DomainError("run_iteration: K_nu 1 is infinite (weighted infinite diagonal)");

  IterationTrace trace;
  trace.wmp_b = wmp_constant(space).constant_b;

  std::vector<double> ones(n, 1.0);
  trace.f_seq.push_back(apply_knu(space, ones));
  const std::vector<double> f0 = trace.f_seq[0];
  const double f0_max = *std::max_element(f0.begin(), f0.end());

  for (int k = 1; k <= depth; ++k) {
    std::vector<double> powed(n);
    for (size_t j = 0; j < n; ++j)
      powed[j] = std::pow(trace.f_seq.back()[j], q);
    std::vector<double> next = apply_knu(space, powed);
    bool overflow = false;
    for (double v : next)
      if (!std::isfinite(v)) overflow = true;
    if (overflow) {
      trace.truncated = true;
      break;
    }
    trace.f_seq.push_back(std::move(next));
  }

  const int recorded = static_cast<int>(trace.f_seq.size()) - 1;
  const PsiTable psi(q, trace.wmp_b, std::max(f0_max, 1e-300), depth);
  for (int k = 1; k <= recorded; ++k) {
    const auto& fk = trace.f_seq[static_cast<size_t>(k)];
    std::vector<double> psi_row(n);
    std::vector<bool> checks(n);
    const double e_k = (std::pow(q, k + 1) - 1.0) / (q - 1.0);
    const double log_c = log_c_qk(q, k);
    for (size_t x = 0; x < n; ++x) {
      psi_row[x] = psi.eval(k, f0[x]);
      const bool est_it = psi_row[x] <= fk[x] * (1.0 + 1e-8) + 1e-300;
      // [f0]^{e_k} <= b^{e_k - 1} c(q,k) f_k, compared in logs
      const double lhs = f0[x] > 0.0 ? e_k * std::log(f0[x]) : -kInf;
      const double rhs = (e_k - 1.0) * std::log(trace.wmp_b) + log_c +
                         (fk[x] > 0.0 ? std::log(fk[x]) : -kInf);
      const bool cor = lhs <= rhs + 1e-8;
      checks[x] = est_it && cor;
    }
    trace.psi_of_f0.push_back(std::move(psi_row));
    trace.bound_checks.push_back(std::move(checks));
    trace.c_qk.push_back(std::exp(log_c));
  }
  return trace;
}

SupersolutionResult supersolution_bound_check(const DiscreteKernelSpace& space,
                                              double q,
                                              const std::vector<double>& u) {
  return weighted_supersolution_check(space, q,
                                      std::vector<double>(space.size(), 1.0),
                                      u);
}

SupersolutionResult weighted_supersolution_check(
    const DiscreteKernelSpace& space, double q, const std::vector<double>& h,
    const std::vector<double>& u) {
  space.validate();
  if (!(q > 1.0))
    throw DomainError("weighted_supersolution_check: q > 1 required");
  const size_t n = space.size();
  if (h.size() != n || u.size() != n)
    throw DomainError("weighted_supersolution_check: size mismatch");
  for (double hv : h)
    if (!(hv > 0.0) || std::isinf(hv))
      throw DomainError("weighted_supersolution_check: h must be positive and bounded");

  SupersolutionResult out;
  std::vector<double> uq(n);
  for (size_t j = 0; j < n; ++j) uq[j] = std::pow(u[j], q);
  const std::vector<double> pot = apply_knu(space, uq);
  for (size_t x = 0; x < n; ++x)
    if (!(u[x] >= pot[x] + h[x] - 1e-12)) out.failing_points.push_back(x);
  out.precondition_ok = out.failing_points.empty();
  if (!out.precondition_ok) return out;  // no claim without the hypothesis

  DiscreteKernelSpace tilde = space;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) tilde.kernel[i][j] /= h[i] * h[j];
  out.b = wmp_constant(tilde).constant_b;

  std::vector<double> hq(n);
  for (size_t j = 0; j < n; ++j) hq[j] = std::pow(h[j], q);
  const std::vector<double> pot_h = apply_knu(space, hq);
  out.max_ratio = 0.0;
  for (size_t x = 0; x < n; ++x)
    out.max_ratio =
        std::max(out.max_ratio, pot_h[x] * (q - 1.0) / (out.b * h[x]));
  out.conclusion_holds = out.max_ratio < 1.0;
  return out;
}

// ---------------------------------------------------------------------------

double GridProblem::center_norm(size_t i) const {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double c = (cells[i][static_cast<size_t>(d)] + 0.5) * h;
    s += c * c;
  }
  return std::sqrt(s);
}

double GridProblem::kernel(size_t i, size_t j) const {
  int d2 = 0;
  for (int d = 0; d < 3; ++d) {
    const int dd = cells[i][static_cast<size_t>(d)] -
                   cells[j][static_cast<size_t>(d)];
    d2 += dd * dd;
  }
  return kernel_by_d2[static_cast<size_t>(d2)];
}

GridProblem build_grid_problem(int n, double alpha, double q, double gamma,
                               double R_max, double h, const EtaSpec& eta,
                               bool dirac_measure) {
  if (n < 1 || n > 3) throw DomainError("build_grid_problem: n must be 1..3");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("build_grid_problem: alpha must lie in (0,1)");
  if (!(n > 2.0 * alpha))
    throw RecurrenceError("build_grid_problem: n > 2*alpha required");
  if (!(h > 0.0) || !(h < R_max))
    throw DomainError("build_grid_problem: need 0 < h < R_max");
  if (!(eta.strength >= 0.0))
    throw DomainError("build_grid_problem: eta strength must be >= 0");
  if (!(eta.radius < R_max))
    throw DomainError("build_grid_problem: eta support must lie strictly inside");
  if (!(gamma > -2.0 * alpha))
    throw DomainError("build_grid_problem: gamma must exceed -2*alpha");

  GridProblem p;
  p.dim = n;
  p.alpha = alpha;
  p.q = q;
  p.gamma = gamma;
  p.R_max = R_max;
  p.h = h;
  p.cell_volume = std::pow(h, n);
  p.dirac_measure = dirac_measure;

  const int M = static_cast<int>(std::ceil(R_max / h));
  const int lo = -M, hi = M;  // center (idx + 1/2) h, idx in [-M, M)
  const auto axis_lo = [&](int d) { return d < n ? lo : 0; };
  const auto axis_hi = [&](int d) { return d < n ? hi : 1; };
  for (int i = axis_lo(0); i < axis_hi(0); ++i)
    for (int j = axis_lo(1); j < axis_hi(1); ++j)
      for (int k = axis_lo(2); k < axis_hi(2); ++k) {
        double s = 0.0;
        const int idx[3] = {i, j, k};
        for (int d = 0; d < n; ++d) {
          const double c = (idx[d] + 0.5) * h;
          s += c * c;
        }
        const double norm = std::sqrt(s);
        if (norm > R_max) continue;
        if (p.cells.size() >= kMaxGridCells)
          throw ResourceGuardError(
              "build_grid_problem: cell count exceeds 1e5; coarsen h or shrink R_max");
        p.cells.push_back({i, j, k});
        p.theta.push_back(std::pow(norm, gamma));
        p.eta.push_back(norm <= eta.radius ? eta.strength : 0.0);
      }

  if (dirac_measure) {
    size_t nearest = 0;
    for (size_t i = 1; i < p.cells.size(); ++i)
      if (p.center_norm(i) < p.center_norm(nearest)) nearest = i;
    std::fill(p.theta.begin(), p.theta.end(), 0.0);
    p.theta[nearest] = 1.0 / p.cell_volume;  // unit sigma-mass in one cell
  }

  // kernel lookup per squared integer center distance
  const int span = 2 * M;
  const size_t table = static_cast<size_t>(n) * static_cast<size_t>(span) *
                           static_cast<size_t>(span) + 1;
  p.kernel_by_d2.resize(table);
  const double vn = std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
  const double r_h = h * std::pow(vn, -1.0 / n);  // cell-equivalent ball radius
  p.kernel_by_d2[0] = riesz_constant(n, alpha) * (n / (2.0 * alpha)) *
                      std::pow(r_h, 2.0 * alpha - n);
  for (size_t d2 = 1; d2 < table; ++d2)
    p.kernel_by_d2[d2] =
        green_riesz(n, alpha, h * std::sqrt(static_cast<double>(d2))).value;
  return p;
}

std::vector<double> grid_matvec(const GridProblem& p,
                                const std::vector<double>& f, int threads) {
  const size_t n = p.cell_count();
  if (f.size() != n) throw DomainError("grid_matvec: size mismatch");
  if (threads < 1) threads = 1;
  std::vector<double> out(n, 0.0);

  const auto work = [&](size_t row_begin, size_t row_end) {
    for (size_t i = row_begin; i < row_end; ++i) {
      const int xi = p.cells[i][0], yi = p.cells[i][1], zi = p.cells[i][2];
      double acc = 0.0;  // fixed j-order summation: thread-count independent
      for (size_t j = 0; j < n; ++j) {
        const int dx = xi - p.cells[j][0];
        const int dy = yi - p.cells[j][1];
        const int dz = zi - p.cells[j][2];
        acc += p.kernel_by_d2[static_cast<size_t>(dx * dx + dy * dy + dz * dz)] *
               f[j];
      }
      out[i] = acc;
    }
  };

  if (threads == 1 || n < 256) {
    work(0, n);
    return out;
  }
  std::vector<std::thread> pool;
  const size_t chunk = (n + static_cast<size_t>(threads) - 1) /
                       static_cast<size_t>(threads);
  for (int t = 0; t < threads; ++t) {
    const size_t b = static_cast<size_t>(t) * chunk;
    if (b >= n) break;
    pool.emplace_back(work, b, std::min(n, b + chunk));
  }
  for (auto& th : pool) th.join();
  return out;
}

PicardResult picard_minimal_solution(const GridProblem& problem, double a,
                                     size_t max_iters, double tol, int threads,
                                     bool auto_scale, double initial_scale) {
  if (!(a > 0.0))
    throw DomainError("picard_minimal_solution: a must be positive");
  if (!(problem.q > 1.0))
    throw DomainError("picard_minimal_solution: q > 1 required");
  const size_t n = problem.cell_count();

  // base forcing potential G(eta theta); linear in the scale
  std::vector<double> f_eta(n);
  for (size_t j = 0; j < n; ++j)
    f_eta[j] = problem.eta[j] * problem.theta[j] * problem.cell_volume;
  const std::vector<double> g_eta = grid_matvec(problem, f_eta, threads);

  PicardResult res;
  res.eta_scale = initial_scale;
  for (int halving = 0; halving < 60; ++halving) {
    std::vector<double> v(n, 0.0);
    bool blew_up = false;
    res.converged = false;
    for (size_t it = 0; it < max_iters; ++it) {
      std::vector<double> w(n);
      for (size_t j = 0; j < n; ++j)
        w[j] = std::pow(v[j], problem.q) * problem.theta[j] *
               problem.cell_volume;
      std::vector<double> next = grid_matvec(problem, w, threads);
      double resid = 0.0, vmax = 0.0;
      for (size_t j = 0; j < n; ++j) {
        next[j] += res.eta_scale * g_eta[j];
        resid = std::max(resid, std::fabs(next[j] - v[j]));
        vmax = std::max(vmax, next[j]);
      }
      v = std::move(next);
      res.iterations = it + 1;
      res.residual = resid;
      if (vmax > kPicardBlowUp || !std::isfinite(vmax)) {
        blew_up = true;
        break;
      }
      if (resid < tol) {
        res.converged = true;
        break;
      }
    }
    if (!blew_up) {
      res.v = std::move(v);
      res.blew_up = false;
      break;
    }
    res.blew_up = true;
    if (!auto_scale) return res;
    res.eta_scale *= 0.5;
  }
  if (res.blew_up) return res;

  const GreenContext ctx{static_cast<double>(problem.dim), problem.alpha};
  res.domination_c = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double m = truncated_m(ctx, a, problem.center_norm(i));
    res.domination_c = std::max(res.domination_c, res.v[i] / m);
  }
  return res;
}

std::vector<SweepEntry> picard_sweep(int n, double alpha, double q,
                                     double gamma,
                                     const std::vector<double>& R_list,
                                     double h, const EtaSpec& eta, double a,
                                     size_t max_iters, double tol, int threads,
                                     bool dirac_measure) {
  if (R_list.empty()) throw DomainError("picard_sweep: empty radius list");
  std::vector<double> sorted = R_list;
  std::sort(sorted.begin(), sorted.end());

  // calibrate one forcing scale on the largest domain so the domination
  // constants are comparable across the sweep
  const GridProblem largest = build_grid_problem(n, alpha, q, gamma,
                                                 sorted.back(), h, eta,
                                                 dirac_measure);
  const PicardResult calib = picard_minimal_solution(
      largest, a, max_iters, tol, threads, /*auto_scale=*/true, 1.0);
  const double scale = calib.eta_scale;

  std::vector<SweepEntry> out;
  for (double R : sorted) {
    SweepEntry entry;
    entry.R_max = R;
    if (R == sorted.back()) {
      entry.result = calib;
    } else {
      const GridProblem prob =
          build_grid_problem(n, alpha, q, gamma, R, h, eta, dirac_measure);
      entry.result = picard_minimal_solution(prob, a, max_iters, tol, threads,
                                             /*auto_scale=*/false, scale);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

EquivalenceProbe equivalence_probe(const GridProblem& problem, double a,
                                   int threads) {
  if (!(a > 0.0)) throw DomainError("equivalence_probe: a must be positive");
  const double R_half = 0.5 * problem.R_max;
  // one forcing spec that fits strictly inside the half domain, used on both
  // domains so the domination constants are comparable
  EtaSpec eta_spec{std::min(1.0, 0.9 * R_half), 1.0};
  for (size_t j = 0; j < problem.cell_count(); ++j)
    if (problem.eta[j] > 0.0) {
      eta_spec.strength = problem.eta[j];
      break;
    }
  const GridProblem full = build_grid_problem(
      problem.dim, problem.alpha, problem.q, problem.gamma, problem.R_max,
      problem.h, eta_spec, problem.dirac_measure);
  const GridProblem half = build_grid_problem(
      problem.dim, problem.alpha, problem.q, problem.gamma, R_half, problem.h,
      eta_spec, problem.dirac_measure);

  constexpr double kStableRatio = 1.25;
  EquivalenceProbe probe;
  const GreenContext ctx{static_cast<double>(problem.dim), problem.alpha};

  // (1) Picard side: forcing calibrated on the full domain, reused on the half
  const PicardResult full_res =
      picard_minimal_solution(full, a, 10000, 1e-8, threads, true, 1.0);
  const PicardResult half_res = picard_minimal_solution(
      half, a, 10000, 1e-8, threads, false, full_res.eta_scale);
  if (full_res.converged && half_res.converged && half_res.domination_c > 0.0) {
    probe.picard_c_ratio = full_res.domination_c / half_res.domination_c;
    probe.picard_exists = probe.picard_c_ratio < kStableRatio;
  }

  // (2) pointwise domination G_sigma(m^q) <= C m and (3) int m^q dsigma
  const auto domination_and_mass = [&](const GridProblem& p) {
    const size_t n = p.cell_count();
    std::vector<double> f(n);
    double mass = 0.0;
    for (size_t j = 0; j < n; ++j) {
      const double m = truncated_m(ctx, a, p.center_norm(j));
      f[j] = std::pow(m, p.q) * p.theta[j] * p.cell_volume;
      mass += f[j];
    }
    const std::vector<double> g = grid_matvec(p, f, threads);
    double c = 0.0;
    for (size_t i = 0; i < n; ++i)
      c = std::max(c, g[i] / truncated_m(ctx, a, p.center_norm(i)));
    return std::pair<double, double>{c, mass};
  };
  const auto [c_full, mass_full] = domination_and_mass(problem);
  const auto [c_half, mass_half] = domination_and_mass(half);
  probe.domination_c_ratio = c_full / c_half;
  probe.pointwise_domination = probe.domination_c_ratio < kStableRatio;
  probe.mass_ratio = mass_full / mass_half;
  probe.int_m_q_finite = probe.mass_ratio < kStableRatio;

  // (4) sup_x int_{G(o,y) > 1/r} G(x,y) dsigma(y) against r^{q-1}. Two desk
  // proxies: the ratio must not grow with r, and the sup must be stable
  // under mesh refinement (a point mass makes it blow up like h^{2a-n}).
  const double C = riesz_constant(ctx.n, problem.alpha);
  const auto superlevel_sup = [&](const GridProblem& p, double r) {
    const double ball = std::pow(C * r, 1.0 / (ctx.n - 2.0 * p.alpha));
    const size_t n = p.cell_count();
    std::vector<double> f(n, 0.0);
    for (size_t j = 0; j < n; ++j)
      if (p.center_norm(j) < ball) f[j] = p.theta[j] * p.cell_volume;
    const std::vector<double> g = grid_matvec(p, f, threads);
    return *std::max_element(g.begin(), g.end());
  };
  double r_first = 0.0, r_last = 0.0, ratio_first = 0.0, ratio_last = 0.0;
  for (double r = 2.0; r <= 16.0; r *= 2.0) {
    const double ball = std::pow(C * r, 1.0 / (ctx.n - 2.0 * problem.alpha));
    if (ball > problem.R_max) break;  // truncation would distort the sup
    const double ratio =
        superlevel_sup(problem, r) / std::pow(r, problem.q - 1.0);
    if (r_first == 0.0) {
      r_first = r;
      ratio_first = ratio;
    }
    r_last = r;
    ratio_last = ratio;
  }
  if (r_first > 0.0) {
    const double r_trend = ratio_last / ratio_first;
    // mesh comparison at the largest radius so the coarse grid resolves it
    const GridProblem coarse = build_grid_problem(
        problem.dim, problem.alpha, problem.q, problem.gamma, problem.R_max,
        2.0 * problem.h, eta_spec, problem.dirac_measure);
    const double sup_coarse = superlevel_sup(coarse, r_last);
    const double mesh_trend =
        sup_coarse > 0.0 ? superlevel_sup(problem, r_last) / sup_coarse : kInf;
    probe.sup_ratio_spread = std::max(r_trend, mesh_trend);
    probe.sup_condition = r_trend < kStableRatio && mesh_trend < 1.5;
  }

  probe.agree = probe.picard_exists == probe.pointwise_domination &&
                probe.pointwise_domination == probe.int_m_q_finite &&
                probe.int_m_q_finite == probe.sup_condition;
  return probe;
}

// ---------------------------------------------------------------------------

namespace {
constexpr char kCacheMagic[8] = {'F', 'G', 'K', 'K', 'R', 'N', 'L', '1'};
}

void save_kernel_cache(const std::string& path,
                       const std::vector<double>& kernel_by_d2) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("save_kernel_cache: cannot open " + path);
  os.write(kCacheMagic, 8);
  const uint32_t version = 1;
  const uint32_t count = static_cast<uint32_t>(kernel_by_d2.size());
  os.write(reinterpret_cast<const char*>(&version), 4);
  os.write(reinterpret_cast<const char*>(&count), 4);
  os.write(reinterpret_cast<const char*>(kernel_by_d2.data()),
           static_cast<std::streamsize>(count * sizeof(double)));
  if (!os) throw ConfigError("save_kernel_cache: write failed");
}

std::vector<double> load_kernel_cache(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("load_kernel_cache: cannot open " + path);
  char magic[8];
  uint32_t version = 0, count = 0;
  is.read(magic, 8);
  is.read(reinterpret_cast<char*>(&version), 4);
  is.read(reinterpret_cast<char*>(&count), 4);
  if (!is || std::memcmp(magic, kCacheMagic, 8) != 0 || version != 1)
    throw ConfigError("load_kernel_cache: bad header");
  std::vector<double> data(count);
  is.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!is) throw ConfigError("load_kernel_cache: truncated file");
  return data;
}

}  // namespace fgk
