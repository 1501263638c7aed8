#include "fgk/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fgk/green.hpp"
#include "fgk/lp.hpp"
#include "fgk/quadrature.hpp"

namespace fgk {

void DiscreteKernelSpace::validate() const {
  const size_t n = kernel.size();
  if (n == 0) throw DomainError("DiscreteKernelSpace: empty space");
  if (weights.size() != n)
    throw DomainError("DiscreteKernelSpace: weight count mismatch");
  if (!coords.empty() && coords.size() != n)
    throw DomainError("DiscreteKernelSpace: coordinate count mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (kernel[i].size() != n)
      throw DomainError("DiscreteKernelSpace: kernel not square");
    if (!(weights[i] >= 0.0))
      throw DomainError("DiscreteKernelSpace: negative weight");
    for (size_t j = 0; j < n; ++j) {
      if (!(kernel[i][j] >= 0.0))
        throw DomainError("DiscreteKernelSpace: negative kernel entry");
      if (kernel[i][j] != kernel[j][i])
        throw DomainError("DiscreteKernelSpace: kernel not symmetric");
      if (i != j && std::isinf(kernel[i][j]))
        throw DomainError("DiscreteKernelSpace: off-diagonal entry infinite");
    }
  }
}

QuasiMetricResult quasi_metric_constant(const DiscreteKernelSpace& space) {
  space.validate();
  const size_t n = space.size();
  QuasiMetricResult out;
  out.kappa = 1.0;
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      for (size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const double lhs = std::min(space.kernel[x][y], space.kernel[y][z]);
        const double den = space.kernel[x][z];
        double ratio;
        if (den > 0.0)
          ratio = lhs / den;
        else
          ratio = lhs > 0.0 ? kInf : 0.0;
        if (ratio > out.kappa) {
          out.kappa = ratio;
          out.witness = {x, y, z, ratio};
        }
      }
    }
  return out;
}

PtolemyResult ptolemy_check(const DiscreteKernelSpace& space,
                            std::optional<size_t> origin) {
  const QuasiMetricResult qm = quasi_metric_constant(space);
  if (std::isinf(qm.kappa))
    throw DomainError("ptolemy_check: quasi-metric constant is infinite");
  const size_t n = space.size();
  const auto& K = space.kernel;

  PtolemyResult out;
  out.kappa_sq = qm.kappa * qm.kappa;
  out.minimal_constant = 0.0;
  const size_t o_begin = origin ? *origin : 0;
  const size_t o_end = origin ? *origin + 1 : n;
  for (size_t o = o_begin; o < o_end; ++o)
    for (size_t x = 0; x < n; ++x) {
      if (x == o) continue;
      for (size_t y = 0; y < n; ++y) {
        if (y == o || y == x) continue;
        for (size_t z = 0; z < n; ++z) {
          if (z == o || z == x || z == y) continue;
          const double lhs = std::min(K[x][y] * K[o][z], K[y][z] * K[o][x]);
          const double den = K[x][z] * K[o][y];
          if (den > 0.0)
            out.minimal_constant = std::max(out.minimal_constant, lhs / den);
          else if (lhs > 0.0)
            out.minimal_constant = kInf;
        }
      }
    }
  out.holds = out.minimal_constant <= out.kappa_sq * (1.0 + 1e-12);
  return out;
}

namespace {

// one WMP cell: the LP over atom masses on subset A, objective row x
double wmp_cell(const std::vector<std::vector<double>>& K,
                const std::vector<size_t>& A, size_t x,
                std::vector<double>* nu_out) {
  const size_t k = A.size();
  std::vector<std::vector<double>> cons(k, std::vector<double>(k));
  std::vector<double> rhs(k, 1.0), obj(k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) cons[i][j] = K[A[i]][A[j]];
  for (size_t j = 0; j < k; ++j) obj[j] = K[x][A[j]];
  const LpSolution sol = lp_maximize(cons, rhs, obj);
  if (nu_out) *nu_out = sol.x;
  return sol.value;
}

}  // namespace

WmpReport wmp_constant(const DiscreteKernelSpace& space,
                       std::optional<double> truncation,
                       size_t sampled_subsets, uint64_t seed) {
  space.validate();
  const size_t n = space.size();

  double max_off = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j) max_off = std::max(max_off, space.kernel[i][j]);
  if (max_off == 0.0) max_off = 1.0;
  const double N = truncation.value_or(1e6 * max_off);
  if (!(N > 0.0)) throw DomainError("wmp_constant: truncation must be positive");

  std::vector<std::vector<double>> K(n, std::vector<double>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) K[i][j] = std::min(space.kernel[i][j], N);

  std::vector<uint64_t> masks;
  if (n <= 10) {
    for (uint64_t m = 1; m < (uint64_t{1} << n); ++m) masks.push_back(m);
  } else {
    std::mt19937_64 rng(seed);
    for (size_t s = 0; s < sampled_subsets; ++s) {
      uint64_t m = 0;
      while (m == 0)
        for (size_t i = 0; i < n; ++i)
          if (rng() & 1) m |= uint64_t{1} << i;
      masks.push_back(m);
    }
  }

  WmpReport rep;
  rep.constant_b = 0.0;
  for (uint64_t mask : masks) {
    std::vector<size_t> A;
    for (size_t i = 0; i < n; ++i)
      if (mask & (uint64_t{1} << i)) A.push_back(i);

    if (A.size() <= 6) {
      // shared exact vertex set for every objective row
      std::vector<std::vector<double>> cons(A.size(),
                                            std::vector<double>(A.size()));
      std::vector<double> rhs(A.size(), 1.0);
      for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A.size(); ++j) cons[i][j] = K[A[i]][A[j]];
      const auto verts = enumerate_vertices(cons, rhs);
      for (size_t x = 0; x < n; ++x) {
        ++rep.lp_cells_solved;
        double best = 0.0;
        const std::vector<double>* arg = nullptr;
        for (const auto& v : verts) {
          double val = 0.0;
          for (size_t j = 0; j < A.size(); ++j) val += K[x][A[j]] * v[j];
          if (val > best) {
            best = val;
            arg = &v;
          }
        }
        if (best > rep.constant_b) {
          rep.constant_b = best;
          rep.witness = WmpWitness{A, x, arg ? *arg : std::vector<double>{}};
        }
      }
    } else {
      for (size_t x = 0; x < n; ++x) {
        ++rep.lp_cells_solved;
        std::vector<double> nu;
        const double val = wmp_cell(K, A, x, &nu);
        if (val > rep.constant_b) {
          rep.constant_b = val;
          rep.witness = WmpWitness{A, x, std::move(nu)};
        }
      }
    }
  }
  rep.constant_b = std::max(rep.constant_b, 1.0);
  return rep;
}

DiscreteKernelSpace tilde_kernel(const DiscreteKernelSpace& space, size_t o,
                                 double c) {
  space.validate();
  if (o >= space.size()) throw DomainError("tilde_kernel: origin out of range");
  if (!(c > 0.0)) throw DomainError("tilde_kernel: c must be positive");
  const size_t n = space.size();
  std::vector<double> k(n);
  for (size_t i = 0; i < n; ++i) {
    k[i] = std::min(space.kernel[o][i], c);
    if (!(k[i] > 0.0))
      throw DomainError("tilde_kernel: kernel must be positive against o");
  }
  DiscreteKernelSpace out = space;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.kernel[i][j] /= k[i] * k[j];
  return out;
}

DiscreteKernelSpace truncate_kernel(const DiscreteKernelSpace& space,
                                    double N) {
  if (!(N > 0.0)) throw DomainError("truncate_kernel: N must be positive");
  DiscreteKernelSpace out = space;
  for (auto& row : out.kernel)
    for (auto& v : row) v = std::min(v, N);
  return out;
}

MinimalityResult minimality_bound(const DiscreteKernelSpace& space, size_t o,
                                  double a) {
  space.validate();
  if (o >= space.size())
    throw DomainError("minimality_bound: origin out of range");
  if (!(a > 0.0)) throw DomainError("minimality_bound: a must be positive");
  const size_t n = space.size();

  double total_mass = 0.0;
  double lambda = kInf;
  for (size_t i = 0; i < n; ++i) {
    if (i == o || !(space.weights[i] > 0.0)) continue;
    total_mass += space.weights[i];
    lambda = std::min(lambda, space.kernel[i][o]);
  }
  if (total_mass == 0.0)
    throw DomainError("minimality_bound: zero total mass off the origin");

  const double kappa = quasi_metric_constant(space).kappa;
  if (std::isinf(kappa))
    throw DomainError("minimality_bound: quasi-metric constant infinite");

  MinimalityResult out;
  out.proof_bound = total_mass / kappa * std::min(lambda * a, 1.0);
  out.min_ratio = kInf;
  for (size_t x = 0; x < n; ++x) {
    if (x == o) continue;
    double pot = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (i == o || !(space.weights[i] > 0.0)) continue;
      pot += space.kernel[x][i] * space.weights[i];
    }
    if (std::isinf(pot)) continue;  // atom at x itself: holds trivially
    const double m = std::min(space.kernel[x][o], 1.0 / a);
    if (!(m > 0.0)) continue;
    out.min_ratio = std::min(out.min_ratio, pot / m);
  }
  out.holds = out.min_ratio >= out.proof_bound * (1.0 - 1e-12);
  return out;
}

bool rearrangement_check(const std::vector<double>& omega_weights,
                         const std::vector<double>& f_values,
                         const std::function<double(double)>& phi) {
  const size_t n = omega_weights.size();
  if (n == 0 || f_values.size() != n)
    throw DomainError("rearrangement_check: size mismatch");
  double total = 0.0;
  for (double w : omega_weights) {
    if (!(w >= 0.0)) throw DomainError("rearrangement_check: negative weight");
    total += w;
  }

  double err = 0.0;
  const double lhs = total > 0.0 ? integrate_adaptive(phi, 0.0, total,
                                                      1e-12 * std::max(total, 1.0),
                                                      &err)
                                 : 0.0;
  double rhs = 0.0;
  for (size_t y = 0; y < n; ++y) {
    double sub = 0.0;  // omega of the sublevel set {f <= f(y)}
    for (size_t z = 0; z < n; ++z)
      if (f_values[z] <= f_values[y]) sub += omega_weights[z];
    rhs += omega_weights[y] * phi(sub);
  }
  return lhs <= rhs * (1.0 + 1e-9) + 1e-12 + err;
}

// ---------------------------------------------------------------------------

std::string save_space(const DiscreteKernelSpace& space) {
  space.validate();
  std::ostringstream os;
  os << "fgk-space 1\n";
  os << "points " << space.size() << "\n";
  os << "coords " << (space.coords.empty() ? 0 : 1) << "\n";
  for (const auto& c : space.coords)
    os << format_double(c[0]) << ' ' << format_double(c[1]) << ' '
       << format_double(c[2]) << "\n";
  os << "kernel\n";
  for (const auto& row : space.kernel) {
    for (size_t j = 0; j < row.size(); ++j)
      os << (j ? " " : "") << format_double(row[j]);
    os << "\n";
  }
  os << "weights\n";
  for (size_t j = 0; j < space.weights.size(); ++j)
    os << (j ? " " : "") << format_double(space.weights[j]);
  os << "\n";
  return os.str();
}

DiscreteKernelSpace load_space(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  int version = 0;
  is >> tag >> version;
  if (tag != "fgk-space" || version != 1)
    throw ConfigError("load_space: unrecognized header");
  size_t n = 0;
  int has_coords = 0;
  is >> tag >> n;
  if (tag != "points" || n == 0) throw ConfigError("load_space: bad point count");
  is >> tag >> has_coords;
  if (tag != "coords") throw ConfigError("load_space: bad coords flag");

  DiscreteKernelSpace space;
  std::string tok;
  if (has_coords) {
    space.coords.resize(n);
    for (auto& c : space.coords)
      for (double& v : c) {
        is >> tok;
        v = parse_double(tok);
      }
  }
  is >> tag;
  if (tag != "kernel") throw ConfigError("load_space: missing kernel block");
  space.kernel.assign(n, std::vector<double>(n));
  for (auto& row : space.kernel)
    for (double& v : row) {
      is >> tok;
      v = parse_double(tok);
    }
  is >> tag;
  if (tag != "weights") throw ConfigError("load_space: missing weight block");
  space.weights.resize(n);
  for (double& v : space.weights) {
    is >> tok;
    v = parse_double(tok);
  }
  if (!is) throw ConfigError("load_space: truncated input");
  space.validate();
  return space;
}

// ---------------------------------------------------------------------------

DiscreteKernelSpace make_riesz_space(size_t count, double n, double alpha,
                                     uint64_t seed) {
  if (count < 2) throw DomainError("make_riesz_space: need >= 2 points");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  DiscreteKernelSpace space;
  space.coords.resize(count);
  for (auto& c : space.coords)
    for (double& v : c) v = unit(rng);
  space.weights.assign(count, 1.0);
  space.kernel.assign(count, std::vector<double>(count, kInf));
  const double C = riesz_constant(n, alpha);
  for (size_t i = 0; i < count; ++i)
    for (size_t j = i + 1; j < count; ++j) {
      double r2 = 0.0;
      for (int d = 0; d < 3; ++d) {
        const double dd = space.coords[i][d] - space.coords[j][d];
        r2 += dd * dd;
      }
      const double v = C * std::pow(std::sqrt(r2), 2.0 * alpha - n);
      space.kernel[i][j] = space.kernel[j][i] = v;
    }
  return space;
}

DiscreteKernelSpace make_random_quasi_metric_space(size_t count,
                                                   uint64_t seed) {
  if (count < 2)
    throw DomainError("make_random_quasi_metric_space: need >= 2 points");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> exp_dist(0.5, 2.5);
  std::uniform_real_distribution<double> scale_dist(0.5, 2.0);
  std::uniform_real_distribution<double> mass(0.1, 1.0);

  DiscreteKernelSpace space;
  space.coords.resize(count);
  for (auto& c : space.coords)
    for (double& v : c) v = unit(rng);
  const double p = exp_dist(rng);
  const double s = scale_dist(rng);
  space.weights.resize(count);
  for (double& w : space.weights) w = mass(rng);
  space.kernel.assign(count, std::vector<double>(count, kInf));
  for (size_t i = 0; i < count; ++i)
    for (size_t j = i + 1; j < count; ++j) {
      double r2 = 0.0;
      for (int d = 0; d < 3; ++d) {
        const double dd = space.coords[i][d] - space.coords[j][d];
        r2 += dd * dd;
      }
      const double v = s * std::pow(r2, -0.5 * p);
      space.kernel[i][j] = space.kernel[j][i] = v;
    }
  return space;
}

}  // namespace fgk
