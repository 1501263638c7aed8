#include "fgk/lp.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

namespace fgk {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// exact solve of a square rational system; nullopt when singular
std::optional<std::vector<Rational>> solve_rational(
    std::vector<std::vector<Rational>> M, std::vector<Rational> rhs) {
  const size_t n = rhs.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (size_t row = 0; row < n; ++row) {
      if (row == col || M[row][col] == 0) continue;
      const Rational factor = M[row][col] / M[col][col];
      for (size_t k = col; k < n; ++k) M[row][k] -= factor * M[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / M[i][i];
  return x;
}

// floating solve of the same system; nullopt when numerically singular
std::optional<std::vector<double>> solve_double(
    std::vector<std::vector<double>> M, std::vector<double> rhs) {
  const size_t n = rhs.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t row = col + 1; row < n; ++row)
      if (std::fabs(M[row][col]) > std::fabs(M[piv][col])) piv = row;
    if (std::fabs(M[piv][col]) < 1e-13) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const double factor = M[row][col] / M[col][col];
      if (factor == 0.0) continue;
      for (size_t k = col; k < n; ++k) M[row][k] -= factor * M[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / M[i][i];
  return x;
}

}  // namespace

std::vector<std::vector<double>> enumerate_vertices(
    const std::vector<std::vector<double>>& A, const std::vector<double>& b) {
  const size_t m = A.size();
  const size_t n = m ? A[0].size() : 0;
  if (n == 0 || n > 20)
    throw DomainError("enumerate_vertices: variable count out of range");
  if (b.size() != m) throw DomainError("enumerate_vertices: size mismatch");

  // rows 0..m-1: A v <= b; rows m..m+n-1: -v_i <= 0
  const size_t total = m + n;
  auto row_coeff = [&](size_t r, size_t j) -> double {
    return r < m ? A[r][j] : (r - m == j ? -1.0 : 0.0);
  };
  auto row_rhs = [&](size_t r) -> double { return r < m ? b[r] : 0.0; };

  std::vector<std::vector<double>> vertices;
  std::vector<size_t> pick(n);
  for (size_t i = 0; i < n; ++i) pick[i] = i;

  const auto advance = [&]() -> bool {
    size_t i = n;
    while (i-- > 0) {
      if (pick[i] != i + total - n) {
        ++pick[i];
        for (size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  do {
    // assemble the active set system
    std::vector<std::vector<double>> Mf(n, std::vector<double>(n));
    std::vector<double> rf(n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) Mf[i][j] = row_coeff(pick[i], j);
      rf[i] = row_rhs(pick[i]);
    }
    const auto xf = solve_double(Mf, rf);
    if (!xf) continue;

    // floating feasibility with a rounding band; ambiguous cases go exact.
    // Active rows are satisfied with equality by construction and are
    // excluded, otherwise every basis would land inside the band.
    double worst_slack = kInf;
    for (size_t r = 0; r < total; ++r) {
      bool active = false;
      for (size_t i = 0; i < n; ++i) active = active || pick[i] == r;
      if (active) continue;
      double lhs = 0.0;
      double scale = std::fabs(row_rhs(r));
      for (size_t j = 0; j < n; ++j) {
        lhs += row_coeff(r, j) * (*xf)[j];
        scale += std::fabs(row_coeff(r, j) * (*xf)[j]);
      }
      worst_slack =
          std::min(worst_slack, (row_rhs(r) - lhs) / std::max(scale, 1e-30));
    }
    if (worst_slack < -1e-7) continue;  // clearly infeasible basis

    std::vector<double> v = *xf;
    if (worst_slack <= 1e-7) {
      // inside the rounding band: settle feasibility exactly
      std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n));
      std::vector<Rational> rhs(n);
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = Rational(Mf[i][j]);
        rhs[i] = Rational(rf[i]);
      }
      const auto x = solve_rational(M, rhs);
      if (!x) continue;
      bool feasible = true;
      for (size_t r = 0; r < total && feasible; ++r) {
        Rational lhs = 0;
        for (size_t j = 0; j < n; ++j)
          if (row_coeff(r, j) != 0.0)
            lhs += Rational(row_coeff(r, j)) * (*x)[j];
        if (lhs > Rational(row_rhs(r))) feasible = false;
      }
      if (!feasible) continue;
      for (size_t j = 0; j < n; ++j) v[j] = static_cast<double>((*x)[j]);
    }
    bool dup = false;
    for (const auto& w : vertices) {
      double diff = 0.0;
      for (size_t j = 0; j < n; ++j) diff = std::max(diff, std::fabs(w[j] - v[j]));
      if (diff < 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) vertices.push_back(std::move(v));
  } while (advance());

  return vertices;
}

LpSolution simplex_maximize(const std::vector<std::vector<double>>& A,
                            const std::vector<double>& b,
                            const std::vector<double>& c) {
  constexpr double kTol = 1e-9;
  const size_t m = A.size();
  const size_t n = c.size();
  for (double bi : b)
    if (bi < 0.0)
      throw DomainError("simplex_maximize: b must be non-negative");

  // tableau with slack columns; Bland's rule prevents cycling
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(n + m + 1, 0.0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1.0;
    T[i][n + m] = b[i];
  }
  for (size_t j = 0; j < n; ++j) T[m][j] = -c[j];
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  for (size_t iter = 0; iter < 10000; ++iter) {
    size_t enter = n + m;
    for (size_t j = 0; j < n + m; ++j)
      if (T[m][j] < -kTol) {
        enter = j;
        break;
      }
    if (enter == n + m) break;  // optimal

    size_t leave = m;
    double best = kInf;
    for (size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= kTol) continue;
      const double ratio = T[i][n + m] / T[i][enter];
      if (ratio < best - kTol ||
          (ratio < best + kTol && (leave == m || basis[i] < basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m)
      throw DomainError("simplex_maximize: unbounded program");

    const double piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = T[i][enter];
      if (f == 0.0) continue;
      for (size_t j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }

  LpSolution out;
  out.x.assign(n, 0.0);
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < n) out.x[basis[i]] = T[i][n + m];
  out.value = 0.0;
  for (size_t j = 0; j < n; ++j) out.value += c[j] * out.x[j];
  return out;
}

LpSolution lp_maximize(const std::vector<std::vector<double>>& A,
                       const std::vector<double>& b,
                       const std::vector<double>& c) {
  const size_t n = c.size();
  if (n == 0) throw DomainError("lp_maximize: empty program");
  if (n > 6) return simplex_maximize(A, b, c);

  const auto verts = enumerate_vertices(A, b);
  LpSolution out;
  out.x.assign(n, 0.0);
  out.value = -kInf;
  for (const auto& v : verts) {
    double val = 0.0;
    for (size_t j = 0; j < n; ++j) val += c[j] * v[j];
    if (val > out.value) {
      out.value = val;
      out.x = v;
    }
  }
  if (out.value == -kInf)
    throw DomainError("lp_maximize: infeasible program");
  return out;
}

}  // namespace fgk
