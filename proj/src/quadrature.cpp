#include "fgk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fgk {

namespace {

// K15 abscissae (positive half, including the center) and weights; the odd
// entries are the embedded G7 nodes.
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453,
    0.86486442335976907279, 0.74153118559939443986,
    0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329,
    0.10479001032225018384, 0.14065325971552591875,
    0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kWg[4] = {
    0.12948496616886969327, 0.27970539148927666790,
    0.38183005050511894495, 0.41795918367346938776};

// One G7/K15 panel; err is |K15 - G7| sharpened as in QUADPACK.
double kronrod_panel(const Integrand& f, double a, double b, double* err) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - hw * kXgk[i]);
    fv[14 - i] = f(c + hw * kXgk[i]);
  }
  fv[7] = f(c);
  double resk = 0.0, resg = 0.0, resabs = 0.0;
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
    resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
  }
  resk += kWgk[7] * fv[7];
  resabs += kWgk[7] * std::fabs(fv[7]);
  for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  resg += kWg[3] * fv[7];
  resk *= hw;
  resg *= hw;
  resabs *= hw;
  double e = std::fabs(resk - resg);
  if (resabs > 0.0 && e > 0.0) {
    const double scale = std::pow(200.0 * e / resabs, 1.5);
    e = resabs * std::min(1.0, scale);
  }
  *err = e;
  return resk;
}

}  // namespace

double integrate_adaptive(const Integrand& f, double a, double b,
                          double abs_tol, double* err_out) {
  struct Seg {
    double a, b, val, err;
  };
  double err0;
  double v0 = kronrod_panel(f, a, b, &err0);
  std::vector<Seg> segs{{a, b, v0, err0}};
  double total_err = err0;
  // bisect the worst segment until the summed error estimate is small
  for (int iter = 0; iter < 2000 && total_err > abs_tol; ++iter) {
    size_t worst = 0;
    for (size_t i = 1; i < segs.size(); ++i)
      if (segs[i].err > segs[worst].err) worst = i;
    Seg s = segs[worst];
    const double m = 0.5 * (s.a + s.b);
    if (m <= s.a || m >= s.b) break;  // interval exhausted in doubles
    double e1, e2;
    const double v1 = kronrod_panel(f, s.a, m, &e1);
    const double v2 = kronrod_panel(f, m, s.b, &e2);
    total_err += e1 + e2 - s.err;
    segs[worst] = {s.a, m, v1, e1};
    segs.push_back({m, s.b, v2, e2});
  }
  double total = 0.0;
  for (const Seg& s : segs) total += s.val;
  if (err_out) *err_out = total_err;
  return total;
}

namespace {

struct WindowScan {
  double sum = 0.0;
  double quad_err = 0.0;
  double last_window = 0.0;
  double ratio = 0.0;      // last stable window ratio
  bool ratio_stable = false;
  bool diverged = false;   // partial sum passed the threshold
  bool ratio_ge_one = false;
};

// Integrates f over windows [lo*2^k, lo*2^{k+1}] (direction=+1) or
// [hi*2^{-k-1}, hi*2^{-k}] (direction=-1), tracking the window ratio so a
// geometric tail can be attached.
WindowScan scan_windows(const Integrand& f, double edge, int direction,
                        double tol, int max_windows) {
  WindowScan ws;
  double prev = -1.0, prev2 = -1.0;
  double w_lo, w_hi;
  for (int k = 0; k < max_windows; ++k) {
    if (direction > 0) {
      w_lo = edge * std::pow(2.0, k);
      w_hi = 2.0 * w_lo;
      if (w_hi > 1e290) break;
    } else {
      w_hi = edge * std::pow(2.0, -k);
      w_lo = 0.5 * w_hi;
      if (w_lo < 1e-290) break;
    }
    double perr;
    const double scale = std::max(ws.sum, 1.0);
    const double iv = integrate_adaptive(f, w_lo, w_hi, 0.05 * tol * scale,
                                         &perr);
    ws.sum += iv;
    ws.quad_err += perr;
    ws.last_window = iv;
    if (ws.sum > kDivergenceThreshold) {
      ws.diverged = true;
      return ws;
    }
    if (prev > 0.0 && iv > 0.0) {
      const double r = iv / prev;
      if (prev2 > 0.0) {
        const double r_prev = prev / prev2;
        if (std::fabs(r - r_prev) <= 1e-4 * std::max(1.0, r) && k >= 4) {
          ws.ratio = r;
          ws.ratio_stable = true;
          if (r >= 1.0) {
            ws.ratio_ge_one = true;
            return ws;
          }
          // geometric tail small enough to attach?
          const double tail = iv * r / (1.0 - r);
          if (tail <= tol * std::max(ws.sum, 1e-300)) {
            ws.sum += tail;
            return ws;
          }
          // ratio is stable and < 1: accept the geometric tail once it is
          // an accurate extrapolation (three consistent ratios)
          if (k >= 8) {
            ws.sum += tail;
            ws.quad_err += 1e-3 * tail;
            return ws;
          }
        }
      }
      prev2 = prev;
    } else if (iv == 0.0 && ws.sum > 0.0 && k >= 4) {
      return ws;  // integrand died off
    }
    prev = iv;
  }
  return ws;
}

}  // namespace

IntegralResult integrate_tail(const Integrand& f, double rho, double tol,
                              std::optional<double> declared_exponent) {
  if (!(rho > 0.0)) throw DomainError("integrate_tail: rho must be positive");
  if (!(tol > 0.0)) throw DomainError("integrate_tail: tol must be positive");

  if (declared_exponent) {
    const double p = *declared_exponent;
    if (p >= -1.0) {
      IntegralResult r;
      r.status = IntegralStatus::DivergentByExponent;
      r.tail_exponent = p;
      return r;
    }
    // integrate windows until the analytic tail f(T)*T/(-p-1) is negligible,
    // then attach it
    double sum = 0.0, qerr = 0.0;
    const int max_windows = 900;
    for (int k = 0; k < max_windows; ++k) {
      const double lo = rho * std::pow(2.0, k);
      const double hi = 2.0 * lo;
      if (hi > 1e290) break;
      double perr;
      sum += integrate_adaptive(f, lo, hi, 0.05 * tol * std::max(sum, 1.0),
                                &perr);
      qerr += perr;
      const double tail = f(hi) * hi / (-p - 1.0);
      if (tail <= 0.25 * tol * std::max(sum, 1e-300) || k >= max_windows - 1) {
        IntegralResult r;
        r.status = IntegralStatus::Finite;
        r.value = sum + tail;
        r.rel_error_estimate =
            r.value > 0.0 ? (qerr + 0.5 * tol * tail) / r.value : 0.0;
        r.tail_exponent = p;
        return r;
      }
    }
    IntegralResult r;  // integrand vanished everywhere representable
    r.status = IntegralStatus::Finite;
    r.value = sum;
    r.rel_error_estimate = sum > 0.0 ? qerr / sum : 0.0;
    r.tail_exponent = p;
    return r;
  }

  WindowScan ws = scan_windows(f, rho, +1, tol, 500);
  IntegralResult r;
  if (ws.diverged || ws.ratio_ge_one) {
    r.status = IntegralStatus::NumericDivergent;
    r.value = ws.sum;
    if (ws.ratio_stable) r.tail_exponent = std::log2(ws.ratio) - 1.0;
    return r;
  }
  r.status = IntegralStatus::FiniteNumeric;
  r.value = ws.sum;
  r.rel_error_estimate = ws.sum > 0.0 ? ws.quad_err / ws.sum : 0.0;
  if (ws.ratio_stable) r.tail_exponent = std::log2(ws.ratio) - 1.0;
  return r;
}

IntegralResult integrate_singular(const Integrand& f, double beta, double T,
                                  double tol,
                                  std::optional<double> tail_exponent) {
  if (!(tol > 0.0))
    throw DomainError("integrate_singular: tol must be positive");
  if (beta <= -1.0)
    throw SingularityError(
        "integrate_singular: endpoint exponent <= -1 is not integrable");

  IntegralResult tail_part;
  double head_edge = T;
  if (std::isinf(T)) {
    head_edge = 1.0;
    tail_part = integrate_tail(f, 1.0, tol, tail_exponent);
    if (!tail_part.finite()) {
      if (tail_part.status == IntegralStatus::DivergentByExponent) return tail_part;
      return tail_part;
    }
  } else if (!(T > 0.0)) {
    throw DomainError("integrate_singular: T must be positive");
  }

  // (0, head_edge]: log substitution s = e^u, then dyadic windows toward 0.
  // In u the integrand is e^u f(e^u), smooth; the windows are handled in s.
  const Integrand g = [&f](double u) { return std::exp(u) * f(std::exp(u)); };
  double sum = 0.0, qerr = 0.0;
  const double u_hi0 = std::log(head_edge);
  double prev = -1.0, prev2 = -1.0;
  const int max_windows = 1060;
  for (int k = 0; k < max_windows; ++k) {
    const double u_hi = u_hi0 - k * std::log(2.0);
    const double u_lo = u_hi - std::log(2.0);
    double perr;
    const double iv =
        integrate_adaptive(g, u_lo, u_hi, 0.05 * tol * std::max(sum, 1.0),
                           &perr);
    sum += iv;
    qerr += perr;
    // window ratio tends to 2^{-(beta+1)} < 1; attach the geometric tail
    if (prev > 0.0 && iv > 0.0 && prev2 > 0.0) {
      const double r = iv / prev;
      const double r_prev = prev / prev2;
      if (r < 1.0 && std::fabs(r - r_prev) <= 1e-4 && k >= 4) {
        const double tail = iv * r / (1.0 - r);
        if (tail <= tol * std::max(sum, 1e-300) || k >= 60) {
          sum += tail;
          qerr += 1e-3 * tail;
          break;
        }
      }
    }
    if (iv == 0.0 && sum > 0.0 && k >= 4) break;
    if (iv == 0.0 && sum == 0.0 && k >= 40) break;
    prev2 = prev;
    prev = iv;
  }

  IntegralResult r;
  r.status = IntegralStatus::Finite;
  r.value = sum + tail_part.value;
  const double denom = std::max(r.value, 1e-300);
  r.rel_error_estimate =
      (qerr + tail_part.rel_error_estimate * tail_part.value) / denom;
  r.tail_exponent = tail_exponent;
  return r;
}

}  // namespace fgk
