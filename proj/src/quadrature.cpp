#include "levyheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace levyheat {

namespace {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value;
  double error;
  double resasc;
};

// One GK15 evaluation on [a, b]; error heuristic follows QUADPACK.
PanelEstimate gk15(const ScalarFn& f, double a, double b, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  const double fc = f(center);
  evals += 15;

  double result_g = kWg[3] * fc;
  double result_k = kWgk[7] * fc;
  fv[14] = fc;
  for (int j = 0; j < 7; ++j) {
    const double x = half * kXgk[j];
    const double f1 = f(center - x);
    const double f2 = f(center + x);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    result_k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
  }

  const double mean = result_k * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }
  resasc *= std::abs(half);

  const double value = result_k * half;
  double err = std::abs((result_k - result_g) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return {value, err, resasc};
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& other) const { return error < other.error; }
};

QuadResult adaptive(const ScalarFn& f, const std::vector<double>& breakpoints,
                    const QuadOptions& opts) {
  QuadResult res;
  std::priority_queue<Interval> queue;
  double total = 0.0, total_err = 0.0;
  int n_intervals = 0;

  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b > a)) continue;
    PanelEstimate e = gk15(f, a, b, res.evaluations);
    if (!std::isfinite(e.value)) {
      res.value = e.value;
      res.error = std::numeric_limits<double>::infinity();
      return res;
    }
    queue.push({a, b, e.value, e.error});
    total += e.value;
    total_err += e.error;
    ++n_intervals;
  }

  auto target = [&]() { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  while (total_err > target() && n_intervals < opts.max_intervals && !queue.empty()) {
    Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval at floating resolution; accept its contribution as-is
      total_err -= worst.error;
      continue;
    }
    PanelEstimate left = gk15(f, worst.a, mid, res.evaluations);
    PanelEstimate right = gk15(f, mid, worst.b, res.evaluations);
    if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
      res.value = total;
      res.error = std::numeric_limits<double>::infinity();
      return res;
    }
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.value, left.error});
    queue.push({mid, worst.b, right.value, right.error});
    ++n_intervals;
  }

  res.value = total;
  res.error = total_err;
  res.converged = total_err <= target() && std::isfinite(total) && std::abs(total) < 1e250;
  return res;
}

std::vector<double> log_seeded_breakpoints(double a, double b) {
  std::vector<double> pts{a};
  if (a > 0.0 && b / a > 16.0) {
    // geometric refinement toward the left endpoint
    double step = std::min(16.0, std::pow(b / a, 1.0 / 48.0));
    for (double x = a * step; x < b / step; x *= step) pts.push_back(x);
  }
  pts.push_back(b);
  return pts;
}

// maps (0,1) -> (0,∞), u -> u/(1-u), with derivative 1/(1-u)^2
inline double rational_stretch(double u) { return u / (1.0 - u); }
inline double rational_stretch_deriv(double u) { return 1.0 / ((1.0 - u) * (1.0 - u)); }

// cancellation-free 1 - cos(x)
inline double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

ScalarFn guard_nonfinite(ScalarFn g) {
  return [g = std::move(g)](double u) {
    const double v = g(u);
    return std::isfinite(v) ? v : 0.0;
  };
}

QuadResult check_result(QuadResult r) { return r; }

double value_or_throw(const QuadResult& r, const char* what) {
  if (!r.converged) {
    const double rel = r.error / std::max(std::abs(r.value), 1e-300);
    throw QuadratureError(what, r.error, rel);
  }
  return r.value;
}

// Signed integral of trig(u s)·q(s) over consecutive half-period panels
// starting at `a`, accelerated by an iterated-averaging (Euler) table.
QuadResult oscillatory_tail(const ScalarFn& q, double u, double a, bool use_sin,
                            const QuadOptions& opts) {
  QuadResult res;
  if (u <= 0.0 || a <= 0.0) throw std::invalid_argument("oscillatory_tail: need u > 0, a > 0");

  auto f = [&](double s) { return (use_sin ? std::sin(u * s) : std::cos(u * s)) * q(s); };

  // first zero of the oscillation at or beyond a
  const double pi = M_PI;
  const double phase0 = use_sin ? pi : pi / 2.0;
  double k0 = std::ceil((u * a - phase0) / pi);
  if (k0 < 0.0) k0 = 0.0;
  double z = (phase0 + k0 * pi) / u;

  QuadOptions panel_opts = opts;
  panel_opts.max_intervals = 64;

  double head = 0.0;
  if (z > a) {
    QuadResult h = adaptive(f, log_seeded_breakpoints(a, z), panel_opts);
    head = h.value;
    res.evaluations += h.evaluations;
  }

  // Half-period panel integrals; iterated averaging of the partial sums
  // accelerates the alternating series.
  constexpr int kMaxPanels = 96;
  std::vector<double> partial;
  partial.reserve(kMaxPanels);
  double running = 0.0;
  double best = 0.0, best_err = std::numeric_limits<double>::infinity();
  double last_diag = std::numeric_limits<double>::quiet_NaN();
  const double width = pi / u;

  for (int j = 0; j < kMaxPanels; ++j) {
    const double p0 = z + j * width;
    const double p1 = p0 + width;
    PanelEstimate pe = gk15(f, p0, p1, res.evaluations);
    running += pe.value;
    partial.push_back(running);

    if (partial.size() >= 6 && partial.size() % 2 == 0) {
      std::vector<double> row = partial;
      while (row.size() > 1) {
        for (size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
      }
      const double diag = row[0];
      const double err =
          std::isnan(last_diag) ? std::abs(diag - running) : std::abs(diag - last_diag);
      last_diag = diag;
      if (err < best_err) {
        best = diag;
        best_err = err;
      }
      const double scale = std::max(std::abs(head + best), opts.abs_tol);
      if (j >= 9 && best_err <= std::max(opts.abs_tol, opts.rel_tol * scale)) break;
    }
  }

  res.value = head + best;
  res.error = best_err;
  res.converged =
      best_err <=
      std::max(opts.abs_tol * 10.0,
               10.0 * opts.rel_tol * std::max(std::abs(res.value), opts.abs_tol));
  return res;
}

}  // namespace

QuadResult integrate(const ScalarFn& f, double a, double b, const QuadOptions& opts) {
  if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
  if (a == b) return {0.0, 0.0, 0, true};
  return check_result(adaptive(f, log_seeded_breakpoints(a, b), opts));
}

QuadResult integrate_from(const ScalarFn& f, double a, const QuadOptions& opts) {
  if (!(a > 0.0)) throw std::invalid_argument("integrate_from: need a > 0");
  ScalarFn g = guard_nonfinite([f, a](double u) {
    const double s = a * std::exp(rational_stretch(u));
    return f(s) * s * rational_stretch_deriv(u);
  });
  return adaptive(g, {0.0, 0.25, 0.5, 0.75, 0.9, 1.0}, opts);
}

QuadResult integrate_to(const ScalarFn& f, double b, const QuadOptions& opts) {
  if (!(b > 0.0)) throw std::invalid_argument("integrate_to: need b > 0");
  ScalarFn g = guard_nonfinite([f, b](double u) {
    const double s = b * std::exp(-rational_stretch(u));
    return f(s) * s * rational_stretch_deriv(u);
  });
  return adaptive(g, {0.0, 0.25, 0.5, 0.75, 0.9, 1.0}, opts);
}

double integrate_or_throw(const ScalarFn& f, double a, double b, const QuadOptions& opts) {
  return value_or_throw(integrate(f, a, b, opts), "integrate did not converge");
}

double integrate_from_or_throw(const ScalarFn& f, double a, const QuadOptions& opts) {
  return value_or_throw(integrate_from(f, a, opts), "integrate_from did not converge");
}

double integrate_to_or_throw(const ScalarFn& f, double b, const QuadOptions& opts) {
  return value_or_throw(integrate_to(f, b, opts), "integrate_to did not converge");
}

QuadResult fourier_cos_from(const ScalarFn& q, double u, double a, const QuadOptions& opts) {
  return oscillatory_tail(q, u, a, false, opts);
}

QuadResult fourier_sin_from(const ScalarFn& q, double u, double a, const QuadOptions& opts) {
  return oscillatory_tail(q, u, a, true, opts);
}

double one_minus_cos_transform(const ScalarFn& q, double u, const QuadOptions& opts) {
  if (!(u > 0.0)) {
    if (u == 0.0) return 0.0;
    throw std::invalid_argument("one_minus_cos_transform: need u >= 0");
  }
  const double A = 0.5 * M_PI / u;  // first zero of cos(u s)
  // (1 - cos(u s)) vanishes quadratically at 0, so the mapped integral is benign.
  const double head = integrate_to_or_throw(
      [&](double s) { return one_minus_cos(u * s) * q(s); }, A, opts);
  const double tail_mass = integrate_from_or_throw(q, A, opts);
  const double osc = value_or_throw(fourier_cos_from(q, u, A, opts),
                                    "oscillatory cosine tail did not converge");
  return head + tail_mass - osc;
}

double one_minus_cos_transform_trunc(const ScalarFn& q, double u, double r,
                                     const QuadOptions& opts) {
  if (!(r > 0.0)) return 0.0;
  if (u == 0.0) return 0.0;
  u = std::abs(u);
  const double A = 0.5 * M_PI / u;
  auto integrand = [&](double s) { return one_minus_cos(u * s) * q(s); };
  if (r <= A) return integrate_to_or_throw(integrand, r, opts);
  const double head = integrate_to_or_throw(integrand, A, opts);
  const double mass = integrate_or_throw(q, A, r, opts);
  // cos part over [A, r] as a difference of two accelerated tails
  const double osc_a = value_or_throw(fourier_cos_from(q, u, A, opts), "cos tail at A");
  const double osc_r = value_or_throw(fourier_cos_from(q, u, r, opts), "cos tail at r");
  return head + mass - (osc_a - osc_r);
}

double compensated_sin_transform(const ScalarFn& q, double u, double cutoff,
                                 const QuadOptions& opts) {
  if (u == 0.0) return 0.0;
  const double sign = u > 0.0 ? 1.0 : -1.0;
  u = std::abs(u);
  const double B = M_PI / u;  // first zero of sin(u s)
  const double c = std::min(cutoff, B);
  // sin(u s) - u s vanishes cubically at 0
  double total = integrate_to_or_throw(
      [&](double s) { return (std::sin(u * s) - u * s) * q(s); }, c, opts);
  if (c < cutoff) {
    total -= u * integrate_or_throw([&](double s) { return s * q(s); }, c, cutoff, opts);
  }
  total += value_or_throw(fourier_sin_from(q, u, c, opts), "sine tail did not converge");
  return sign * total;
}

double sin_minus_linear_transform_trunc(const ScalarFn& q, double u, double r,
                                        const QuadOptions& opts) {
  if (u == 0.0 || !(r > 0.0)) return 0.0;
  const double sign = u > 0.0 ? 1.0 : -1.0;
  u = std::abs(u);
  const double B = M_PI / u;
  const double c = std::min(r, B);
  double total = integrate_to_or_throw(
      [&](double s) { return (std::sin(u * s) - u * s) * q(s); }, c, opts);
  if (c < r) {
    total -= u * integrate_or_throw([&](double s) { return s * q(s); }, c, r, opts);
    const double osc_c = value_or_throw(fourier_sin_from(q, u, c, opts), "sin tail at c");
    const double osc_r = value_or_throw(fourier_sin_from(q, u, r, opts), "sin tail at r");
    total += osc_c - osc_r;
  }
  return sign * total;
}

double invert_increasing(const ScalarFn& f, double target, double lo, double hi,
                         double rel_tol) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("invert_increasing: bad bracket");
  int guard = 0;
  while (f(lo) > target && guard++ < 2000) lo *= 0.5;
  guard = 0;
  while (f(hi) < target && guard++ < 2000) hi *= 2.0;
  if (f(lo) > target || f(hi) < target)
    throw std::domain_error("invert_increasing: target outside expandable bracket");
  // bisection in log scale
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= rel_tol * hi) break;
  }
  return std::sqrt(lo * hi);
}

}  // namespace levyheat
