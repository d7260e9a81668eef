#ifndef LEVYHEAT_QUADRATURE_HPP
#define LEVYHEAT_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <string>

namespace levyheat {

using ScalarFn = std::function<double(double)>;

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 4000;

  QuadOptions scaled(double factor) const {
    QuadOptions o = *this;
    o.abs_tol *= factor;
    o.rel_tol *= factor;
    return o;
  }
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Thrown by the *_or_throw wrappers when the requested tolerance was not
/// reached; carries the absolute error estimate that was achieved.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_abs, double achieved_rel)
      : std::runtime_error(what + " (achieved abs=" + std::to_string(achieved_abs) +
                           ", rel=" + std::to_string(achieved_rel) + ")"),
        achieved_abs_(achieved_abs),
        achieved_rel_(achieved_rel) {}
  double achieved_abs() const { return achieved_abs_; }
  double achieved_rel() const { return achieved_rel_; }

 private:
  double achieved_abs_;
  double achieved_rel_;
};

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]. Seeds geometric panels
/// when b/a is large so that integrands living on a log scale are resolved
/// before the first error estimate.
QuadResult integrate(const ScalarFn& f, double a, double b, const QuadOptions& opts = {});

/// ∫_a^∞ f, a > 0, via s = a·e^v and v = u/(1-u) mapped onto (0,1).
QuadResult integrate_from(const ScalarFn& f, double a, const QuadOptions& opts = {});

/// ∫_0^b f with an integrable singularity at 0 allowed, via s = b·e^{-v}.
QuadResult integrate_to(const ScalarFn& f, double b, const QuadOptions& opts = {});

double integrate_or_throw(const ScalarFn& f, double a, double b, const QuadOptions& opts = {});
double integrate_from_or_throw(const ScalarFn& f, double a, const QuadOptions& opts = {});
double integrate_to_or_throw(const ScalarFn& f, double b, const QuadOptions& opts = {});

/// ∫_a^∞ cos(u s) q(s) ds for u > 0, a > 0. Sums half-period panels between
/// consecutive zeros of the cosine and accelerates the alternating series by
/// iterated averaging, so q only needs to be integrable and slowly varying at
/// infinity, not absolutely integrable against an oscillation count.
QuadResult fourier_cos_from(const ScalarFn& q, double u, double a, const QuadOptions& opts = {});
QuadResult fourier_sin_from(const ScalarFn& q, double u, double a, const QuadOptions& opts = {});

/// ∫_0^∞ (1 - cos(u s)) q(s) ds, the radial part of Re Φ for a profile q.
double one_minus_cos_transform(const ScalarFn& q, double u, const QuadOptions& opts = {});

/// ∫_0^r (1 - cos(u s)) q(s) ds (small-jump truncation of the above).
double one_minus_cos_transform_trunc(const ScalarFn& q, double u, double r,
                                     const QuadOptions& opts = {});

/// ∫_0^∞ (sin(u s) - u s·1_{s<cutoff}) q(s) ds, u > 0; the compensated sine
/// transform giving the non-drift part of Im Φ. Extend to u < 0 by oddness.
double compensated_sin_transform(const ScalarFn& q, double u, double cutoff = 1.0,
                                 const QuadOptions& opts = {});

/// ∫_0^r (sin(u s) - u s) q(s) ds, the fully compensated truncated sine.
double sin_minus_linear_transform_trunc(const ScalarFn& q, double u, double r,
                                        const QuadOptions& opts = {});

/// Root of a strictly increasing function by bisection on [lo, hi];
/// the bracket is grown geometrically if it does not straddle the target.
double invert_increasing(const ScalarFn& f, double target, double lo, double hi,
                         double rel_tol = 1e-12);

}  // namespace levyheat

#endif
