#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "levyheat/measure.hpp"

using namespace levyheat;

namespace {

LevyMeasureSpec pure_stable_1d(double alpha) {
  RadialProfileSpec prof;
  prof.family = ProfileFamily::PureStable;
  prof.alpha = alpha;
  SphericalMeasureSpec sph;
  sph.kind = SphericalKind::Uniform;
  sph.gamma = 1.0;
  return LevyMeasureSpec::radial(1, prof, sph);
}

LevyMeasureSpec stable_log_1d(double alpha, double kappa, double beta) {
  RadialProfileSpec prof;
  prof.family = ProfileFamily::StableLog;
  prof.alpha = alpha;
  prof.kappa = kappa;
  prof.beta = beta;
  SphericalMeasureSpec sph;
  sph.kind = SphericalKind::Uniform;
  sph.gamma = 1.0;
  return LevyMeasureSpec::radial(1, prof, sph);
}

VectorXd vec1(double x) {
  VectorXd v(1);
  v[0] = x;
  return v;
}

// Fixed-step Simpson oracle, independent of the Gauss-Kronrod machinery.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// H(r) for a two-sided radial profile, via exponential substitution.
double concentration_oracle(const std::function<double(double)>& Q, double r) {
  // ∫_0^r (s/r)^2 Q(s) ds,  s = r e^{-x}
  auto inner = [&](double x) {
    const double s = r * std::exp(-x);
    return (s * s / (r * r)) * Q(s) * s;
  };
  // ∫_r^∞ Q(s) ds,  s = r e^{x}
  auto outer = [&](double x) {
    const double s = r * std::exp(x);
    return Q(s) * s;
  };
  return 2.0 * (simpson(inner, 0.0, 90.0, 300000) + simpson(outer, 0.0, 160.0, 300000));
}

}  // namespace

TEST_CASE("tail mass closed forms") {
  LevyMeasureSpec cauchy = pure_stable_1d(1.0);
  CHECK(tail_mass(cauchy, 1.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(tail_mass(cauchy, 2.0) == doctest::Approx(1.0).epsilon(1e-10));

  LevyMeasureSpec dy = LevyMeasureSpec::discrete_dyadic(1, 1.0, 1.0);
  CHECK(tail_mass(dy, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  // strict inequality: atoms exactly at radius r are excluded
  CHECK(tail_mass(dy, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

  // vanishing tail and monotonicity
  CHECK(tail_mass(cauchy, 1e6) < 1e-5);
  double prev = tail_mass(cauchy, 1e-3);
  for (double r : {1e-2, 1e-1, 1.0, 1e1, 1e2}) {
    const double cur = tail_mass(cauchy, r);
    CHECK(cur <= prev * (1.0 + 1e-12));
    prev = cur;
  }
}

TEST_CASE("concentration function H") {
  LevyMeasureSpec cauchy = pure_stable_1d(1.0);
  for (double r : {0.1, 1.0, 10.0}) {
    CHECK(concentration_H(cauchy, r) == doctest::Approx(4.0 / r).epsilon(1e-9));
  }

  // independent Simpson oracle for the stable-log family
  LevyMeasureSpec sl = stable_log_1d(1.2, 1.0, 0.5);
  RadialProfileSpec prof = sl.profile;
  auto Q = [prof](double s) { return prof(s); };
  for (double r : {0.3, 1.0, 5.0}) {
    CHECK(concentration_H(sl, r) ==
          doctest::Approx(concentration_oracle(Q, r)).epsilon(1e-8));
  }

  // split-route identity at 1e-8: H = tail + r^{-2} ∫_{|y|<=r} |y|^2 ν
  for (double r : {0.05, 0.9, 40.0}) {
    const double split = tail_mass(sl, r) + second_moment_below(sl, r) / (r * r);
    CHECK(concentration_H(sl, r) == doctest::Approx(split).epsilon(1e-8));
  }

  // monotone decrease and divergence at small scales
  double prev = concentration_H(sl, 1e-6);
  CHECK(prev > 1e3 * concentration_H(sl, 1.0));
  for (double r : {1e-4, 1e-2, 1.0, 1e2}) {
    const double cur = concentration_H(sl, r);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("drift correction") {
  LevyMeasureSpec cauchy = pure_stable_1d(1.0);
  CHECK(drift_correction(cauchy, 0.37)[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(drift_correction(cauchy, 5.0)[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(drift_correction(cauchy, 1.0)[0] == doctest::Approx(0.0));

  // one-sided stable ν(dy) = 1_{y>0} y^{-2} dy: b_{1/2} = -log 2
  auto g = [](const VectorXd& y) { return y[0] > 0.0 ? std::pow(y[0], -2.0) : 0.0; };
  LevyMeasureSpec onesided = LevyMeasureSpec::ac(1, g, false);
  CHECK(drift_correction(onesided, 0.5)[0] == doctest::Approx(-std::log(2.0)).epsilon(1e-10));

  // reflection oddness: mirrored measure negates b_r - b
  auto g_ref = [](const VectorXd& y) { return y[0] < 0.0 ? std::pow(-y[0], -2.0) : 0.0; };
  LevyMeasureSpec mirrored = LevyMeasureSpec::ac(1, g_ref, false);
  for (double r : {0.2, 0.5, 3.0}) {
    CHECK(drift_correction(mirrored, r)[0] ==
          doctest::Approx(-drift_correction(onesided, r)[0]).epsilon(1e-10));
  }

  // dyadic: symmetric atoms leave the drift untouched at every radius
  LevyMeasureSpec dy = LevyMeasureSpec::discrete_dyadic(1, 1.0, 1.0);
  CHECK(drift_correction(dy, 0.1)[0] == doctest::Approx(0.0));
}

TEST_CASE("measure of balls and boxes") {
  LevyMeasureSpec cauchy = pure_stable_1d(1.0);
  // ν(B(2, 1/2)) = ∫_{3/2}^{5/2} s^{-2} ds = 4/15
  CHECK(measure_of(cauchy, BallSet{vec1(2.0), 0.5}) ==
        doctest::Approx(4.0 / 15.0).epsilon(1e-10));
  // same set as a box
  CHECK(measure_of(cauchy, BoxSet{vec1(1.5), vec1(2.5)}) ==
        doctest::Approx(4.0 / 15.0).epsilon(1e-10));
  // sets reaching the origin carry infinite mass by convention
  CHECK(std::isinf(measure_of(cauchy, BallSet{vec1(0.5), 0.5})));

  LevyMeasureSpec dy = LevyMeasureSpec::discrete_dyadic(1, 1.0, 1.0);
  // atom at 1/2 has mass 2
  CHECK(measure_of(dy, BallSet{vec1(0.5), 1e-3}) == doctest::Approx(2.0));
  // (0.75, 2.25) catches atoms at 1 and 2: masses 1 + 1/2
  CHECK(measure_of(dy, BallSet{vec1(1.5), 0.75}) == doctest::Approx(1.5));
  // (0.1, 2.1) also catches 1/2, 1/4, 1/8 with masses 2, 4, 8
  CHECK(measure_of(dy, BallSet{vec1(1.1), 1.0}) == doctest::Approx(15.5));
}

TEST_CASE("spec validation") {
  CHECK_NOTHROW(pure_stable_1d(0.5).validate());
  CHECK_NOTHROW(stable_log_1d(1.2, 1.0, 0.5).validate());
  CHECK_NOTHROW(LevyMeasureSpec::discrete_dyadic(1, 1.0, 1.0).validate());

  // finite total mass rejected
  RadialProfileSpec finite_prof;
  finite_prof.family = ProfileFamily::Custom;
  finite_prof.custom = [](double s) { return std::pow(1.0 + s, -3.0); };
  SphericalMeasureSpec sph;
  sph.kind = SphericalKind::Uniform;
  sph.gamma = 1.0;
  CHECK_THROWS_AS(LevyMeasureSpec::radial(1, finite_prof, sph).validate(),
                  std::invalid_argument);

  // dyadic constraint 0 < beta < 2 kappa
  CHECK_THROWS_AS(LevyMeasureSpec::discrete_dyadic(1, 2.0, 1.0).validate(),
                  std::invalid_argument);

  // stable-log parameter window
  RadialProfileSpec bad;
  bad.family = ProfileFamily::StableLog;
  bad.alpha = 1.0;
  bad.kappa = 2.0;
  bad.beta = 0.6;  // kappa*beta = 1.2 >= alpha
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  // atoms must be unit and span the space
  SphericalMeasureSpec atoms;
  atoms.kind = SphericalKind::Atoms;
  atoms.gamma = 1.0;
  atoms.directions = {vec1(2.0)};
  atoms.weights = {1.0};
  CHECK_THROWS_AS(atoms.validate(1), std::invalid_argument);

  SphericalMeasureSpec planar;
  planar.kind = SphericalKind::Atoms;
  planar.gamma = 1.0;
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(2);
  e1[0] = 1.0;
  planar.directions = {e1, -e1};
  planar.weights = {1.0, 1.0};
  CHECK_THROWS_AS(planar.validate(2), std::invalid_argument);
}

TEST_CASE("profile bound checker (eq. nu_estim)") {
  LevyMeasureSpec cauchy = pure_stable_1d(1.0);
  ScalarFn f = default_profile_bound_fn(cauchy, 1.0);  // s^0 · s^{-2}
  CheckerGrid grid;
  grid.n_radii = 24;
  grid.n_centers = 24;
  AssumptionReport rep = check_profile_bound(cauchy, f, 1.0, grid);
  CHECK(rep.holds);
  CHECK(rep.fitted_constant >= 0.5);       // witnessed by A = (1,2)
  CHECK(rep.fitted_constant < 50.0);
  CHECK(rep.refined_constant >= rep.fitted_constant);

  LevyMeasureSpec dy = LevyMeasureSpec::discrete_dyadic(1, 1.0, 1.0);
  ScalarFn fdy = default_profile_bound_fn(dy, 0.0);  // s^{-1}
  AssumptionReport rep_dy = check_profile_bound(dy, fdy, 0.0, grid);
  CHECK(rep_dy.holds);
  CHECK(rep_dy.fitted_constant >= 0.9);
}

TEST_CASE("technical assumption checker (eq. tech_assumpt)") {
  LevyMeasureSpec cauchy = pure_stable_1d(1.0);
  ScalarFn f = default_profile_bound_fn(cauchy, 1.0);
  auto psi = [](double r) { return M_PI * r; };  // exact symbol scale for alpha = 1

  // single-point grid pins the spec example: LHS(1,1) = 8/3, ratio = 8/(3π)
  CheckerGrid pin;
  pin.n_radii = 1;
  pin.r_min = pin.r_max = 1.0;
  pin.n_centers = 1;
  pin.center_min = pin.center_max = 1.0;
  AssumptionReport pinned = check_tech_assumption(cauchy, f, psi, pin);
  CHECK(pinned.fitted_constant == doctest::Approx(8.0 / (3.0 * M_PI)).epsilon(1e-8));

  CheckerGrid grid;
  grid.n_radii = 16;
  grid.n_centers = 16;
  grid.center_min = 1e-2;
  grid.center_max = 1e2;
  AssumptionReport rep = check_tech_assumption(cauchy, f, psi, grid);
  CHECK(rep.holds);
  CHECK(rep.fitted_constant >= 8.0 / (3.0 * M_PI) * 0.999);
  CHECK(std::isfinite(rep.refined_constant));
}

TEST_CASE("lower measure bound checker (eq. nu_est_below)") {
  LevyMeasureSpec cauchy = pure_stable_1d(1.0);
  ScalarFn f = default_profile_bound_fn(cauchy, 1.0);
  std::vector<VectorXd> dirs = {vec1(1.0), vec1(-1.0)};
  CheckerGrid grid;
  grid.n_radii = 16;
  grid.n_centers = 16;
  AssumptionReport rep = check_lower_measure_bound(cauchy, f, 1.0, dirs, grid);
  CHECK(rep.holds);
  CHECK(rep.fitted_constant > 0.0);
  CHECK(rep.refined_constant > 0.0);

  LevyMeasureSpec dy = LevyMeasureSpec::discrete_dyadic(1, 1.0, 1.0);
  ScalarFn fdy = default_profile_bound_fn(dy, 0.0);
  AssumptionReport rep_dy = check_lower_measure_bound(dy, fdy, 0.0, dirs, grid);
  CHECK(rep_dy.holds);
  CHECK(rep_dy.fitted_constant > 0.0);
}
