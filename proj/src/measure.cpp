#include "levyheat/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace levyheat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sphere_surface_area(int d) {
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n <= 1) return {lo};
  std::vector<double> g(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  return g;
}

// midpoint-insertion refinement: the refined grid contains the original nodes
std::vector<double> refine_log_grid(const std::vector<double>& g) {
  std::vector<double> out;
  out.reserve(2 * g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    out.push_back(g[i]);
    if (i + 1 < g.size()) out.push_back(std::sqrt(g[i] * g[i + 1]));
  }
  return out;
}

// Interval of ray parameters {s > 0 : s·dir ∈ A}; empty → lo > hi.
struct RayInterval {
  double lo = 1.0;
  double hi = 0.0;
  bool empty() const { return !(hi > lo); }
};

RayInterval ray_hits_ball(const VectorXd& dir, const BallSet& ball) {
  const double b = dir.dot(ball.center);
  const double c = ball.center.squaredNorm() - ball.radius * ball.radius;
  const double disc = b * b - c;
  if (disc <= 0.0) return {};
  const double root = std::sqrt(disc);
  RayInterval iv{b - root, b + root};
  iv.lo = std::max(iv.lo, 0.0);
  return iv;
}

RayInterval ray_hits_box(const VectorXd& dir, const BoxSet& box) {
  RayInterval iv{0.0, kInf};
  for (int i = 0; i < dir.size(); ++i) {
    const double d = dir[i];
    if (d == 0.0) {
      if (box.lo[i] > 0.0 || box.hi[i] < 0.0) return {};
      continue;
    }
    double t0 = box.lo[i] / d, t1 = box.hi[i] / d;
    if (t0 > t1) std::swap(t0, t1);
    iv.lo = std::max(iv.lo, t0);
    iv.hi = std::min(iv.hi, t1);
  }
  return iv;
}

RayInterval ray_hits(const VectorXd& dir, const BorelSet& set) {
  if (std::holds_alternative<BallSet>(set)) return ray_hits_ball(dir, std::get<BallSet>(set));
  return ray_hits_box(dir, std::get<BoxSet>(set));
}

bool point_in(const VectorXd& y, const BorelSet& set) {
  if (std::holds_alternative<BallSet>(set)) {
    const auto& b = std::get<BallSet>(set);
    return (y - b.center).norm() < b.radius;
  }
  const auto& b = std::get<BoxSet>(set);
  for (int i = 0; i < y.size(); ++i)
    if (y[i] < b.lo[i] || y[i] > b.hi[i]) return false;
  return true;
}

VectorXd unit(double x) {
  VectorXd v(1);
  v[0] = x;
  return v;
}

}  // namespace

bool has_radial_decomposition(const LevyMeasureSpec& spec) {
  return spec.kind == MeasureKind::RadialProfile ||
         (spec.kind == MeasureKind::ACDensity && spec.dimension == 1);
}

RadialDecomposition radial_decomposition(const LevyMeasureSpec& spec) {
  RadialDecomposition view;
  view.dimension = spec.dimension;
  if (spec.kind == MeasureKind::RadialProfile) {
    const RadialProfileSpec& prof = spec.profile;
    ScalarFn q = [prof](double s) { return prof(s); };
    for (const auto& [dir, w] : spec.spherical.atom_list(spec.dimension))
      view.rays.push_back({dir, w, q});
    if (spec.dimension >= 2) {
      view.uniform_weight = spec.spherical.uniform_part(spec.dimension);
      view.uniform_q = q;
    }
    return view;
  }
  if (spec.kind == MeasureKind::ACDensity && spec.dimension == 1) {
    auto g = spec.ac_density;
    view.rays.push_back({unit(1.0), 1.0, [g](double s) { return g(unit(s)); }});
    view.rays.push_back({unit(-1.0), 1.0, [g](double s) { return g(unit(-s)); }});
    return view;
  }
  throw std::invalid_argument("radial decomposition unavailable for this measure kind");
}

namespace {

// dyadic helpers ------------------------------------------------------------

// largest n with 2^{-nκ} > r (atoms with |y| > r have indices ≤ this)
long dyadic_n_above(double r, double kappa) {
  const double x = -std::log2(r) / kappa;
  long n = static_cast<long>(std::floor(x));
  // strict inequality: an atom exactly at radius r is not counted
  if (std::pow(2.0, -static_cast<double>(n) * kappa) <= r) --n;
  return n;
}

double geometric_sum_down(double ratio_log2, long n_max) {
  // Σ_{n ≤ n_max} 2^{n·a} with a = ratio_log2 > 0
  const double a = ratio_log2;
  return std::pow(2.0, static_cast<double>(n_max) * a) / (1.0 - std::pow(2.0, -a));
}

double geometric_sum_up(double ratio_log2, long n_min) {
  // Σ_{n ≥ n_min} 2^{n·a} with a = ratio_log2 < 0
  const double a = ratio_log2;
  return std::pow(2.0, static_cast<double>(n_min) * a) / (1.0 - std::pow(2.0, a));
}

// angular trapezoid on S^1
template <typename Fn>
double angular_average_d2(const Fn& fn, int n = 256) {
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double phi = 2.0 * M_PI * j / n;
    acc += fn(phi);
  }
  return acc / n;
}

VectorXd circle_dir(double phi) {
  VectorXd v(2);
  v[0] = std::cos(phi);
  v[1] = std::sin(phi);
  return v;
}

double ray_measure(const ScalarFn& q, const RayInterval& iv, const QuadOptions& opts) {
  if (iv.empty()) return 0.0;
  if (iv.lo <= 0.0) return kInf;  // every built-in ray profile has infinite mass at 0
  if (!std::isfinite(iv.hi)) return integrate_from_or_throw(q, iv.lo, opts);
  return integrate_or_throw(q, iv.lo, iv.hi, opts);
}

}  // namespace

// --------------------------------------------------------------------------
// RadialProfileSpec
// --------------------------------------------------------------------------

double RadialProfileSpec::operator()(double s) const {
  switch (family) {
    case ProfileFamily::PureStable:
      return std::pow(s, -1.0 - alpha);
    case ProfileFamily::StableLog:
      return std::pow(s, -1.0 - alpha) *
             std::pow(std::log1p(std::pow(s, -kappa)), -beta);
    case ProfileFamily::TemperedPoly:
      return std::pow(s, -1.0 - alpha) * std::pow(1.0 + s, kappa) *
             std::exp(-m * std::pow(s, beta));
    case ProfileFamily::Custom:
      return custom(s);
  }
  return 0.0;
}

void RadialProfileSpec::validate() const {
  if (family == ProfileFamily::Custom) {
    if (!custom) throw std::invalid_argument("custom profile function missing");
    // positivity, monotonicity and a finite doubling constant on a sampled grid
    double prev = kInf;
    for (double s : log_grid(1e-6, 1e6, 97)) {
      const double v = custom(s);
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("custom profile must be positive and finite");
      if (v > prev * (1.0 + 1e-9))
        throw std::invalid_argument("custom profile must be nonincreasing");
      const double v2 = custom(2.0 * s);
      if (!(v2 > 0.0) || !std::isfinite(v / v2))
        throw std::invalid_argument("custom profile violates the doubling condition");
      prev = v;
    }
    return;
  }
  if (!(alpha > 0.0) || alpha > 2.0) throw std::invalid_argument("profile: alpha must be in (0,2]");
  if (family == ProfileFamily::StableLog) {
    if (!(kappa > 0.0)) throw std::invalid_argument("stable_log: kappa must be > 0");
    if (!(alpha > kappa * beta) || !(kappa * beta > alpha - 2.0))
      throw std::invalid_argument("stable_log: need alpha > kappa*beta > alpha - 2");
    if (alpha == 2.0 && !(beta > 1.0))
      throw std::invalid_argument("stable_log: alpha = 2 requires beta > 1");
  }
  if (family == ProfileFamily::TemperedPoly) {
    if (m < 0.0) throw std::invalid_argument("tempered: m must be >= 0");
    if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("tempered: beta must be in (0,1]");
    if (!(alpha < 2.0)) throw std::invalid_argument("tempered: alpha must be in (0,2)");
    if (kappa > 1.0 + alpha) throw std::invalid_argument("tempered: kappa must be <= 1 + alpha");
    if (m == 0.0 && !(kappa < alpha))
      throw std::invalid_argument("tempered: m = 0 requires kappa < alpha");
  }
}

std::string RadialProfileSpec::describe() const {
  std::ostringstream os;
  switch (family) {
    case ProfileFamily::PureStable:
      os << "stable(alpha=" << alpha << ")";
      break;
    case ProfileFamily::StableLog:
      os << "stable_log(alpha=" << alpha << ", kappa=" << kappa << ", beta=" << beta << ")";
      break;
    case ProfileFamily::TemperedPoly:
      os << "tempered(alpha=" << alpha << ", kappa=" << kappa << ", beta=" << beta
         << ", m=" << m << ")";
      break;
    case ProfileFamily::Custom:
      os << "custom";
      break;
  }
  return os.str();
}

// --------------------------------------------------------------------------
// SphericalMeasureSpec
// --------------------------------------------------------------------------

void SphericalMeasureSpec::validate(int d) const {
  if (gamma < 1.0 || gamma > d)
    throw std::invalid_argument("spherical: gamma must be in [1, d]");
  if (kind != SphericalKind::Uniform) {
    if (directions.empty() || directions.size() != weights.size())
      throw std::invalid_argument("spherical: atoms need matching directions and weights");
    Eigen::MatrixXd dm(d, static_cast<int>(directions.size()));
    for (size_t k = 0; k < directions.size(); ++k) {
      if (directions[k].size() != d)
        throw std::invalid_argument("spherical: direction dimension mismatch");
      if (std::abs(directions[k].norm() - 1.0) > 1e-12)
        throw std::invalid_argument("spherical: atom directions must be unit vectors");
      if (!(weights[k] > 0.0)) throw std::invalid_argument("spherical: weights must be > 0");
      dm.col(static_cast<int>(k)) = directions[k];
    }
    if (kind == SphericalKind::Atoms) {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(dm);
      if (lu.rank() < d)
        throw std::invalid_argument("spherical: atom directions do not span R^d");
    }
  }
  if (!(total_mass(d) > 0.0) || !std::isfinite(total_mass(d)))
    throw std::invalid_argument("spherical: total mass must be positive and finite");
}

double SphericalMeasureSpec::uniform_part(int d) const {
  if (kind == SphericalKind::Atoms) return 0.0;
  return uniform_mass < 0.0 ? sphere_surface_area(d) : uniform_mass;
}

double SphericalMeasureSpec::total_mass(int d) const {
  double mass = uniform_part(d);
  if (kind != SphericalKind::Uniform)
    for (double w : weights) mass += w;
  return mass;
}

std::vector<std::pair<VectorXd, double>> SphericalMeasureSpec::atom_list(int d) const {
  std::vector<std::pair<VectorXd, double>> atoms;
  if (kind != SphericalKind::Uniform)
    for (size_t k = 0; k < directions.size(); ++k) atoms.emplace_back(directions[k], weights[k]);
  if (d == 1 && kind != SphericalKind::Atoms) {
    // S^0 is two points; the uniform part is itself atomic
    const double half = 0.5 * uniform_part(1);
    atoms.emplace_back(unit(1.0), half);
    atoms.emplace_back(unit(-1.0), half);
  }
  return atoms;
}

bool SphericalMeasureSpec::symmetric(int d) const {
  if (kind == SphericalKind::Uniform) return true;
  for (size_t k = 0; k < directions.size(); ++k) {
    bool matched = false;
    for (size_t j = 0; j < directions.size(); ++j) {
      if ((directions[k] + directions[j]).norm() < 1e-12 &&
          std::abs(weights[k] - weights[j]) < 1e-12 * (weights[k] + weights[j])) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  (void)d;
  return true;
}

// --------------------------------------------------------------------------
// LevyMeasureSpec
// --------------------------------------------------------------------------

LevyMeasureSpec LevyMeasureSpec::radial(int d, RadialProfileSpec profile,
                                        SphericalMeasureSpec sph, VectorXd b) {
  LevyMeasureSpec spec;
  spec.kind = MeasureKind::RadialProfile;
  spec.dimension = d;
  spec.profile = std::move(profile);
  spec.spherical = std::move(sph);
  spec.drift = b.size() ? std::move(b) : VectorXd::Zero(d);
  return spec;
}

LevyMeasureSpec LevyMeasureSpec::discrete_dyadic(int d, double beta, double kappa) {
  LevyMeasureSpec spec;
  spec.kind = MeasureKind::DiscreteDyadic;
  spec.dimension = d;
  spec.dyadic = {beta, kappa};
  spec.drift = VectorXd::Zero(d);
  return spec;
}

LevyMeasureSpec LevyMeasureSpec::ac(int d, std::function<double(const VectorXd&)> g,
                                    bool symmetric, VectorXd b) {
  LevyMeasureSpec spec;
  spec.kind = MeasureKind::ACDensity;
  spec.dimension = d;
  spec.ac_density = std::move(g);
  spec.ac_symmetric = symmetric;
  spec.drift = b.size() ? std::move(b) : VectorXd::Zero(d);
  return spec;
}

bool LevyMeasureSpec::symmetric() const {
  switch (kind) {
    case MeasureKind::RadialProfile:
      return spherical.symmetric(dimension);
    case MeasureKind::DiscreteDyadic:
      return true;
    case MeasureKind::ACDensity:
      return ac_symmetric;
  }
  return false;
}

ScalarFn LevyMeasureSpec::radial_q() const {
  if (kind == MeasureKind::RadialProfile) {
    RadialProfileSpec prof = profile;
    return [prof](double s) { return prof(s); };
  }
  if (kind == MeasureKind::ACDensity && dimension == 1) {
    auto g = ac_density;
    return [g](double s) { return g(unit(s)) + g(unit(-s)); };
  }
  throw std::invalid_argument("radial_q: no scalar radial profile for this spec");
}

std::vector<DyadicAtom> LevyMeasureSpec::dyadic_atoms(double r_lo, double r_hi,
                                                      double tail_tol) const {
  if (kind != MeasureKind::DiscreteDyadic)
    throw std::invalid_argument("dyadic_atoms: not a dyadic measure");
  if (!(r_lo >= 0.0) || !(r_hi > r_lo)) throw std::invalid_argument("dyadic_atoms: bad band");

  const double beta = dyadic.beta, kappa = dyadic.kappa;
  std::vector<DyadicAtom> atoms;

  // radius 2^{-nκ} ∈ (r_lo, r_hi): indices n_lo ≤ n ≤ n_hi
  long n_lo = std::isfinite(r_hi)
                  ? static_cast<long>(std::ceil(-std::log2(r_hi) / kappa))
                  : std::numeric_limits<long>::min();
  long n_hi = r_lo > 0.0 ? dyadic_n_above(r_lo, kappa) : std::numeric_limits<long>::max();

  if (n_hi == std::numeric_limits<long>::max())
    throw std::invalid_argument("dyadic_atoms: unbounded small-jump enumeration (r_lo = 0)");

  if (n_lo == std::numeric_limits<long>::min()) {
    // big-jump side: truncate where the remaining geometric mass tail is negligible
    const double included = std::pow(2.0, static_cast<double>(n_hi) * beta);
    long n = n_hi;
    while (geometric_sum_down(beta, n - 1) > tail_tol * included && n > n_hi - 4000) --n;
    n_lo = n;
  }

  for (long n = n_lo; n <= n_hi; ++n) {
    const double radius = std::pow(2.0, -static_cast<double>(n) * kappa);
    const double mass = std::pow(2.0, static_cast<double>(n) * beta);
    for (int i = 0; i < dimension; ++i) {
      VectorXd e = VectorXd::Zero(dimension);
      e[i] = radius;
      atoms.push_back({e, mass});
      atoms.push_back({-e, mass});
    }
  }
  return atoms;
}

void LevyMeasureSpec::validate(const QuadOptions& opts) const {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (drift.size() != dimension) throw std::invalid_argument("drift dimension mismatch");

  if (kind == MeasureKind::DiscreteDyadic) {
    if (!(dyadic.beta > 0.0) || !(dyadic.beta < 2.0 * dyadic.kappa))
      throw std::invalid_argument("dyadic: need 0 < beta < 2 kappa");
    return;  // integrability and infinite mass hold by the geometric structure
  }

  if (kind == MeasureKind::RadialProfile) {
    profile.validate();
    spherical.validate(dimension);
  }
  if (kind == MeasureKind::ACDensity && !ac_density)
    throw std::invalid_argument("ac: density function missing");

  // ∫ (1 ∧ |y|²) ν(dy) < ∞ and ν(R^d) = ∞, checked numerically
  ScalarFn q;
  double mass_scale = 1.0;
  if (has_radial_decomposition(*this)) {
    q = radial_q();
    mass_scale = kind == MeasureKind::RadialProfile ? spherical.total_mass(dimension) : 1.0;
  } else {
    // AC in d ≥ 2: angularly averaged radial intensity
    auto g = ac_density;
    const int d = dimension;
    q = [g, d](double s) {
      return angular_average_d2([&](double phi) { return g(s * circle_dir(phi)); }, 64) *
             sphere_surface_area(d) * std::pow(s, d - 1);
    };
  }

  QuadOptions loose = opts;
  loose.abs_tol = std::max(loose.abs_tol, 1e-8);
  loose.rel_tol = std::max(loose.rel_tol, 1e-8);
  QuadResult m2 = integrate_to([&](double s) { return s * s * q(s); }, 1.0, loose);
  if (!m2.converged || !std::isfinite(m2.value))
    throw std::invalid_argument("levy measure: ∫_{|y|<1} |y|² ν(dy) does not converge");
  QuadResult tl = integrate_from(q, 1.0, loose);
  if (!tl.converged || !std::isfinite(tl.value))
    throw std::invalid_argument("levy measure: ν({|y| > 1}) does not converge");

  const double eps = 1e-8;
  QuadResult near = integrate(q, eps, 1.0, loose);
  if (!(mass_scale * near.value >= std::pow(eps, -0.1)))
    throw std::invalid_argument("levy measure: total mass appears finite (need ν(R^d) = ∞)");
}

std::string LevyMeasureSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case MeasureKind::RadialProfile:
      os << "radial " << profile.describe() << " d=" << dimension << " gamma=" << spherical.gamma;
      break;
    case MeasureKind::DiscreteDyadic:
      os << "dyadic(beta=" << dyadic.beta << ", kappa=" << dyadic.kappa << ") d=" << dimension;
      break;
    case MeasureKind::ACDensity:
      os << "ac density d=" << dimension;
      break;
  }
  return os.str();
}

// --------------------------------------------------------------------------
// Borel sets
// --------------------------------------------------------------------------

double set_distance_to_origin(const BorelSet& set) {
  if (std::holds_alternative<BallSet>(set)) {
    const auto& b = std::get<BallSet>(set);
    return std::max(0.0, b.center.norm() - b.radius);
  }
  const auto& b = std::get<BoxSet>(set);
  double d2 = 0.0;
  for (int i = 0; i < b.lo.size(); ++i) {
    const double v = std::max({b.lo[i], -b.hi[i], 0.0});
    d2 += v * v;
  }
  return std::sqrt(d2);
}

double set_diameter(const BorelSet& set) {
  if (std::holds_alternative<BallSet>(set)) return 2.0 * std::get<BallSet>(set).radius;
  const auto& b = std::get<BoxSet>(set);
  return (b.hi - b.lo).norm();
}

// --------------------------------------------------------------------------
// Scalar functionals
// --------------------------------------------------------------------------

double tail_mass(const LevyMeasureSpec& spec, double r, const QuadOptions& opts) {
  if (!(r > 0.0)) throw std::invalid_argument("tail_mass: need r > 0");
  if (spec.kind == MeasureKind::DiscreteDyadic) {
    const long n_max = dyadic_n_above(r, spec.dyadic.kappa);
    return 2.0 * spec.dimension * geometric_sum_down(spec.dyadic.beta, n_max);
  }
  if (has_radial_decomposition(spec)) {
    RadialDecomposition view = radial_decomposition(spec);
    double total = 0.0;
    for (const auto& ray : view.rays) total += ray.weight * integrate_from_or_throw(ray.q, r, opts);
    if (view.uniform_weight > 0.0)
      total += view.uniform_weight * integrate_from_or_throw(view.uniform_q, r, opts);
    return total;
  }
  // AC, d = 2: polar integral
  auto g = spec.ac_density;
  return 2.0 * M_PI *
         angular_average_d2([&](double phi) {
           return integrate_from_or_throw(
               [&](double s) { return g(s * circle_dir(phi)) * s; }, r, opts);
         });
}

double second_moment_below(const LevyMeasureSpec& spec, double r, const QuadOptions& opts) {
  if (!(r > 0.0)) throw std::invalid_argument("second_moment_below: need r > 0");
  if (spec.kind == MeasureKind::DiscreteDyadic) {
    const double beta = spec.dyadic.beta, kappa = spec.dyadic.kappa;
    long n_min = dyadic_n_above(r, kappa) + 1;  // atoms with |y| ≤ r
    return 2.0 * spec.dimension * geometric_sum_up(beta - 2.0 * kappa, n_min);
  }
  if (has_radial_decomposition(spec)) {
    RadialDecomposition view = radial_decomposition(spec);
    double total = 0.0;
    for (const auto& ray : view.rays)
      total += ray.weight *
               integrate_to_or_throw([&](double s) { return s * s * ray.q(s); }, r, opts);
    if (view.uniform_weight > 0.0)
      total += view.uniform_weight *
               integrate_to_or_throw([&](double s) { return s * s * view.uniform_q(s); }, r, opts);
    return total;
  }
  auto g = spec.ac_density;
  return 2.0 * M_PI *
         angular_average_d2([&](double phi) {
           return integrate_to_or_throw(
               [&](double s) { return s * s * g(s * circle_dir(phi)) * s; }, r, opts);
         });
}

double concentration_H(const LevyMeasureSpec& spec, double r, const QuadOptions& opts) {
  if (!(r > 0.0)) throw std::invalid_argument("concentration_H: need r > 0");
  if (spec.kind == MeasureKind::DiscreteDyadic)
    return tail_mass(spec, r, opts) + second_moment_below(spec, r, opts) / (r * r);
  // direct evaluation of ∫ 1∧(s²/r²) q with the kink interior to the panels,
  // deliberately panelized differently from tail_mass + second_moment_below
  auto capped = [r](const ScalarFn& q) {
    return [q, r](double s) { return std::min(1.0, s * s / (r * r)) * q(s); };
  };
  if (has_radial_decomposition(spec)) {
    RadialDecomposition view = radial_decomposition(spec);
    double total = 0.0;
    for (const auto& ray : view.rays) {
      total += ray.weight * (integrate_to_or_throw(capped(ray.q), 2.0 * r, opts) +
                             integrate_from_or_throw(ray.q, 2.0 * r, opts));
    }
    if (view.uniform_weight > 0.0)
      total += view.uniform_weight *
               (integrate_to_or_throw(capped(view.uniform_q), 2.0 * r, opts) +
                integrate_from_or_throw(view.uniform_q, 2.0 * r, opts));
    return total;
  }
  return tail_mass(spec, r, opts) + second_moment_below(spec, r, opts) / (r * r);
}

VectorXd drift_correction(const LevyMeasureSpec& spec, double r, const QuadOptions& opts) {
  if (!(r > 0.0)) throw std::invalid_argument("drift_correction: need r > 0");
  VectorXd correction = VectorXd::Zero(spec.dimension);
  if (r == 1.0) return spec.drift;

  const double lo = std::min(r, 1.0), hi = std::max(r, 1.0);
  const double sign = r <= 1.0 ? -1.0 : 1.0;

  if (spec.kind == MeasureKind::DiscreteDyadic) return spec.drift;  // symmetric atoms cancel

  if (has_radial_decomposition(spec)) {
    RadialDecomposition view = radial_decomposition(spec);
    for (const auto& ray : view.rays) {
      const double shell =
          integrate_or_throw([&](double s) { return s * ray.q(s); }, lo, hi, opts);
      correction += ray.weight * shell * ray.dir;
    }
    // the uniform d ≥ 2 part integrates to zero by symmetry
    return spec.drift + sign * correction;
  }

  // AC, d = 2
  auto g = spec.ac_density;
  const int n = 256;
  for (int j = 0; j < n; ++j) {
    const VectorXd dir = circle_dir(2.0 * M_PI * j / n);
    const double shell = integrate_or_throw(
        [&](double s) { return s * g(s * dir) * s; }, lo, hi, opts);
    correction += (2.0 * M_PI / n) * shell * dir;
  }
  return spec.drift + sign * correction;
}

double measure_of(const LevyMeasureSpec& spec, const BorelSet& set, const QuadOptions& opts) {
  if (set_distance_to_origin(set) <= 0.0) return kInf;  // convention: origin in closure

  if (spec.kind == MeasureKind::DiscreteDyadic) {
    const double delta = set_distance_to_origin(set);
    const double diam = set_diameter(set);
    double total = 0.0;
    for (const auto& atom : spec.dyadic_atoms(std::max(0.5 * delta, 1e-300),
                                              delta + diam + 1e-12))
      if (point_in(atom.position, set)) total += atom.mass;
    return total;
  }

  if (has_radial_decomposition(spec)) {
    RadialDecomposition view = radial_decomposition(spec);
    double total = 0.0;
    for (const auto& ray : view.rays)
      total += ray.weight * ray_measure(ray.q, ray_hits(ray.dir, set), opts);
    if (view.uniform_weight > 0.0) {
      total += view.uniform_weight *
               angular_average_d2([&](double phi) {
                 return ray_measure(view.uniform_q, ray_hits(circle_dir(phi), set), opts);
               }, 512);
    }
    return total;
  }

  // AC, d = 2: polar integration with per-angle ray intervals
  auto g = spec.ac_density;
  return 2.0 * M_PI *
         angular_average_d2([&](double phi) {
           const VectorXd dir = circle_dir(phi);
           const RayInterval iv = ray_hits(dir, set);
           if (iv.empty()) return 0.0;
           auto f = [&](double s) { return g(s * dir) * s; };
           if (!std::isfinite(iv.hi)) return integrate_from_or_throw(f, iv.lo, opts);
           return integrate_or_throw(f, std::max(iv.lo, 1e-300), iv.hi, opts);
         }, 512);
}

// --------------------------------------------------------------------------
// Assumption checkers
// --------------------------------------------------------------------------

ScalarFn default_profile_bound_fn(const LevyMeasureSpec& spec, double gamma) {
  if (spec.kind == MeasureKind::DiscreteDyadic) {
    const double exponent = -spec.dyadic.beta / spec.dyadic.kappa;
    return [exponent](double s) { return std::pow(s, exponent); };
  }
  ScalarFn q = spec.radial_q();
  return [q, gamma](double s) { return std::pow(s, 1.0 - gamma) * q(s); };
}

namespace {

std::vector<VectorXd> checker_directions(const LevyMeasureSpec& spec) {
  std::vector<VectorXd> dirs;
  if (spec.dimension == 1) {
    dirs.push_back(unit(1.0));
    dirs.push_back(unit(-1.0));
    return dirs;
  }
  if (spec.kind == MeasureKind::RadialProfile)
    for (const auto& [d, w] : spec.spherical.atom_list(spec.dimension)) dirs.push_back(d);
  for (int j = 0; j < 8; ++j) dirs.push_back(circle_dir(2.0 * M_PI * j / 8 + 0.1));
  return dirs;
}

std::vector<double> center_grid_for(const LevyMeasureSpec& spec, const CheckerGrid& grid,
                                    int n) {
  if (spec.kind != MeasureKind::DiscreteDyadic)
    return log_grid(grid.center_min, grid.center_max, n);
  // snap centers to the dyadic atom radii inside the window
  std::vector<double> centers;
  const double kappa = spec.dyadic.kappa;
  for (long k = static_cast<long>(std::floor(-std::log2(grid.center_max) / kappa));
       ; ++k) {
    const double radius = std::pow(2.0, -static_cast<double>(k) * kappa);
    if (radius < grid.center_min) break;
    if (radius <= grid.center_max) centers.push_back(radius);
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

struct SupFit {
  double value = 0.0;
  AssumptionWitness witness;
};

}  // namespace

AssumptionReport check_profile_bound(const LevyMeasureSpec& spec, const ScalarFn& f,
                                     double gamma, const CheckerGrid& grid) {
  AssumptionReport report;
  report.name = "nu(A) <= M1 f(delta(A)) diam(A)^gamma";

  auto fit = [&](const std::vector<double>& centers, const std::vector<double>& radii) {
    SupFit best;
    std::vector<VectorXd> dirs = checker_directions(spec);
    const double d = spec.dimension;
    for (const VectorXd& dir : dirs) {
      for (double s : centers) {
        for (double rho : radii) {
          if (rho >= s) continue;  // keep δ(A) > 0
          const VectorXd center = s * dir;
          const double w = rho / std::sqrt(d);
          const BorelSet sets[2] = {
              BallSet{center, rho},
              BoxSet{VectorXd(center.array() - w), VectorXd(center.array() + w)}};
          for (const BorelSet& set : sets) {
            const double delta = set_distance_to_origin(set);
            if (!(delta > 0.0)) continue;
            const double nu = measure_of(spec, set, grid.quad);
            if (!std::isfinite(nu) || nu <= 0.0) continue;
            const double denom = f(delta) * std::pow(set_diameter(set), gamma);
            if (!(denom > 0.0) || !std::isfinite(denom)) continue;
            const double ratio = nu / denom;
            if (ratio > best.value) best = {ratio, {center, rho, ratio}};
          }
        }
      }
    }
    return best;
  };

  const auto centers = center_grid_for(spec, grid, grid.n_centers);
  const auto radii = log_grid(grid.r_min, grid.r_max, grid.n_radii);
  SupFit base = fit(centers, radii);
  SupFit refined = fit(spec.kind == MeasureKind::DiscreteDyadic ? centers
                                                                : refine_log_grid(centers),
                       refine_log_grid(radii));

  report.fitted_constant = base.value;
  report.refined_constant = refined.value;
  report.witness = refined.witness;
  report.holds = base.value > 0.0 && std::isfinite(refined.value) &&
                 refined.value <= base.value * (1.0 + grid.stability_band);
  if (!report.holds && base.value > 0.0)
    report.note = "supremum not stable under grid refinement";
  return report;
}

AssumptionReport check_tech_assumption(const LevyMeasureSpec& spec, const ScalarFn& f,
                                       const ScalarFn& psi, const CheckerGrid& grid) {
  AssumptionReport report;
  report.name = "∫_{|y|>r} f(s∨|y| - |y|/2) ν(dy) <= M2 f(s) Ψ(1/r)";

  // radial integrand: u ≤ s contributes f(s - u/2), u > s contributes f(u/2)
  auto lhs = [&](double s, double r) -> double {
    auto shell = [&](const ScalarFn& q, double weight) {
      double acc = 0.0;
      if (s > r)
        acc += integrate_or_throw([&](double u) { return f(s - 0.5 * u) * q(u); }, r, s,
                                  grid.quad);
      const double from = std::max(r, s);
      acc += integrate_from_or_throw([&](double u) { return f(0.5 * u) * q(u); }, from,
                                     grid.quad);
      return weight * acc;
    };
    if (spec.kind == MeasureKind::DiscreteDyadic) {
      double acc = 0.0;
      for (const auto& atom : spec.dyadic_atoms(r, kInf)) {
        const double u = atom.position.norm();
        acc += atom.mass * f(std::max(s, u) - 0.5 * u);
      }
      return acc;
    }
    RadialDecomposition view = radial_decomposition(spec);
    double acc = 0.0;
    for (const auto& ray : view.rays) acc += shell(ray.q, ray.weight);
    if (view.uniform_weight > 0.0) acc += shell(view.uniform_q, view.uniform_weight);
    return acc;
  };

  auto fit = [&](const std::vector<double>& s_grid, const std::vector<double>& r_grid) {
    SupFit best;
    for (double s : s_grid) {
      if (s < grid.s_floor) continue;
      for (double r : r_grid) {
        const double denom = f(s) * psi(1.0 / r);
        if (!(denom > 0.0) || !std::isfinite(denom)) continue;
        const double ratio = lhs(s, r) / denom;
        if (ratio > best.value) best = {ratio, {unit(s), r, ratio}};
      }
    }
    return best;
  };

  const auto s_grid = log_grid(grid.center_min, grid.center_max, grid.n_centers);
  const auto r_grid = log_grid(grid.r_min, grid.r_max, grid.n_radii);
  SupFit base = fit(s_grid, r_grid);
  SupFit refined = fit(refine_log_grid(s_grid), refine_log_grid(r_grid));

  report.fitted_constant = base.value;
  report.refined_constant = refined.value;
  report.witness = refined.witness;
  report.holds = base.value > 0.0 && std::isfinite(refined.value) &&
                 refined.value <= base.value * (1.0 + grid.stability_band);
  return report;
}

AssumptionReport check_lower_measure_bound(const LevyMeasureSpec& spec, const ScalarFn& f,
                                           double gamma,
                                           const std::vector<VectorXd>& direction_set,
                                           const CheckerGrid& grid) {
  AssumptionReport report;
  report.name = "ν(B(x,r)) >= M4 r^gamma f(|x|+r)";
  if (direction_set.empty()) throw std::invalid_argument("need at least one direction");

  auto fit = [&](const std::vector<double>& centers, const std::vector<double>& radii) {
    SupFit worst;
    worst.value = kInf;
    for (const VectorXd& dir : direction_set) {
      for (double s : centers) {
        for (double rho : radii) {
          if (rho > 0.5 * s) continue;
          const BallSet ball{s * dir, rho};
          const double nu = measure_of(spec, ball, grid.quad);
          if (!std::isfinite(nu)) continue;
          const double denom = std::pow(rho, gamma) * f(s + rho);
          if (!(denom > 0.0) || !std::isfinite(denom)) continue;
          const double ratio = nu / denom;
          if (ratio < worst.value) worst = {ratio, {s * dir, rho, ratio}};
        }
      }
    }
    return worst;
  };

  const auto centers = center_grid_for(spec, grid, grid.n_centers);
  const auto radii = log_grid(grid.r_min, grid.r_max, grid.n_radii);
  SupFit base = fit(centers, radii);
  SupFit refined = fit(spec.kind == MeasureKind::DiscreteDyadic ? centers
                                                                : refine_log_grid(centers),
                       refine_log_grid(radii));

  report.fitted_constant = base.value;
  report.refined_constant = refined.value;
  report.witness = refined.witness;
  report.holds = std::isfinite(base.value) && base.value > 0.0 &&
                 refined.value >= base.value / (1.0 + grid.stability_band) &&
                 refined.value > 0.0;
  if (!report.holds) report.note = "infimum approaches zero under refinement";
  return report;
}

}  // namespace levyheat
