#ifndef LEVYHEAT_MEASURE_HPP
#define LEVYHEAT_MEASURE_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levyheat/quadrature.hpp"

namespace levyheat {

using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Declarative description of the jump measure ν and drift b.
// ---------------------------------------------------------------------------

enum class ProfileFamily { PureStable, StableLog, TemperedPoly, Custom };

/// Radial jump intensity Q(s), s > 0 (nonincreasing, positive).
struct RadialProfileSpec {
  ProfileFamily family = ProfileFamily::PureStable;
  double alpha = 1.0;   // stability index, (0, 2]
  double kappa = 0.0;   // log/polynomial tempering exponent
  double beta = 0.0;    // log tempering power / exponential-rate power
  double m = 0.0;       // exponential tempering rate (TemperedPoly)
  ScalarFn custom;      // Custom family only

  double operator()(double s) const;
  void validate() const;
  std::string describe() const;
};

enum class SphericalKind { Uniform, Atoms, Mixture };

/// Spherical factor μ of ν(ds dθ) = Q(s) ds μ(dθ) with its γ-1-measure order.
struct SphericalMeasureSpec {
  SphericalKind kind = SphericalKind::Uniform;
  double gamma = 1.0;               // μ(B(θ,ρ)∩S) ≤ c ρ^{γ-1}, γ ∈ [1, d]
  double uniform_mass = -1.0;       // < 0 → surface area of S^{d-1}
  std::vector<VectorXd> directions; // unit vectors (Atoms / Mixture)
  std::vector<double> weights;

  void validate(int dimension) const;
  double total_mass(int dimension) const;
  double uniform_part(int dimension) const;
  /// Reduce to a finite atom list where possible (always for d = 1).
  std::vector<std::pair<VectorXd, double>> atom_list(int dimension) const;
  bool symmetric(int dimension) const;
};

struct DyadicParams {
  double beta = 1.0;
  double kappa = 1.0;
};

enum class MeasureKind { RadialProfile, DiscreteDyadic, ACDensity };

/// ν = Σ_{i,n} 2^{nβ} (δ_{2^{-nκ} e_i} + δ_{-2^{-nκ} e_i}),  0 < β < 2κ.
struct DyadicAtom {
  VectorXd position;
  double mass;
};

struct LevyMeasureSpec {
  MeasureKind kind = MeasureKind::RadialProfile;
  int dimension = 1;
  VectorXd drift;  // b ∈ R^d

  RadialProfileSpec profile;      // RadialProfile
  SphericalMeasureSpec spherical; // RadialProfile
  DyadicParams dyadic;            // DiscreteDyadic
  std::function<double(const VectorXd&)> ac_density;  // ACDensity
  bool ac_symmetric = false;

  static LevyMeasureSpec radial(int d, RadialProfileSpec profile, SphericalMeasureSpec sph,
                                VectorXd b = VectorXd());
  static LevyMeasureSpec discrete_dyadic(int d, double beta, double kappa);
  static LevyMeasureSpec ac(int d, std::function<double(const VectorXd&)> g, bool symmetric,
                            VectorXd b = VectorXd());

  bool symmetric() const;
  void validate(const QuadOptions& opts = {}) const;
  std::string describe() const;

  /// Radial profile seen along direction index k of atom_list (RadialProfile)
  /// or the effective two-sided radial density for d = 1 AC specs.
  ScalarFn radial_q() const;

  /// Atom list of the dyadic measure restricted to |y| in (r_lo, r_hi),
  /// truncated once the remaining geometric tails fall below tail_tol
  /// relative to the included mass.
  std::vector<DyadicAtom> dyadic_atoms(double r_lo, double r_hi,
                                       double tail_tol = 1e-14) const;
};

// ---------------------------------------------------------------------------
// Borel test sets used by the assumption checkers.
// ---------------------------------------------------------------------------

/// Per-direction radial decomposition of ν for the quadrature-backed kinds:
/// ν(E) = Σ_k w_k ∫ 1_E(s θ_k) q_k(s) ds + u_w · avg_{θ∈S} ∫ 1_E(s θ) q_u(s) ds.
struct DirectionalRay {
  VectorXd dir;
  double weight;
  ScalarFn q;
};

struct RadialDecomposition {
  std::vector<DirectionalRay> rays;
  double uniform_weight = 0.0;  // total mass of the uniform spherical part, d ≥ 2
  ScalarFn uniform_q;
  int dimension = 1;
};

bool has_radial_decomposition(const LevyMeasureSpec& spec);
RadialDecomposition radial_decomposition(const LevyMeasureSpec& spec);

struct BallSet {
  VectorXd center;
  double radius;
};
struct BoxSet {
  VectorXd lo;
  VectorXd hi;
};
using BorelSet = std::variant<BallSet, BoxSet>;

double set_distance_to_origin(const BorelSet& set);  // δ(A)
double set_diameter(const BorelSet& set);            // diam(A)

// ---------------------------------------------------------------------------
// Scalar functionals of ν.
// ---------------------------------------------------------------------------

/// ν({|y| > r})
double tail_mass(const LevyMeasureSpec& spec, double r, const QuadOptions& opts = {});

/// ∫_{|y| ≤ r} |y|² ν(dy)
double second_moment_below(const LevyMeasureSpec& spec, double r, const QuadOptions& opts = {});

/// H(r) = ∫ 1 ∧ (|y|²/r²) ν(dy)
double concentration_H(const LevyMeasureSpec& spec, double r, const QuadOptions& opts = {});

/// b_r of the compound-Poisson splitting: b ∓ ∫ over the shell between r and 1.
VectorXd drift_correction(const LevyMeasureSpec& spec, double r, const QuadOptions& opts = {});

/// ν(A); +∞ when A has positive distance-zero mass (contains the origin).
double measure_of(const LevyMeasureSpec& spec, const BorelSet& set, const QuadOptions& opts = {});

// ---------------------------------------------------------------------------
// Structural assumption checkers.
// ---------------------------------------------------------------------------

struct AssumptionWitness {
  VectorXd point;    // center of the worst set / sample location
  double scale = 0;  // radius or s-parameter at the worst sample
  double ratio = 0;
};

struct AssumptionReport {
  std::string name;
  bool holds = false;
  double fitted_constant = 0.0;
  double refined_constant = 0.0;  // same fit on a ×2 refined grid
  AssumptionWitness witness;
  std::string note;
};

struct CheckerGrid {
  int n_radii = 40;
  double r_min = 1e-3;
  double r_max = 1e3;
  int n_centers = 40;
  double center_min = 1e-3;
  double center_max = 1e3;
  double s_floor = 1e-6;        // f(0+) = ∞ guard for the tech assumption
  double stability_band = 0.5;  // |log(refined/base)| must stay below log(1+band)
  QuadOptions quad{1e-9, 1e-9, 4000};
};

/// f(s) = s^{1-γ} Q(s) (radial profiles) or s^{-β/κ} (dyadic): the default
/// envelope profile for the measure-level assumptions.
ScalarFn default_profile_bound_fn(const LevyMeasureSpec& spec, double gamma);

/// Fitted M₁ with ν(A) ≤ M₁ f(δ(A)) diam(A)^γ over sampled balls and boxes.
AssumptionReport check_profile_bound(const LevyMeasureSpec& spec, const ScalarFn& f,
                                     double gamma, const CheckerGrid& grid = {});

/// Fitted M₂ with ∫_{|y|>r} f(s∨|y| - |y|/2) ν(dy) ≤ M₂ f(s) Ψ(1/r).
AssumptionReport check_tech_assumption(const LevyMeasureSpec& spec, const ScalarFn& f,
                                       const ScalarFn& psi, const CheckerGrid& grid = {});

/// Fitted M₄ with ν(B(x,r)) ≥ M₄ r^γ f(|x|+r) on the cone of direction_set.
AssumptionReport check_lower_measure_bound(const LevyMeasureSpec& spec, const ScalarFn& f,
                                           double gamma,
                                           const std::vector<VectorXd>& direction_set,
                                           const CheckerGrid& grid = {});

}  // namespace levyheat

#endif
