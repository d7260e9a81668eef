#ifndef LEVYHEAT_LUT_HPP
#define LEVYHEAT_LUT_HPP

#include <functional>
#include <vector>

#include "levyheat/quadrature.hpp"

namespace levyheat {

/// Cubic-Hermite interpolant of a positive function on a log-log scale.
/// Built once from direct evaluations, then cheap to query; extrapolates
/// with the boundary log-log slope outside the tabulated range.
class LogLogTable {
 public:
  LogLogTable() = default;

  static LogLogTable build(const ScalarFn& fn, double u_min, double u_max, int per_decade);

  double operator()(double u) const;

  bool empty() const { return log_u_.empty(); }
  double u_min() const;
  double u_max() const;

 private:
  std::vector<double> log_u_;
  std::vector<double> log_v_;
  std::vector<double> slope_;  // d log v / d log u at nodes
  double step_ = 0.0;
};

}  // namespace levyheat

#endif
