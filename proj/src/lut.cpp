#include "levyheat/lut.hpp"

#include <cmath>
#include <stdexcept>

namespace levyheat {

LogLogTable LogLogTable::build(const ScalarFn& fn, double u_min, double u_max,
                               int per_decade) {
  if (!(u_min > 0.0) || !(u_max > u_min) || per_decade < 2)
    throw std::invalid_argument("LogLogTable: bad range");

  LogLogTable t;
  const double lo = std::log(u_min), hi = std::log(u_max);
  const int n = static_cast<int>(std::ceil((hi - lo) / std::log(10.0) * per_decade)) + 1;
  t.step_ = (hi - lo) / (n - 1);
  t.log_u_.resize(n);
  t.log_v_.resize(n);
  for (int i = 0; i < n; ++i) {
    t.log_u_[i] = lo + i * t.step_;
    const double v = fn(std::exp(t.log_u_[i]));
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::domain_error("LogLogTable: function must be positive and finite on the range");
    t.log_v_[i] = std::log(v);
  }
  t.slope_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      t.slope_[i] = (t.log_v_[1] - t.log_v_[0]) / t.step_;
    else if (i == n - 1)
      t.slope_[i] = (t.log_v_[n - 1] - t.log_v_[n - 2]) / t.step_;
    else
      t.slope_[i] = (t.log_v_[i + 1] - t.log_v_[i - 1]) / (2.0 * t.step_);
  }
  return t;
}

double LogLogTable::operator()(double u) const {
  if (empty()) throw std::logic_error("LogLogTable: empty");
  if (!(u > 0.0)) return 0.0;
  const double x = std::log(u);
  const int n = static_cast<int>(log_u_.size());

  if (x <= log_u_.front())
    return std::exp(log_v_.front() + slope_.front() * (x - log_u_.front()));
  if (x >= log_u_.back())
    return std::exp(log_v_.back() + slope_.back() * (x - log_u_.back()));

  int i = static_cast<int>((x - log_u_.front()) / step_);
  i = std::min(std::max(i, 0), n - 2);
  const double s = (x - log_u_[i]) / step_;
  const double y0 = log_v_[i], y1 = log_v_[i + 1];
  const double m0 = slope_[i] * step_, m1 = slope_[i + 1] * step_;
  const double s2 = s * s, s3 = s2 * s;
  const double y = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
                   (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
  return std::exp(y);
}

double LogLogTable::u_min() const { return std::exp(log_u_.front()); }
double LogLogTable::u_max() const { return std::exp(log_u_.back()); }

}  // namespace levyheat
