#include "ovallab/core/interp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ovallab/core/errors.hpp"

namespace ovallab {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  require(x_.size() >= 2 && x_.size() == y_.size(), ErrorKind::invalid_argument,
          "interpolant needs >= 2 samples with matching arity");
  for (size_t i = 1; i < x_.size(); ++i)
    require(x_[i] > x_[i - 1], ErrorKind::invalid_argument,
            "interpolant abscissae must be strictly increasing");

  const size_t n = x_.size();
  std::vector<double> h(n - 1), d(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  m_.assign(n, 0.0);
  if (n == 2) {
    m_[0] = m_[1] = d[0];
    return;
  }
  // Fritsch–Carlson interior slopes: weighted harmonic mean of the secants,
  // zeroed whenever the secants disagree in sign (local extremum).
  for (size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0) != (d[i] > 0)) {
      m_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  // One-sided ends with the standard shape-preserving clamp.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0)
      m = 0.0;
    else if ((d0 > 0) != (d1 > 0) && std::abs(m) > 3.0 * std::abs(d0))
      m = 3.0 * d0;
    return m;
  };
  m_[0] = end_slope(h[0], h[1], d[0], d[1]);
  m_[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

int MonotoneCubic::interval_of(double t) const {
  const double span = x_.back() - x_.front();
  const double slack = 1e-12 * std::max(1.0, std::abs(span));
  require(t >= x_.front() - slack && t <= x_.back() + slack,
          ErrorKind::out_of_domain,
          "interpolation point " + std::to_string(t) + " outside [" +
              std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  int i = static_cast<int>(it - x_.begin()) - 1;
  i = std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
  return i;
}

double MonotoneCubic::eval(double t) const {
  const int i = interval_of(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double MonotoneCubic::deriv(double t) const {
  const int i = interval_of(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double dh00 = 6 * s * (s - 1);
  const double dh10 = (1 - s) * (1 - 3 * s);
  const double dh01 = -dh00;
  const double dh11 = s * (3 * s - 2);
  return (dh00 * y_[i] + dh01 * y_[i + 1]) / h + dh10 * m_[i] + dh11 * m_[i + 1];
}

bool MonotoneCubic::strictly_increasing() const {
  for (size_t i = 1; i < y_.size(); ++i)
    if (!(y_[i] > y_[i - 1])) return false;
  return true;
}

bool MonotoneCubic::strictly_decreasing() const {
  for (size_t i = 1; i < y_.size(); ++i)
    if (!(y_[i] < y_[i - 1])) return false;
  return true;
}

double MonotoneCubic::solve(double target) const {
  const bool inc = strictly_increasing();
  require(inc || strictly_decreasing(), ErrorKind::invalid_argument,
          "inverse lookup requires strictly monotone data");
  double lo = x_.front(), hi = x_.back();
  double flo = y_.front(), fhi = y_.back();
  if (!inc) std::swap(flo, fhi);
  const double slack = 1e-12 * std::max(1.0, std::abs(fhi - flo));
  require(target >= flo - slack && target <= fhi + slack, ErrorKind::out_of_domain,
          "inverse lookup target " + std::to_string(target) + " outside value range");
  // Bisection to a tight bracket, then a few Newton polish steps.
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = eval(mid);
    const bool left = inc ? (fm < target) : (fm > target);
    if (left)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14 * std::max(1.0, std::abs(hi))) break;
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double f = eval(t) - target;
    const double df = deriv(t);
    if (df == 0.0) break;
    double step = f / df;
    const double tn = std::clamp(t - step, x_.front(), x_.back());
    if (tn == t) break;
    t = tn;
  }
  return t;
}

HermiteSpline::HermiteSpline(std::vector<double> x, std::vector<double> y,
                             std::vector<double> slope)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slope)) {
  require(x_.size() >= 2 && x_.size() == y_.size() && x_.size() == m_.size(),
          ErrorKind::invalid_argument,
          "hermite spline needs >= 2 samples with matching arity");
  for (size_t i = 1; i < x_.size(); ++i)
    require(x_[i] > x_[i - 1], ErrorKind::invalid_argument,
            "hermite spline abscissae must be strictly increasing");
}

int HermiteSpline::interval_of(double t) const {
  const double span = x_.back() - x_.front();
  const double slack = 1e-12 * std::max(1.0, std::abs(span));
  require(t >= x_.front() - slack && t <= x_.back() + slack,
          ErrorKind::out_of_domain,
          "interpolation point " + std::to_string(t) + " outside [" +
              std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  int i = static_cast<int>(it - x_.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
}

double HermiteSpline::eval(double t) const {
  const int i = interval_of(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double HermiteSpline::deriv(double t) const {
  const int i = interval_of(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double dh00 = 6 * s * (s - 1);
  const double dh10 = (1 - s) * (1 - 3 * s);
  const double dh11 = s * (3 * s - 2);
  return (dh00 * y_[i] - dh00 * y_[i + 1]) / h + dh10 * m_[i] + dh11 * m_[i + 1];
}

double lerp_table(const std::vector<double>& x, const std::vector<double>& y,
                  double t) {
  require(x.size() == y.size() && !x.empty(), ErrorKind::invalid_argument,
          "lerp_table needs matching nonempty tables");
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  auto it = std::upper_bound(x.begin(), x.end(), t);
  const size_t i = static_cast<size_t>(it - x.begin()) - 1;
  const double s = (t - x[i]) / (x[i + 1] - x[i]);
  return y[i] + s * (y[i + 1] - y[i]);
}

}  // namespace ovallab
