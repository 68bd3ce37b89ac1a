#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace knot {

// Compensated (Kahan) accumulator for long sums of near-cancelling terms.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Adaptive Simpson quadrature. Integrand must be finite on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 40);

// Composite Simpson with n (even) intervals.
double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int n);

// Nodes/weights of the 8-point Gauss-Legendre rule on [0, 1].
struct Gauss8 {
  static const double nodes[8];
  static const double weights[8];
};

inline double wrap1(double t) {
  double r = t - std::floor(t);
  return (r >= 1.0) ? 0.0 : r;  // guard against floor rounding at integers
}

// distance on the unit torus R/Z
inline double torus_dist(double a, double b) {
  double d = std::fabs(wrap1(a) - wrap1(b));
  return d <= 0.5 ? d : 1.0 - d;
}

}  // namespace knot
