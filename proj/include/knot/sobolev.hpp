#pragma once

#include <string>

#include "knot/curve.hpp"

namespace knot {

// Periodic vector-valued function R/Z -> R^d on a uniform sample grid,
// interpolated trigonometrically (typically f = gamma').
class PeriodicFunction {
 public:
  explicit PeriodicFunction(Eigen::MatrixXd samples);

  // f = gamma' sampled at the curve's nodes
  static PeriodicFunction derivative_of(const ClosedCurve& curve);

  int sample_count() const { return static_cast<int>(samples_.rows()); }
  int dimension() const { return static_cast<int>(samples_.cols()); }
  const Eigen::MatrixXd& samples() const { return samples_; }

  Eigen::VectorXd at(double t) const { return interp_.at(wrap1(t), 0); }
  Eigen::MatrixXd resample(int M) const { return interp_.resample(M, 0); }

 private:
  Eigen::MatrixXd samples_;
  TrigInterpolant interp_;
};

struct SeminormResult {
  double value = 0.0;      // non-squared seminorm, (sum)^{1/p}
  double power_p = 0.0;    // the p-th power double sum itself
  double s = 0.0;
  double p = 0.0;
  int grid = 0;
  std::string diagonal_policy = "exclude-band";
  // bound on the contribution of the excluded band |w| < 1/grid,
  // on the p-th power scale (local Lipschitz estimate)
  double remainder_power_p = 0.0;
};

// Gagliardo seminorm (int int |f(x)-f(y)|^p / |x-y|^{1+sp})^{1/p} with torus
// distance; the band |w| < 1/grid is excluded and bounded by the remainder.
SeminormResult gagliardo_seminorm(const PeriodicFunction& f, double s, double p,
                                  int grid);

// same double sum restricted to |w| <= wmax (tail quantity of the
// VMO embedding chain and of open-curve truncation estimates)
SeminormResult gagliardo_tail(const PeriodicFunction& f, double s, double p,
                              int grid, double wmax);

// W^{1/2,2} Douglas distance of f - g (non-squared convention)
double w12_distance(const PeriodicFunction& f, const PeriodicFunction& g,
                    int grid);

// sup over grid centers x of (1/2r) int_{B_r(x)} |f - mean_{B_r(x)} f|
double vmo_modulus(const PeriodicFunction& f, double r);

// mean of f over the torus ball B_r(x)
Eigen::VectorXd local_mean(const PeriodicFunction& f, double x, double r);

}  // namespace knot
