#pragma once

#include <vector>

#include "knot/curve.hpp"

namespace knot {

// Normalized smooth bump Z^{-1} exp(-1/(1-x^2)) on (-1,1), zero outside.
double bump_profile(double x);
// normalization constant Z = int_{-1}^{1} exp(-1/(1-u^2)) du
double bump_normalization();
// second moment of the normalized profile, int u^2 eta(u) du
double bump_second_moment();

// Smoothing kernel eta_eps(x) = (1/eps) eta(x/eps) acting on closed curves
// as the Fourier multiplier k -> eta_hat_eps(k). Multipliers are computed
// once at construction (read-only afterwards).
class MollifierKernel {
 public:
  MollifierKernel(double eps, int kmax);

  double epsilon() const { return eps_; }
  // eta_hat_eps(k) = int eta_eps(y) cos(2 pi k y) dy, real and even in k
  double multiplier(int k) const;

 private:
  double eps_;
  std::vector<double> mult_;
};

// periodic convolution gamma * eta_eps via the Fourier multiplier
ClosedCurve mollify(const ClosedCurve& curve, double eps);

// sup over a dense grid of | |gamma'| - 1 |
double speed_deviation(const ClosedCurve& curve_eps);

// Largest grid epsilon for which the mollified curve (and all mollified
// curves at smaller grid epsilons) keeps min speed > 1/2; 0 when none.
double regularity_threshold(const ClosedCurve& curve,
                            const std::vector<double>& eps_grid);

struct MollifySweepRow {
  double epsilon = 0.0;
  double speed_min = 0.0;
  double speed_max = 0.0;
  double speed_deviation = 0.0;
  // optionally filled by the energy module
  double e_mobius = 0.0, e1 = 0.0, e2 = 0.0;
  bool has_energies = false;
};

}  // namespace knot
