#pragma once

#include "knot/curve.hpp"

namespace knot {

// Inversion x -> c + r^2 (x - c)/|x - c|^2 on the sphere of radius r about c.
struct SphereInversion {
  Eigen::VectorXd center;
  double radius = 1.0;

  SphereInversion(Eigen::VectorXd c, double r);

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  // differential dI(x)[v]
  Eigen::VectorXd push_tangent(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& v) const;
  // conformal factor r^2/|x-c|^2
  double scale_at(const Eigen::VectorXd& x) const;
};

// Pointwise image of a closed curve under an inversion whose center stays
// off the curve; the image is re-checked for embeddedness.
ClosedCurve invert_closed(const ClosedCurve& curve, const SphereInversion& inv);

// Image of the curve under an inversion centered at gamma(t0), cut to the
// arc-length window [-r_dom, r_dom] around the image of the antipodal point
// gamma(t0 + 1/2), re-parametrized by arc length of the image.
OpenCurve invert_centered_on_curve(const ClosedCurve& curve, double t0,
                                   double radius, double r_dom,
                                   int samples = 4096);

}  // namespace knot
