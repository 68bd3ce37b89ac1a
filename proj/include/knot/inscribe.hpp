#pragma once

#include <vector>

#include "knot/curve.hpp"
#include "knot/polygon.hpp"

namespace knot {

struct MarchResult {
  std::vector<double> params;   // n parameters, increasing from x0
  Eigen::MatrixXd points;       // n x d vertex positions
  double closing_gap = 0.0;     // |gamma(t_last) - gamma(x0)| - s
};

// Greedy chord march: starting at gamma(x0), pick n-1 times the nearest
// forward parameter at chord distance exactly s (bisection after a fine
// forward scan). Throws NoForwardIntersection when a step finds no forward
// point at distance s within one full loop.
MarchResult march(const ClosedCurve& curve, double x0, double s, int n);

struct InscribedResult {
  std::vector<double> params;  // vertex parameters in march order
  Eigen::MatrixXd points;      // n x d vertices, first one is gamma(x0)
  double side = 0.0;
  double closing_residual = 0.0;
  int iterations = 0;
  // scan side lengths at the lower end of every sign-change bracket
  std::vector<double> brackets;

  // cyclic polygon view (n >= 3)
  Polygon polygon() const;
};

// Equilateral inscribed n-gon through gamma(x0): bisection on the side
// length over sign-change brackets of the closing gap located on a
// logarithmic scan grid. n = 2 returns the max-chord (diameter) pair.
InscribedResult inscribed_ngon(const ClosedCurve& curve, double x0, int n);

}  // namespace knot
