#pragma once

#include <string>

#include "knot/curve.hpp"

namespace knot {

enum class DiagonalPolicy {
  ExcludeBand,    // drop |w| < band/grid, report the remainder bound
  AnalyticLimit,  // use the curvature limit of the integrand on the band
};

struct QuadratureSpec {
  int nx = 512;
  int nw = 512;
  DiagonalPolicy policy = DiagonalPolicy::AnalyticLimit;
  int band_cells = 1;
  double tolerance = 1e-3;

  void validate() const;
  // both axes share one uniform grid so that x + w lands on grid nodes
  int effective_grid(int curve_samples) const;
};

struct EnergyReport {
  double e_mobius = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double residual = 0.0;  // e_mobius - e1 - e2 - 4
  double remainder_mobius = 0.0;  // |E(M) - E(M/2)| grid-halving estimates
  double remainder_e1 = 0.0;
  double remainder_e2 = 0.0;
  double min_chord_arc = 0.0;
  QuadratureSpec spec;
};

// O'Hara's Moebius energy of a closed curve
double mobius_energy(const ClosedCurve& curve, const QuadratureSpec& spec);
// tangent-difference part of the Ishizeki-Nagasawa decomposition
double e1(const ClosedCurve& curve, const QuadratureSpec& spec);
// determinant part of the decomposition
double e2(const ClosedCurve& curve, const QuadratureSpec& spec);
// all three in one pass, with the decomposition residual
EnergyReport decompose(const ClosedCurve& curve, const QuadratureSpec& spec);

// pointwise energy integrand I(x, w) (chord/arc difference times speeds)
double integrand_I(const ClosedCurve& curve, double x, double w);
double integrand_I(const ClosedCurve& curve, const ArcLengthMap& arclen,
                   double x, double w);

// double-average majorant: (1/w^2) * mean over (s1,s2) in [0,1]^2 of
// |gamma'(x+s1 w) - gamma'(x+s2 w)|^2, by an 8-point product Gauss rule
double integrand_majorant(const ClosedCurve& curve, double x, double w);

// |a||b| - <a,b>; equals |a-b|^2/2 for unit vectors and is bounded by
// (|b|/|a|) |a-b|^2 for nonzero vectors
double pairing_defect(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct OpenEnergyResult {
  double value = 0.0;
  // window-halving estimate of the truncated tail (the integrand decays
  // like 1/|x|^2 toward the ends, so E(R) - E(R/2) ~ the tail beyond R)
  double tail_estimate = 0.0;
};

// open-curve energies over [-R, R]^2 with straight-line reference 1/|x-y|^2;
// window defaults to the curve's full domain
OpenEnergyResult mobius_energy_open(const OpenCurve& curve, double window = 0.0);
OpenEnergyResult e1_open(const OpenCurve& curve, double window = 0.0);
OpenEnergyResult e2_open(const OpenCurve& curve, double window = 0.0);

}  // namespace knot
