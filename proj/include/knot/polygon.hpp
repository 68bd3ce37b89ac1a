#pragma once

#include <vector>

#include "knot/curve.hpp"
#include "knot/energy.hpp"

namespace knot {

// Closed polygon with vertices p(a_i); parameters live on R/Z and are
// cyclically increasing (at most one wrap-around descent).
class Polygon {
 public:
  Polygon(Eigen::MatrixXd vertices, Eigen::VectorXd params);
  // uniform parameters a_i = i/m
  explicit Polygon(Eigen::MatrixXd vertices);

  int size() const { return static_cast<int>(vertices_.rows()); }
  int dimension() const { return static_cast<int>(vertices_.cols()); }
  const Eigen::MatrixXd& vertices() const { return vertices_; }
  const Eigen::VectorXd& params() const { return params_; }

  double edge_length(int i) const;  // |p_{i+1} - p_i|
  double perimeter() const { return perimeter_; }
  // polygonal arc length from vertex 0 to vertex i along increasing index
  double cumulative(int i) const { return cum_[i]; }

 private:
  Eigen::MatrixXd vertices_;
  Eigen::VectorXd params_;
  std::vector<double> cum_;
  double perimeter_ = 0.0;
};

// shorter-way polygonal arc length between vertices i and j
double polygon_arc_distance(const Polygon& p, int i, int j);

// Scholtes' discrete Moebius energy: ordered-pair double sum with the
// diagonal i = j excluded
double discrete_energy(const Polygon& p);

// vertices gamma(i/m) of a unit-speed curve, parameters i/m
Polygon inscribe_uniform(const ClosedCurve& curve, int m);

// max over vertex pairs of d_p(a_i, a_j) / |p(a_i) - p(a_j)|
double gromov_distortion(const Polygon& p);

struct GammaSweepRow {
  int m = 0;
  double discrete = 0.0;  // E_m of the inscribed polygon
  double e_mobius = 0.0;
  double gap = 0.0;
};

// For each m: inscribe (optionally in the mollified curve gamma_{1/m},
// re-parametrized to unit speed), evaluate the discrete energy and compare
// with the curve's Moebius energy.
std::vector<GammaSweepRow> gamma_sweep(const ClosedCurve& curve,
                                       const std::vector<int>& m_list,
                                       const QuadratureSpec& spec,
                                       bool mollify_first = false);

}  // namespace knot
