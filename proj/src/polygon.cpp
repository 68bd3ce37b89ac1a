#include "knot/polygon.hpp"

#include <cmath>

#include "knot/errors.hpp"
#include "knot/mollify.hpp"
#include "knot/numerics.hpp"

namespace knot {

Polygon::Polygon(Eigen::MatrixXd vertices, Eigen::VectorXd params)
    : vertices_(std::move(vertices)), params_(std::move(params)) {
  const int m = size();
  if (m < 3)
    throw Error(ErrorCode::Validation, "polygon needs at least 3 vertices");
  if (params_.size() == 0) {
    params_.resize(m);
    for (int i = 0; i < m; ++i) params_(i) = double(i) / m;
  }
  if (params_.size() != m)
    throw Error(ErrorCode::DimensionMismatch, "one parameter per vertex");
  int descents = 0;
  for (int i = 0; i < m; ++i) {
    if (params_(i) < 0.0 || params_(i) >= 1.0)
      throw Error(ErrorCode::Validation, "vertex parameters live in [0,1)");
    if (params_((i + 1) % m) <= params_(i)) ++descents;
  }
  if (descents > 1)
    throw Error(ErrorCode::Validation,
                "vertex parameters must be cyclically increasing");
  cum_.resize(m + 1, 0.0);
  for (int i = 0; i < m; ++i) {
    double e = (vertices_.row((i + 1) % m) - vertices_.row(i)).norm();
    if (e <= 0.0)
      throw Error(ErrorCode::CoincidentVertices,
                  "consecutive vertices coincide");
    cum_[i + 1] = cum_[i] + e;
  }
  perimeter_ = cum_[m];
}

Polygon::Polygon(Eigen::MatrixXd vertices)
    : Polygon(std::move(vertices), Eigen::VectorXd()) {}

double Polygon::edge_length(int i) const {
  i %= size();
  if (i < 0) i += size();
  return cum_[i + 1] - cum_[i];
}

double polygon_arc_distance(const Polygon& p, int i, int j) {
  const int m = p.size();
  i %= m;
  if (i < 0) i += m;
  j %= m;
  if (j < 0) j += m;
  double fwd = p.cumulative(std::max(i, j)) - p.cumulative(std::min(i, j));
  return std::min(fwd, p.perimeter() - fwd);
}

double discrete_energy(const Polygon& p) {
  const int m = p.size();
  // reject coincident non-consecutive vertices up front
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if ((p.vertices().row(i) - p.vertices().row(j)).norm() <= 0.0)
        throw Error(ErrorCode::CoincidentVertices, "polygon vertices coincide");
  KahanSum total;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      double c2 = (p.vertices().row(i) - p.vertices().row(j)).squaredNorm();
      double dp = polygon_arc_distance(p, i, j);
      total.add((1.0 / c2 - 1.0 / (dp * dp)) * p.edge_length(i) *
                p.edge_length(j));
    }
  }
  return total.value();
}

Polygon inscribe_uniform(const ClosedCurve& curve, int m) {
  if (m < 3)
    throw Error(ErrorCode::Validation, "inscribed polygon needs m >= 3");
  if (!curve.is_regular())
    throw Error(ErrorCode::NonRegular, "inscribing in a non-regular curve");
  Eigen::MatrixXd v(m, curve.dimension());
  Eigen::VectorXd a(m);
  for (int i = 0; i < m; ++i) {
    a(i) = double(i) / m;
    v.row(i) = curve.evaluate(a(i)).transpose();
  }
  return Polygon(std::move(v), std::move(a));
}

double gromov_distortion(const Polygon& p) {
  const int m = p.size();
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double chord = (p.vertices().row(i) - p.vertices().row(j)).norm();
      if (chord <= 0.0)
        throw Error(ErrorCode::CoincidentVertices, "polygon vertices coincide");
      worst = std::max(worst, polygon_arc_distance(p, i, j) / chord);
    }
  }
  return worst;
}

std::vector<GammaSweepRow> gamma_sweep(const ClosedCurve& curve,
                                       const std::vector<int>& m_list,
                                       const QuadratureSpec& spec,
                                       bool mollify_first) {
  const double e_mob = mobius_energy(curve, spec);
  std::vector<GammaSweepRow> rows;
  rows.reserve(m_list.size());
  for (int m : m_list) {
    GammaSweepRow row;
    row.m = m;
    row.e_mobius = e_mob;
    if (mollify_first) {
      // the recovery sequence of the discrete-to-continuum proof
      ClosedCurve smooth =
          reparametrize_by_arclength(mollify(curve, 1.0 / m));
      row.discrete = discrete_energy(inscribe_uniform(smooth, m));
    } else {
      row.discrete = discrete_energy(inscribe_uniform(curve, m));
    }
    row.gap = std::fabs(row.discrete - e_mob);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace knot
