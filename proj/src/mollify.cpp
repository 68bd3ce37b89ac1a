#include "knot/mollify.hpp"

#include <cmath>
#include <mutex>

#include "knot/errors.hpp"
#include "knot/numerics.hpp"

namespace knot {

namespace {

double raw_bump(double x) {
  double q = 1.0 - x * x;
  if (q <= 0.0) return 0.0;
  return std::exp(-1.0 / q);
}

struct BumpTable {
  // fixed composite-Simpson node table on [-1,1]; the transform has no
  // closed form, so multipliers are quadratures against this table
  static constexpr int kIntervals = 1 << 15;
  std::vector<double> nodes, values, weights;
  double Z = 0.0, m2 = 0.0;

  BumpTable() {
    const int n = kIntervals;
    nodes.resize(n + 1);
    values.resize(n + 1);
    weights.resize(n + 1);
    const double h = 2.0 / n;
    for (int i = 0; i <= n; ++i) {
      nodes[i] = -1.0 + i * h;
      values[i] = raw_bump(nodes[i]);
      weights[i] = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      weights[i] *= h / 3.0;
    }
    KahanSum z, s2;
    for (int i = 0; i <= n; ++i) {
      z.add(weights[i] * values[i]);
      s2.add(weights[i] * values[i] * nodes[i] * nodes[i]);
    }
    Z = z.value();
    m2 = s2.value() / Z;
  }

  double transform(double xi) const {
    KahanSum s;
    for (size_t i = 0; i < nodes.size(); ++i)
      s.add(weights[i] * values[i] * std::cos(xi * nodes[i]));
    return s.value() / Z;
  }
};

const BumpTable& bump_table() {
  static const BumpTable table;  // thread-safe static initialization
  return table;
}

}  // namespace

double bump_profile(double x) {
  return raw_bump(x) / bump_table().Z;
}

double bump_normalization() { return bump_table().Z; }

double bump_second_moment() { return bump_table().m2; }

MollifierKernel::MollifierKernel(double eps, int kmax) : eps_(eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw Error(ErrorCode::EpsOutOfRange, "mollifier epsilon must lie in (0, 1/2)");
  mult_.resize(kmax + 1);
  mult_[0] = 1.0;  // unit mass
  const BumpTable& tb = bump_table();
  for (int k = 1; k <= kmax; ++k)
    mult_[k] = tb.transform(2.0 * M_PI * k * eps);
}

double MollifierKernel::multiplier(int k) const {
  size_t a = static_cast<size_t>(std::abs(k));
  if (a >= mult_.size())
    throw Error(ErrorCode::Validation, "multiplier index beyond kernel table");
  return mult_[a];
}

ClosedCurve mollify(const ClosedCurve& curve, double eps) {
  const int N = curve.sample_count();
  MollifierKernel kernel(eps, N / 2);
  Eigen::MatrixXcd c = curve.interpolant().coefficients();
  for (int i = 0; i < N; ++i) {
    int k = (i < N / 2) ? i : i - N;
    c.row(i) *= kernel.multiplier(k);
  }
  return ClosedCurve::from_samples(TrigInterpolant::synthesize(c),
                                   curve.source() + "/mollified");
}

double speed_deviation(const ClosedCurve& curve_eps) {
  Eigen::VectorXd v = curve_eps.speeds(4 * curve_eps.sample_count());
  return (v.array() - 1.0).abs().maxCoeff();
}

double regularity_threshold(const ClosedCurve& curve,
                            const std::vector<double>& eps_grid) {
  if (eps_grid.empty()) return 0.0;
  for (size_t i = 0; i + 1 < eps_grid.size(); ++i)
    if (eps_grid[i] <= eps_grid[i + 1])
      throw Error(ErrorCode::Validation, "eps grid must be strictly decreasing");
  double best = 0.0;
  // scan from the smallest epsilon upward; stop at the first failure
  for (auto it = eps_grid.rbegin(); it != eps_grid.rend(); ++it) {
    Eigen::VectorXd v = mollify(curve, *it).speeds(4 * curve.sample_count());
    if (v.minCoeff() <= 0.5) break;
    best = *it;
  }
  return best;
}

}  // namespace knot
