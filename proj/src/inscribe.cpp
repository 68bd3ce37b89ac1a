#include "knot/inscribe.hpp"

#include <cmath>
#include <limits>

#include "knot/errors.hpp"
#include "knot/numerics.hpp"

namespace knot {

namespace {

struct FineTable {
  Eigen::MatrixXd pts;  // positions at j/G
  int G = 0;

  explicit FineTable(const ClosedCurve& curve)
      : pts(curve.interpolant().resample(8 * curve.sample_count(), 0)),
        G(8 * curve.sample_count()) {}

  double diameter() const {
    double best = 0.0;
    const int n = static_cast<int>(pts.rows());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        best = std::max(best, (pts.row(i) - pts.row(j)).norm());
    return best;
  }
};

// smallest t > from with |gamma(t) - gamma(from)| = s; scan at the fine
// table resolution, then bisect (first-forward-intersection tie-breaking)
double next_at_distance(const ClosedCurve& curve, const FineTable& tb,
                        double from, double s) {
  const Eigen::VectorXd base = curve.evaluate(from);
  const int G = tb.G;
  const double h = 1.0 / G;
  double t_prev = from;
  double c_prev = 0.0;
  int g0 = static_cast<int>(std::ceil(from * G));
  double start = g0 * h;
  if (start <= from) {
    ++g0;
    start += h;
  }
  for (int step = 0; step <= G; ++step) {
    double t = (g0 + step) * h;
    int idx = (g0 + step) % G;
    double c = (tb.pts.row(idx).transpose() - base).norm();
    if (c_prev < s && c >= s) {
      // bisect on the exact interpolant
      double lo = t_prev, hi = t;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double cm = (curve.evaluate(mid) - base).norm();
        if (cm >= s)
          hi = mid;
        else
          lo = mid;
        if (hi - lo < 1e-15) break;
      }
      return 0.5 * (lo + hi);
    }
    t_prev = t;
    c_prev = c;
    if (t - from >= 1.0) break;
  }
  throw Error(ErrorCode::NoForwardIntersection,
              "no forward point at chord distance " + std::to_string(s));
}

}  // namespace

MarchResult march(const ClosedCurve& curve, double x0, double s, int n) {
  if (n < 2) throw Error(ErrorCode::Validation, "march needs n >= 2");
  FineTable tb(curve);
  if (!(s > 0.0) || s >= tb.diameter())
    throw Error(ErrorCode::NoForwardIntersection,
                "side length must lie in (0, diameter)");
  MarchResult res;
  res.params.resize(n);
  res.points.resize(n, curve.dimension());
  res.params[0] = x0;
  res.points.row(0) = curve.evaluate(x0).transpose();
  double t = x0;
  for (int k = 1; k < n; ++k) {
    t = next_at_distance(curve, tb, t, s);
    res.params[k] = t;
    res.points.row(k) = curve.evaluate(t).transpose();
  }
  res.closing_gap =
      (res.points.row(n - 1) - res.points.row(0)).norm() - s;
  return res;
}

Polygon InscribedResult::polygon() const {
  Eigen::VectorXd a(params.size());
  for (size_t i = 0; i < params.size(); ++i) a(i) = wrap1(params[i]);
  return Polygon(points, a);
}

InscribedResult inscribed_ngon(const ClosedCurve& curve, double x0, int n) {
  if (n < 2) throw Error(ErrorCode::Validation, "inscribed n-gon needs n >= 2");
  InscribedResult res;
  FineTable tb(curve);

  if (n == 2) {
    // equal back-and-forth chords hold for any pair; return the pair
    // realizing the largest chord from gamma(x0)
    const Eigen::VectorXd base = curve.evaluate(x0);
    int best = 0;
    double cbest = -1.0;
    for (int g = 0; g < tb.G; ++g) {
      double c = (tb.pts.row(g).transpose() - base).norm();
      if (c > cbest) {
        cbest = c;
        best = g;
      }
    }
    double lo = double(best - 1) / tb.G, hi = double(best + 1) / tb.G;
    for (int it = 0; it < 200; ++it) {
      double m1 = lo + (hi - lo) * 0.381966011250105;
      double m2 = hi - (hi - lo) * 0.381966011250105;
      double c1 = (curve.evaluate(m1) - base).norm();
      double c2 = (curve.evaluate(m2) - base).norm();
      if (c1 < c2)
        lo = m1;
      else
        hi = m2;
      if (hi - lo < 1e-15) break;
    }
    double t1 = 0.5 * (lo + hi);
    res.params = {x0, t1};
    res.points.resize(2, curve.dimension());
    res.points.row(0) = base.transpose();
    res.points.row(1) = curve.evaluate(t1).transpose();
    res.side = (res.points.row(1) - res.points.row(0)).norm();
    res.closing_residual = 0.0;
    res.iterations = 0;
    return res;
  }

  const double L = length(curve);
  const double diam = tb.diameter();
  const int kScan = 256;
  const double s_lo = L / (4.0 * n), s_hi = 0.995 * diam;
  if (s_lo >= s_hi)
    throw Error(ErrorCode::BracketNotFound, "empty side-length scan range");
  std::vector<double> svals(kScan), gaps(kScan);
  const double ratio = std::pow(s_hi / s_lo, 1.0 / (kScan - 1));
  for (int i = 0; i < kScan; ++i) {
    svals[i] = s_lo * std::pow(ratio, i);
    try {
      gaps[i] = march(curve, x0, svals[i], n).closing_gap;
    } catch (const Error&) {
      gaps[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  for (int i = 0; i + 1 < kScan; ++i) {
    if (std::isnan(gaps[i]) || std::isnan(gaps[i + 1])) continue;
    if (gaps[i] == 0.0 || gaps[i] * gaps[i + 1] < 0.0)
      res.brackets.push_back(svals[i]);
  }
  if (res.brackets.empty())
    throw Error(ErrorCode::BracketNotFound,
                "no sign change of the closing gap on the scan grid");

  // solve the first bracket
  int ib = 0;
  for (int i = 0; i + 1 < kScan; ++i)
    if (!std::isnan(gaps[i]) && svals[i] == res.brackets.front()) {
      ib = i;
      break;
    }
  double lo = svals[ib], hi = svals[ib + 1];
  double glo = gaps[ib];
  MarchResult best = march(curve, x0, glo == 0.0 ? lo : lo, n);
  int iters = 0;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    MarchResult mr = march(curve, x0, mid, n);
    ++iters;
    best = mr;
    res.side = mid;
    if (std::fabs(mr.closing_gap) <= 1e-10 * L) break;
    if ((mr.closing_gap > 0) == (glo > 0)) {
      lo = mid;
      glo = mr.closing_gap;
    } else {
      hi = mid;
    }
  }
  res.params = best.params;
  res.points = best.points;
  res.closing_residual = std::fabs(best.closing_gap);
  res.iterations = iters;
  return res;
}

}  // namespace knot
