#include "knot/sobolev.hpp"

#include <cmath>

#include "knot/errors.hpp"
#include "knot/numerics.hpp"

namespace knot {

namespace {

void check_exponents(double s, double p, int grid) {
  if (!(s > 0.0 && s < 1.0) || !(p >= 1.0))
    throw Error(ErrorCode::BadExponents, "need 0 < s < 1 and p >= 1");
  if (grid < 64) throw Error(ErrorCode::BadExponents, "grid must be >= 64");
}

// max |f(x+h)-f(x)|/h over the sample grid, a local Lipschitz estimate
double lipschitz_estimate(const Eigen::MatrixXd& f) {
  const int N = static_cast<int>(f.rows());
  double lip = 0.0;
  for (int i = 0; i < N; ++i) {
    double d = (f.row((i + 1) % N) - f.row(i)).norm();
    lip = std::max(lip, d * N);
  }
  return lip;
}

SeminormResult gagliardo_impl(const PeriodicFunction& f, double s, double p,
                              int grid, double wmax) {
  check_exponents(s, p, grid);
  Eigen::MatrixXd fv = f.resample(grid);
  const double expo = 1.0 + s * p;
  KahanSum total;
  for (int j = 1; j < grid; ++j) {
    double w = torus_dist(double(j) / grid, 0.0);
    if (w > wmax + 1e-15) continue;
    double denom = std::pow(w, expo);
    KahanSum inner;
    for (int i = 0; i < grid; ++i) {
      double diff = (fv.row((i + j) % grid) - fv.row(i)).norm();
      inner.add(std::pow(diff, p));
    }
    total.add(inner.value() / denom);
  }
  SeminormResult res;
  res.power_p = total.value() / (double(grid) * grid);
  res.value = std::pow(res.power_p, 1.0 / p);
  res.s = s;
  res.p = p;
  res.grid = grid;
  double lip = lipschitz_estimate(fv);
  double h = 1.0 / grid;
  // |f(x+w)-f(x)| <= lip|w| on the excluded band
  res.remainder_power_p =
      std::pow(lip, p) * 2.0 * std::pow(h, p - s * p) / (p - s * p);
  return res;
}

}  // namespace

PeriodicFunction::PeriodicFunction(Eigen::MatrixXd samples)
    : samples_(std::move(samples)) {
  if (samples_.rows() < 2 || !samples_.allFinite())
    throw Error(ErrorCode::Validation, "function samples must be finite");
  interp_ = TrigInterpolant(samples_);
}

PeriodicFunction PeriodicFunction::derivative_of(const ClosedCurve& curve) {
  return PeriodicFunction(
      curve.interpolant().resample(curve.sample_count(), 1));
}

SeminormResult gagliardo_seminorm(const PeriodicFunction& f, double s,
                                  double p, int grid) {
  return gagliardo_impl(f, s, p, grid, 0.5);
}

SeminormResult gagliardo_tail(const PeriodicFunction& f, double s, double p,
                              int grid, double wmax) {
  if (!(wmax > 0.0 && wmax <= 0.5))
    throw Error(ErrorCode::Validation, "wmax must lie in (0, 1/2]");
  return gagliardo_impl(f, s, p, grid, wmax);
}

double w12_distance(const PeriodicFunction& f, const PeriodicFunction& g,
                    int grid) {
  if (f.dimension() != g.dimension())
    throw Error(ErrorCode::DimensionMismatch,
                "functions have different target dimensions");
  Eigen::MatrixXd df = f.resample(grid) - g.resample(grid);
  return gagliardo_seminorm(PeriodicFunction(df), 0.5, 2.0, grid).value;
}

Eigen::VectorXd local_mean(const PeriodicFunction& f, double x, double r) {
  if (!(r > 0.0 && r <= 0.5))
    throw Error(ErrorCode::ROutOfRange, "ball radius must lie in (0, 1/2]");
  const int K = 512;  // composite Simpson intervals over the window
  const double a = x - r, h = 2.0 * r / K;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(f.dimension());
  for (int i = 0; i <= K; ++i) {
    double wgt = (i == 0 || i == K) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += wgt * f.at(a + i * h);
  }
  return acc * (h / 3.0) / (2.0 * r);
}

double vmo_modulus(const PeriodicFunction& f, double r) {
  if (!(r > 0.0 && r <= 0.5))
    throw Error(ErrorCode::ROutOfRange, "ball radius must lie in (0, 1/2]");
  const int N = f.sample_count();
  const int K = 512;
  const double h = 2.0 * r / K;
  double sup = 0.0;
  std::vector<Eigen::VectorXd> vals(K + 1);
  for (int c = 0; c < N; ++c) {
    double x = double(c) / N;
    double a = x - r;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(f.dimension());
    for (int i = 0; i <= K; ++i) {
      vals[i] = f.at(a + i * h);
      double wgt = (i == 0 || i == K) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      mean += wgt * vals[i];
    }
    mean *= (h / 3.0) / (2.0 * r);
    // trapezoid for the absolute deviation (integrand has kinks)
    KahanSum dev;
    for (int i = 0; i <= K; ++i) {
      double wgt = (i == 0 || i == K) ? 0.5 : 1.0;
      dev.add(wgt * (vals[i] - mean).norm());
    }
    sup = std::max(sup, dev.value() * h / (2.0 * r));
  }
  return sup;
}

}  // namespace knot
