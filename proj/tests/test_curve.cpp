#include <doctest.h>

#include <cmath>
#include <random>

#include "knot/curve.hpp"
#include "knot/errors.hpp"
#include "knot/numerics.hpp"

using namespace knot;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// adaptive-quadrature oracle for the length of the analytic ellipse,
// independent of the spectral pipeline
double ellipse_length_oracle(double a, double b) {
  return adaptive_simpson(
      [&](double t) {
        double x = -a * kTwoPi * std::sin(kTwoPi * t);
        double y = b * kTwoPi * std::cos(kTwoPi * t);
        return std::hypot(x, y);
      },
      0.0, 1.0, 1e-13);
}

// samples of a curve with a genuine zero-speed point at t = 0:
// angle theta(t) = 2 pi t - sin(2 pi t) has theta'(0) = 0
ClosedCurve cusp_curve(int N) {
  Eigen::MatrixXd s(N, 2);
  for (int j = 0; j < N; ++j) {
    double t = double(j) / N;
    double th = kTwoPi * t - std::sin(kTwoPi * t);
    s(j, 0) = std::cos(th) / kTwoPi;
    s(j, 1) = std::sin(th) / kTwoPi;
  }
  return ClosedCurve::from_samples(std::move(s), "cusp");
}

}  // namespace

TEST_CASE("circle evaluation and closed forms") {
  ClosedCurve c1 = ClosedCurve::circle(64);
  Eigen::VectorXd p0 = c1.evaluate(0.0);
  CHECK(p0(0) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-14));
  CHECK(p0(1) == doctest::Approx(0.0).epsilon(1e-14));

  // periodicity
  Eigen::VectorXd a = c1.evaluate(1.25), b = c1.evaluate(0.25);
  CHECK((a - b).norm() < 1e-13);

  // interpolation exactness at the nodes
  ClosedCurve lac = ClosedCurve::lacunary(64);
  for (int j : {0, 5, 17, 63}) {
    Eigen::VectorXd v = lac.evaluate(double(j) / 64);
    CHECK((v.transpose() - lac.samples().row(j)).norm() < 1e-12);
  }
}

TEST_CASE("derivatives") {
  ClosedCurve c1 = ClosedCurve::circle(64);
  Eigen::VectorXd d0 = c1.derivative(0.0, 1);
  CHECK(d0(0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(d0(1) == doctest::Approx(1.0).epsilon(1e-13));

  for (double t : {0.0, 0.1, 0.37, 0.5, 0.93})
    CHECK(std::fabs(c1.derivative(t, 1).norm() - 1.0) < 1e-12);

  // constant curve has zero derivative
  Eigen::MatrixXd flat = Eigen::MatrixXd::Ones(16, 2);
  TrigInterpolant ti(flat);
  CHECK(ti.at(0.3, 1).norm() < 1e-13);
}

TEST_CASE("spectral exactness on band-limited samples") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const int N = 64;
  // random trig polynomial with modes up to 5
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(N, 2);
  std::vector<double> ac(6), bc(6), ac2(6), bc2(6);
  for (int k = 0; k <= 5; ++k) {
    ac[k] = amp(rng); bc[k] = amp(rng); ac2[k] = amp(rng); bc2[k] = amp(rng);
  }
  auto fx = [&](double t, int deriv) {
    double v = 0.0;
    for (int k = 0; k <= 5; ++k) {
      double w = kTwoPi * k;
      if (deriv == 0)
        v += ac[k] * std::cos(w * t) + bc[k] * std::sin(w * t);
      else
        v += -ac[k] * w * std::sin(w * t) + bc[k] * w * std::cos(w * t);
    }
    return v;
  };
  auto fy = [&](double t, int deriv) {
    double v = 0.0;
    for (int k = 0; k <= 5; ++k) {
      double w = kTwoPi * k;
      if (deriv == 0)
        v += ac2[k] * std::cos(w * t) + bc2[k] * std::sin(w * t);
      else
        v += -ac2[k] * w * std::sin(w * t) + bc2[k] * w * std::cos(w * t);
    }
    return v;
  };
  for (int j = 0; j < N; ++j) {
    s(j, 0) = fx(double(j) / N, 0);
    s(j, 1) = fy(double(j) / N, 0);
  }
  TrigInterpolant ti(s);
  for (double t : {0.0, 0.123, 0.5, 0.777}) {
    CHECK(std::fabs(ti.at(t, 0)(0) - fx(t, 0)) < 1e-10);
    CHECK(std::fabs(ti.at(t, 1)(0) - fx(t, 1)) < 1e-10);
    CHECK(std::fabs(ti.at(t, 1)(1) - fy(t, 1)) < 1e-10);
  }
}

TEST_CASE("length") {
  ClosedCurve c1 = ClosedCurve::circle(128);
  CHECK(std::fabs(length(c1) - 1.0) < 1e-10);

  double a = 1.0 / M_PI, b = 1.0 / kTwoPi;
  ClosedCurve ell = ClosedCurve::ellipse(512, a, b);
  CHECK(std::fabs(length(ell) - ellipse_length_oracle(a, b)) < 1e-8);

  // homogeneity under scaling
  ClosedCurve scaled =
      ClosedCurve::from_samples(3.0 * ell.samples(), "ellipse*3");
  CHECK(length(scaled) == doctest::Approx(3.0 * length(ell)).epsilon(1e-12));
}

TEST_CASE("arc length map") {
  ClosedCurve c1 = ClosedCurve::circle(64);
  ArcLengthMap s = arc_length_param(c1);
  CHECK(std::fabs(s.total_length() - 1.0) < 1e-12);
  for (double t : {0.1, 0.25, 0.8})
    CHECK(std::fabs(s(t) - t) < 1e-10);
  CHECK(std::fabs(s(0.0)) < 1e-14);

  // constant speed 2: a circle of circumference 2 traversed once
  ClosedCurve big = ClosedCurve::circle(64, 1.0 / M_PI);
  ArcLengthMap s2 = arc_length_param(big);
  CHECK(std::fabs(s2.total_length() - 2.0) < 1e-12);
  CHECK(std::fabs(s2(0.25) - 0.5) < 1e-10);
  CHECK(std::fabs(s2.inverse(1.0) - 0.5) < 1e-12);

  CHECK_THROWS_AS(arc_length_param(cusp_curve(128)), Error);
}

TEST_CASE("reparametrize by arc length") {
  ClosedCurve c1 = ClosedCurve::circle(128);
  ClosedCurve r1 = reparametrize_by_arclength(c1);
  CHECK((r1.samples() - c1.samples()).cwiseAbs().maxCoeff() < 1e-9);

  // mollified circle stays a circle; after normalization it is unit speed
  {
    ClosedCurve ell = ClosedCurve::ellipse(512);
    ClosedCurve re = reparametrize_by_arclength(ell);
    CHECK(re.unit_speed_deviation() <= 1e-6);
    CHECK(std::fabs(length(re) - 1.0) < 1e-9);
    CHECK(re.evaluate(0.0).isApprox(ell.evaluate(0.0) / length(ell), 1e-10));

    // idempotence
    ClosedCurve re2 = reparametrize_by_arclength(re);
    CHECK((re2.samples() - re.samples()).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("chord/arc geometry report") {
  ClosedCurve c1 = ClosedCurve::circle(256);
  CurveGeometryReport rep = chord_arc_report(c1, 256);
  CHECK(rep.bilipschitz_constant == doctest::Approx(2.0 / M_PI).epsilon(1e-6));
  CHECK(rep.max_distortion == doctest::Approx(M_PI / 2.0).epsilon(1e-6));
  CHECK(rep.max_distortion >= 1.0);
  CHECK(!rep.near_degenerate);

  // nearly self-touching: a very flat ellipse
  ClosedCurve flat = reparametrize_by_arclength(
      ClosedCurve::ellipse(512, 1.0 / M_PI, 1e-4 / M_PI));
  CurveGeometryReport bad = chord_arc_report(flat, 256);
  CHECK(bad.near_degenerate);

  // probe pairs of a unit-speed embedded curve stay in (0, 1]
  ClosedCurve tref =
      reparametrize_by_arclength(ClosedCurve::torus_knot(256));
  CurveGeometryReport tr = chord_arc_report(tref, 128);
  CHECK(tr.bilipschitz_constant > 0.0);
  CHECK(tr.bilipschitz_constant <= 1.0 + 1e-12);
}
