#include "knot/inversion.hpp"

#include <cmath>

#include "knot/errors.hpp"
#include "knot/numerics.hpp"

namespace knot {

SphereInversion::SphereInversion(Eigen::VectorXd c, double r)
    : center(std::move(c)), radius(r) {
  if (!(radius > 0.0))
    throw Error(ErrorCode::Validation, "inversion radius must be positive");
}

Eigen::VectorXd SphereInversion::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd d = x - center;
  double q = d.squaredNorm();
  if (q < 1e-24)
    throw Error(ErrorCode::CenterHit, "point coincides with the inversion center");
  return center + (radius * radius / q) * d;
}

Eigen::VectorXd SphereInversion::push_tangent(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& v) const {
  Eigen::VectorXd d = x - center;
  double q = d.squaredNorm();
  if (q < 1e-24)
    throw Error(ErrorCode::CenterHit, "tangent pushed at the inversion center");
  return (radius * radius / q) * (v - (2.0 * d.dot(v) / q) * d);
}

double SphereInversion::scale_at(const Eigen::VectorXd& x) const {
  double q = (x - center).squaredNorm();
  if (q < 1e-24)
    throw Error(ErrorCode::CenterHit, "scale at the inversion center");
  return radius * radius / q;
}

ClosedCurve invert_closed(const ClosedCurve& curve,
                          const SphereInversion& inv) {
  if (inv.center.size() != curve.dimension())
    throw Error(ErrorCode::DimensionMismatch,
                "inversion center dimension mismatch");
  const int N = curve.sample_count();
  const double L = length(curve);
  const double spacing = L / N;
  // probe distance to the curve on a refined grid
  Eigen::MatrixXd fine = curve.interpolant().resample(4 * N, 0);
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < fine.rows(); ++i)
    dmin = std::min(dmin, (fine.row(i).transpose() - inv.center).norm());
  if (dmin < 10.0 * spacing)
    throw Error(ErrorCode::CenterTooClose,
                "inversion center within 10 sample spacings of the curve");
  Eigen::MatrixXd img(N, curve.dimension());
  for (int j = 0; j < N; ++j)
    img.row(j) = inv.apply(curve.samples().row(j).transpose()).transpose();
  ClosedCurve out =
      ClosedCurve::from_samples(std::move(img), curve.source() + "/inverted");
  CurveGeometryReport rep = chord_arc_report(out, N);
  if (rep.bilipschitz_constant < kEmbeddedThreshold)
    throw Error(ErrorCode::NonEmbedded, "inverted curve fails the chord/arc check");
  return out;
}

OpenCurve invert_centered_on_curve(const ClosedCurve& curve, double t0,
                                   double radius, double r_dom, int samples) {
  if (!(r_dom > 0.0))
    throw Error(ErrorCode::Validation, "r_dom must be positive");
  if (samples < 64)
    throw Error(ErrorCode::Validation, "open image needs >= 64 samples");
  if (!curve.is_regular())
    throw Error(ErrorCode::NonRegular, "inversion of a non-regular curve");
  const int N = curve.sample_count();
  const int d = curve.dimension();
  const Eigen::VectorXd c = curve.evaluate(t0);
  const double r2 = radius * radius;

  // shift the parameter so the cut point sits at u = 0, then place a fine
  // grid on (0, 1); sigma is the image arc length measured from u = 1/2
  Eigen::MatrixXcd coeff = curve.interpolant().coefficients();
  for (int i = 0; i < N; ++i) {
    int k = (i < N / 2) ? i : i - N;
    coeff.row(i) *= std::polar(1.0, 2.0 * M_PI * k * t0);
  }
  // Nyquist phase: t0-shift of cos(pi N t) leaves the split convention;
  // treat it like the generic modes via the +N/2 representative above.
  Eigen::MatrixXd shifted = TrigInterpolant::synthesize(coeff);
  TrigInterpolant interp(shifted);

  // composite-Simpson cumulative arc length of the image on a fine grid;
  // only differences away from the cut are used, so the (singular) first
  // cell never enters
  const int GF = 1 << 18;
  const int G = GF / 2;
  Eigen::MatrixXd pos = interp.resample(GF, 0);
  Eigen::MatrixXd der = interp.resample(GF, 1);
  Eigen::VectorXd img_speed(GF);
  for (int g = 0; g < GF; ++g) {
    double q = (pos.row(g).transpose() - c).squaredNorm();
    img_speed(g) = (g == 0) ? 0.0 : r2 * der.row(g).norm() / q;
  }
  std::vector<double> sigma(G, 0.0);
  for (int g = 1; g < G; ++g)
    sigma[g] = sigma[g - 1] + (img_speed(2 * g - 2) + 4.0 * img_speed(2 * g - 1) +
                               img_speed(2 * g)) / (3.0 * GF);
  const double mid = sigma[G / 2];
  const double delta_min = 2.0 / N;  // interpolation resolution floor
  const int g_lo = static_cast<int>(std::ceil(delta_min * G));
  const int g_hi = G - g_lo;
  if (sigma[g_hi] - mid < r_dom || mid - sigma[g_lo] < r_dom)
    throw Error(ErrorCode::DomainTooLarge,
                "requested window needs points inside the excluded "
                "neighborhood of the inversion center");

  auto sigma_exact = [&](int g, double u) {
    // sigma at parameter u in [g/G, (g+1)/G), Gauss-corrected from node g
    double base = sigma[g] - mid;
    double a = double(g) / G;
    double acc = 0.0;
    for (int q8 = 0; q8 < 8; ++q8) {
      double uu = a + Gauss8::nodes[q8] * (u - a);
      Eigen::VectorXd pp = interp.at(uu, 0);
      Eigen::VectorXd dd = interp.at(uu, 1);
      acc += Gauss8::weights[q8] * r2 * dd.norm() /
             (pp - c).squaredNorm();
    }
    return base + acc * (u - a);
  };

  Eigen::MatrixXd P(samples, d), T(samples, d);
  const double h = 2.0 * r_dom / (samples - 1);
  int g = g_lo;
  for (int k = 0; k < samples; ++k) {
    double target = -r_dom + k * h;
    while (g + 1 < g_hi && sigma[g + 1] - mid < target) ++g;
    // Newton on sigma(u) - target within [g/G, (g+1)/G]
    double u = double(g) / G;
    double frac = (target - (sigma[g] - mid)) /
                  std::max(sigma[g + 1] - sigma[g], 1e-300);
    u += std::clamp(frac, 0.0, 1.0) / G;
    for (int it = 0; it < 8; ++it) {
      double f = sigma_exact(g, u) - target;
      Eigen::VectorXd pp = interp.at(u, 0);
      Eigen::VectorXd dd = interp.at(u, 1);
      double sp = r2 * dd.norm() / (pp - c).squaredNorm();
      double un = u - f / sp;
      un = std::clamp(un, double(g) / G, double(g + 2) / G);
      if (std::fabs(un - u) < 1e-16) { u = un; break; }
      u = un;
    }
    Eigen::VectorXd x = interp.at(u, 0);
    Eigen::VectorXd v = interp.at(u, 1);
    Eigen::VectorXd dxc = x - c;
    double q = dxc.squaredNorm();
    P.row(k) = (c + (r2 / q) * dxc).transpose();
    Eigen::VectorXd w = v - (2.0 * dxc.dot(v) / q) * dxc;
    T.row(k) = w.transpose() / w.norm();
  }
  return OpenCurve(r_dom, std::move(P), std::move(T),
                   curve.source() + "/inverted-open");
}

}  // namespace knot
