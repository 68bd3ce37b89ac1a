#include "knot/curve.hpp"

#include <algorithm>
#include <cmath>

#include "knot/errors.hpp"

namespace knot {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate_samples(const Eigen::MatrixXd& samples) {
  const int N = static_cast<int>(samples.rows());
  const int d = static_cast<int>(samples.cols());
  if (!is_pow2(N) || N < 16)
    throw Error(ErrorCode::Validation,
                "sample count must be a power of two, at least 16");
  if (d < 2 || d > 8)
    throw Error(ErrorCode::Validation, "dimension must be between 2 and 8");
  if (!samples.allFinite())
    throw Error(ErrorCode::Validation, "samples must be finite");
}

// Fritsch-Carlson slopes for a monotone cubic through (x_i, y_i)
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), m(n);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  m[0] = delta[0];
  m[n - 1] = delta[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      m[i] = 0.0;
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  return m;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& m, double xq) {
  auto it = std::upper_bound(x.begin(), x.end(), xq);
  size_t i = (it == x.begin()) ? 0 : (it - x.begin() - 1);
  if (i >= x.size() - 1) i = x.size() - 2;
  double h = x[i + 1] - x[i];
  double s = (xq - x[i]) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  double h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s);
  double h11 = s * s * (s - 1);
  return h00 * y[i] + h10 * h * m[i] + h01 * y[i + 1] + h11 * h * m[i + 1];
}

}  // namespace

ClosedCurve::ClosedCurve(Eigen::MatrixXd samples, std::string source)
    : samples_(std::move(samples)), source_(std::move(source)) {
  validate_samples(samples_);
  interp_ = TrigInterpolant(samples_);
  const Eigen::VectorXd v = speeds(2 * sample_count());
  unit_speed_dev_ = (v.array() - 1.0).abs().maxCoeff();
  unit_speed_ = unit_speed_dev_ <= 1e-6;
}

ClosedCurve ClosedCurve::circle(int N, double radius) {
  Eigen::MatrixXd s(N, 2);
  for (int j = 0; j < N; ++j) {
    double th = 2.0 * M_PI * j / N;
    s(j, 0) = radius * std::cos(th);
    s(j, 1) = radius * std::sin(th);
  }
  return ClosedCurve(std::move(s), "circle");
}

ClosedCurve ClosedCurve::ellipse(int N, double a, double b) {
  Eigen::MatrixXd s(N, 2);
  for (int j = 0; j < N; ++j) {
    double th = 2.0 * M_PI * j / N;
    s(j, 0) = a * std::cos(th);
    s(j, 1) = b * std::sin(th);
  }
  return ClosedCurve(std::move(s), "ellipse");
}

ClosedCurve ClosedCurve::torus_knot(int N, int p, int q, double R, double r) {
  if (p < 1 || q < 1)
    throw Error(ErrorCode::BadCurveSpec, "torus knot winding numbers must be >= 1");
  Eigen::MatrixXd s(N, 3);
  for (int j = 0; j < N; ++j) {
    double t = double(j) / N;
    double wp = 2.0 * M_PI * p * t, wq = 2.0 * M_PI * q * t;
    s(j, 0) = (R + r * std::cos(wq)) * std::cos(wp);
    s(j, 1) = (R + r * std::cos(wq)) * std::sin(wp);
    s(j, 2) = r * std::sin(wq);
  }
  return ClosedCurve(std::move(s), "torus_knot");
}

ClosedCurve ClosedCurve::lacunary(int N, int K, double decay) {
  if (K < 1 || decay <= 0.0 || decay >= 1.0)
    throw Error(ErrorCode::BadCurveSpec, "lacunary needs K >= 1, decay in (0,1)");
  if ((1 << K) >= N / 2)
    throw Error(ErrorCode::BadCurveSpec,
                "lacunary frequency 2^K must stay below N/2");
  Eigen::MatrixXd s(N, 2);
  const double golden = 0.61803398874989484820;
  for (int j = 0; j < N; ++j) {
    double t = double(j) / N;
    double x = std::cos(2.0 * M_PI * t) / (2.0 * M_PI);
    double y = std::sin(2.0 * M_PI * t) / (2.0 * M_PI);
    for (int k = 1; k <= K; ++k) {
      double f = double(1 << k);
      double amp = std::pow(decay, k) / (2.0 * M_PI * f);
      double ph = 2.0 * M_PI * golden * k;
      x += amp * std::cos(2.0 * M_PI * f * t + ph);
      y += amp * std::sin(2.0 * M_PI * f * t + ph);
    }
    s(j, 0) = x;
    s(j, 1) = y;
  }
  return ClosedCurve(std::move(s), "lacunary");
}

ClosedCurve ClosedCurve::from_samples(Eigen::MatrixXd samples,
                                      std::string source) {
  return ClosedCurve(std::move(samples), std::move(source));
}

Eigen::VectorXd ClosedCurve::evaluate(ParamPoint t) const {
  return interp_.at(t.canonical(), 0);
}

Eigen::VectorXd ClosedCurve::derivative(ParamPoint t, int order) const {
  if (order != 1 && order != 2)
    throw Error(ErrorCode::Validation, "derivative order must be 1 or 2");
  return interp_.at(t.canonical(), order);
}

Eigen::VectorXd ClosedCurve::speeds(int M) const {
  if (M <= 0) M = sample_count();
  Eigen::MatrixXd d1 = interp_.resample(M, 1);
  return d1.rowwise().norm();
}

bool ClosedCurve::is_regular() const {
  Eigen::VectorXd v = speeds(2 * sample_count());
  return v.minCoeff() > kRegularRel * v.maxCoeff();
}

ArcLengthMap::ArcLengthMap(const ClosedCurve& curve) {
  const int N = curve.sample_count();
  const int M = 2 * N;  // speed is smooth but not band-limited
  Eigen::MatrixXd d1 = curve.interpolant().resample(M, 1);
  Eigen::MatrixXd v(M, 1);
  for (int j = 0; j < M; ++j) v(j, 0) = d1.row(j).norm();
  const double vmin = v.minCoeff(), vmax = v.maxCoeff();
  if (vmin <= kRegularRel * vmax)
    throw Error(ErrorCode::NonRegular,
                "curve is not regular: sampled speed vanishes");
  speed_interp_ = TrigInterpolant(v);
  const Eigen::MatrixXcd& c = speed_interp_.coefficients();
  length_ = c(0, 0).real();
  anti_coeff_ = Eigen::VectorXcd::Zero(M);
  for (int i = 1; i < M; ++i) {
    int k = (i < M / 2) ? i : i - M;
    if (k == -M / 2) continue;
    anti_coeff_(i) = c(i, 0) / std::complex<double>(0.0, 2.0 * M_PI * k);
  }
  anti_nyquist_ = c(M / 2, 0).real() / (M_PI * M);
  p0_ = 0.0;
  for (int k = 1; k < M / 2; ++k) p0_ += 2.0 * anti_coeff_(k).real();

  // inverse table at the curve's own nodes
  s_nodes_.resize(N + 1);
  t_nodes_.resize(N + 1);
  for (int j = 0; j <= N; ++j) {
    double t = double(j) / N;
    t_nodes_[j] = t;
    s_nodes_[j] = (j == N) ? length_ : (*this)(t);
  }
  s_nodes_[0] = 0.0;
  for (int j = 1; j <= N; ++j)
    if (s_nodes_[j] <= s_nodes_[j - 1])
      throw Error(ErrorCode::NonRegular, "arc length is not strictly increasing");
  slopes_ = pchip_slopes(s_nodes_, t_nodes_);
}

double ArcLengthMap::operator()(double t) const {
  double base = std::floor(t);
  double u = t - base;
  const int M = speed_interp_.sample_count();
  const std::complex<double> w = std::polar(1.0, 2.0 * M_PI * u);
  std::complex<double> wk = w;
  double periodic = 0.0;
  for (int k = 1; k < M / 2; ++k) {
    periodic += 2.0 * (anti_coeff_(k) * wk).real();
    wk *= w;
  }
  periodic += anti_nyquist_ * std::sin(M_PI * M * u);
  return length_ * (u + base) + periodic - p0_;
}

double ArcLengthMap::speed(double t) const {
  return speed_interp_.at(wrap1(t), 0)(0);
}

double ArcLengthMap::inverse(double s) const {
  double base = std::floor(s / length_);
  double s0 = s - base * length_;
  double t = pchip_eval(s_nodes_, t_nodes_, slopes_, s0);
  t = std::clamp(t, 0.0, 1.0);
  // safeguarded Newton on s(t) - s0
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    double f = (*this)(t)-s0;
    if (std::fabs(f) <= 1e-14 * length_) break;
    if (f > 0)
      hi = t;
    else
      lo = t;
    double step = f / std::max(speed(t), 1e-300);
    double tn = t - step;
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    t = tn;
  }
  return wrap1(t + base);
}

double length(const ClosedCurve& curve) {
  // periodic trapezoidal rule = mean of sampled speeds, spectrally accurate
  const int M = 2 * curve.sample_count();
  return curve.speeds(M).mean();
}

ArcLengthMap arc_length_param(const ClosedCurve& curve) {
  return ArcLengthMap(curve);
}

ClosedCurve reparametrize_by_arclength(const ClosedCurve& curve, int M) {
  if (M <= 0) M = curve.sample_count();
  ArcLengthMap s(curve);
  const double L = s.total_length();
  Eigen::MatrixXd out(M, curve.dimension());
  for (int k = 0; k < M; ++k) {
    double t = (k == 0) ? 0.0 : s.inverse(k * L / M);
    out.row(k) = curve.evaluate(t).transpose() / L;
  }
  return ClosedCurve::from_samples(std::move(out), curve.source() + "/arclen");
}

CurveGeometryReport chord_arc_report(const ClosedCurve& curve, int grid) {
  if (grid < 16) throw Error(ErrorCode::Validation, "grid must be >= 16");
  const double L = length(curve);
  Eigen::MatrixXd p = curve.interpolant().resample(
      std::max(grid, curve.sample_count()), 0);
  const int g = static_cast<int>(p.rows());
  double rmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g; ++i) {
    for (int j = i + 1; j < g; ++j) {
      double arc = L * torus_dist(double(i) / g, double(j) / g);
      double chord = (p.row(i) - p.row(j)).norm();
      rmin = std::min(rmin, chord / arc);
    }
  }
  CurveGeometryReport rep;
  rep.length = L;
  rep.bilipschitz_constant = rmin;
  rep.max_distortion = 1.0 / rmin;
  rep.near_degenerate = rmin <= kNearDegenerateThreshold;
  return rep;
}

OpenCurve::OpenCurve(double r_dom, Eigen::MatrixXd samples,
                     Eigen::MatrixXd tangents, std::string source)
    : r_dom_(r_dom),
      samples_(std::move(samples)),
      tangents_(std::move(tangents)),
      source_(std::move(source)) {
  const int M = static_cast<int>(samples_.rows());
  if (r_dom_ <= 0.0) throw Error(ErrorCode::Validation, "r_dom must be > 0");
  if (M < 16) throw Error(ErrorCode::Validation, "open curve needs >= 16 samples");
  if (tangents_.rows() != M || tangents_.cols() != samples_.cols())
    throw Error(ErrorCode::DimensionMismatch, "tangent table shape mismatch");
  const double h = spacing();
  double worst = 0.0;
  for (int i = 0; i + 1 < M; ++i) {
    double chord = (samples_.row(i + 1) - samples_.row(i)).norm();
    worst = std::max(worst, std::fabs(chord - h) / h);
  }
  arc_consistency_ = worst;
  if (worst > 0.05)
    throw Error(ErrorCode::NonRegular,
                "open curve samples are not consistent with arc length");
  // curvature by centered differences of the unit tangents
  curvature_.resize(M);
  for (int i = 0; i < M; ++i) {
    int a = std::max(0, i - 1), b = std::min(M - 1, i + 1);
    curvature_(i) =
        (tangents_.row(b) - tangents_.row(a)).norm() / ((b - a) * h);
  }
}

OpenCurve OpenCurve::line(double r_dom, int M, const Eigen::VectorXd& direction,
                          const Eigen::VectorXd& origin) {
  Eigen::VectorXd u = direction.normalized();
  Eigen::MatrixXd p(M, u.size()), tg(M, u.size());
  for (int i = 0; i < M; ++i) {
    double x = -r_dom + i * (2.0 * r_dom / (M - 1));
    p.row(i) = (origin + x * u).transpose();
    tg.row(i) = u.transpose();
  }
  return OpenCurve(r_dom, std::move(p), std::move(tg), "line");
}

}  // namespace knot
