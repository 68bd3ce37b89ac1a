#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "knot/numerics.hpp"
#include "knot/trig.hpp"

namespace knot {

// parameter on R/Z; canonical representative in [0,1)
struct ParamPoint {
  double t = 0.0;
  ParamPoint(double v) : t(v) {}
  double canonical() const { return wrap1(t); }
};

// min sampled speed must exceed this fraction of the max sampled speed
inline constexpr double kRegularRel = 1e-8;
// chord/arc ratio below which a curve is rejected as non-embedded
inline constexpr double kEmbeddedThreshold = 1e-3;
// chord/arc ratio below which the geometry report raises a warning
inline constexpr double kNearDegenerateThreshold = 1e-2;

// Closed curve R/Z -> R^d given by N uniform samples (N a power of two,
// N >= 16) with trigonometric interpolation. Immutable after construction.
class ClosedCurve {
 public:
  ClosedCurve(Eigen::MatrixXd samples, std::string source);

  static ClosedCurve circle(int N, double radius = 1.0 / (2.0 * M_PI));
  static ClosedCurve ellipse(int N, double a = 1.0 / M_PI,
                             double b = 1.0 / (2.0 * M_PI));
  static ClosedCurve torus_knot(int N, int p = 2, int q = 3, double R = 2.0,
                                double r = 1.0);
  static ClosedCurve lacunary(int N, int K = 4, double decay = 0.4);
  static ClosedCurve from_samples(Eigen::MatrixXd samples,
                                  std::string source = "samples");

  int sample_count() const { return static_cast<int>(samples_.rows()); }
  int dimension() const { return static_cast<int>(samples_.cols()); }
  const Eigen::MatrixXd& samples() const { return samples_; }
  const TrigInterpolant& interpolant() const { return interp_; }
  const std::string& source() const { return source_; }

  Eigen::VectorXd evaluate(ParamPoint t) const;
  Eigen::VectorXd derivative(ParamPoint t, int order = 1) const;

  // |gamma'| at M uniform nodes (M defaults to the sample count)
  Eigen::VectorXd speeds(int M = 0) const;

  bool unit_speed() const { return unit_speed_; }
  // measured sup ||gamma'| - 1| over a dense grid
  double unit_speed_deviation() const { return unit_speed_dev_; }

  bool is_regular() const;

 private:
  Eigen::MatrixXd samples_;
  TrigInterpolant interp_;
  std::string source_;
  bool unit_speed_ = false;
  double unit_speed_dev_ = 0.0;
};

// Cumulative arc length s: [0,1] -> [0,L] of a regular closed curve,
// evaluated spectrally; strictly increasing, s(0) = 0, s(1) = L.
class ArcLengthMap {
 public:
  explicit ArcLengthMap(const ClosedCurve& curve);

  double total_length() const { return length_; }
  double operator()(double t) const;  // s(t), extended by s(t+1) = s(t)+L
  double speed(double t) const;
  double inverse(double s) const;  // monotone inverse, t in [0,1)

 private:
  TrigInterpolant speed_interp_;
  Eigen::VectorXcd anti_coeff_;  // antiderivative coefficients of speed
  double anti_nyquist_ = 0.0;
  double p0_ = 0.0;  // periodic part at t = 0
  double length_ = 0.0;
  // monotone cubic (Fritsch-Carlson) inverse table for the initial guess
  std::vector<double> s_nodes_, t_nodes_, slopes_;
};

struct CurveGeometryReport {
  double length = 0.0;
  double bilipschitz_constant = 0.0;  // min chord/arc over probed pairs
  double max_distortion = 0.0;        // 1 / bilipschitz_constant
  bool near_degenerate = false;
};

double length(const ClosedCurve& curve);

ArcLengthMap arc_length_param(const ClosedCurve& curve);

// Unit-length, unit-speed representative with gamma~(0) = gamma(0)/L.
// M = 0 keeps the input sample count.
ClosedCurve reparametrize_by_arclength(const ClosedCurve& curve, int M = 0);

// chord/arc extremes over all pairs of a uniform probe grid (unit-speed
// curves; intrinsic distance is L * torus distance of the parameters)
CurveGeometryReport chord_arc_report(const ClosedCurve& curve, int grid = 512);

// Open arc-length-parametrized curve on [-r_dom, r_dom], sampled uniformly;
// tangents are unit vectors, curvature is per-sample.
class OpenCurve {
 public:
  OpenCurve(double r_dom, Eigen::MatrixXd samples, Eigen::MatrixXd tangents,
            std::string source);

  static OpenCurve line(double r_dom, int M, const Eigen::VectorXd& direction,
                        const Eigen::VectorXd& origin);

  int sample_count() const { return static_cast<int>(samples_.rows()); }
  int dimension() const { return static_cast<int>(samples_.cols()); }
  double r_dom() const { return r_dom_; }
  double spacing() const { return 2.0 * r_dom_ / (sample_count() - 1); }
  double arc_position(int i) const { return -r_dom_ + i * spacing(); }
  const Eigen::MatrixXd& samples() const { return samples_; }
  const Eigen::MatrixXd& tangents() const { return tangents_; }
  const Eigen::VectorXd& curvature() const { return curvature_; }
  const std::string& source() const { return source_; }
  // measured max relative gap between chord spacing and the arc step
  double arc_consistency() const { return arc_consistency_; }

 private:
  double r_dom_ = 0.0;
  Eigen::MatrixXd samples_;
  Eigen::MatrixXd tangents_;
  Eigen::VectorXd curvature_;
  std::string source_;
  double arc_consistency_ = 0.0;
};

}  // namespace knot
