#include "knot/energy.hpp"

#include <cmath>

#include "knot/errors.hpp"
#include "knot/numerics.hpp"

namespace knot {

namespace {

// node tables transposed to d x M so that point columns are contiguous
struct CurveTable {
  int M = 0;
  int d = 0;
  Eigen::MatrixXd p;    // positions
  Eigen::MatrixXd tau;  // unit tangents
  Eigen::VectorXd v;    // speeds
  Eigen::VectorXd s;    // cumulative arc length at nodes
  Eigen::VectorXd diag_base;  // kappa^2 v^2 per node
  double L = 0.0;

  CurveTable(const ClosedCurve& curve, int grid) {
    M = grid;
    d = curve.dimension();
    Eigen::MatrixXd pr = curve.interpolant().resample(M, 0);
    Eigen::MatrixXd d1 = curve.interpolant().resample(M, 1);
    Eigen::MatrixXd d2 = curve.interpolant().resample(M, 2);
    p = pr.transpose();
    v.resize(M);
    tau.resize(d, M);
    diag_base.resize(M);
    for (int i = 0; i < M; ++i) {
      double sp = d1.row(i).norm();
      v(i) = sp;
      tau.col(i) = d1.row(i).transpose() / sp;
      double g11 = d1.row(i).squaredNorm();
      double g22 = d2.row(i).squaredNorm();
      double g12 = d1.row(i).dot(d2.row(i));
      double cross2 = std::max(0.0, g11 * g22 - g12 * g12);
      double kappa = std::sqrt(cross2) / (sp * sp * sp);
      diag_base(i) = kappa * kappa * sp * sp;
    }
    const double vmin = v.minCoeff(), vmax = v.maxCoeff();
    if (vmin <= kRegularRel * vmax)
      throw Error(ErrorCode::NonRegular, "energy of a non-regular curve");
    // cumulative arc length, spectrally exact at the shared grid
    ArcLengthMap map(curve);
    L = map.total_length();
    s.resize(M);
    for (int i = 0; i < M; ++i) s(i) = map(double(i) / M);
  }

  double chord2(int i, int j) const {
    double acc = 0.0;
    for (int c = 0; c < d; ++c) {
      double t = p(c, j) - p(c, i);
      acc += t * t;
    }
    return acc;
  }

  double arc(int i, int j) const {
    double fwd = s(j) - s(i);
    if (fwd < 0) fwd += L;
    return std::min(fwd, L - fwd);
  }
};

struct TripleSums {
  KahanSum em, e1, e2;
  KahanSum em_c, e1_c, e2_c;  // coarse (stride-2) sums for the remainder
};

// accumulate the three integrands for the pair (i, i+j); returns the
// chord/arc ratio for the embeddedness monitor
double accumulate_pair(const CurveTable& tb, int i, int j, double& em,
                       double& ev1, double& ev2) {
  const int k = (i + j) % tb.M;
  const double c2 = tb.chord2(i, k);
  const double dg = tb.arc(i, k);
  const double vv = tb.v(i) * tb.v(k);
  em = (1.0 / c2 - 1.0 / (dg * dg)) * vv;
  double dtau2 = 0.0, tt = 0.0, ctx = 0.0, cty = 0.0;
  for (int c = 0; c < tb.d; ++c) {
    double a = tb.tau(c, i), b = tb.tau(c, k);
    double t = a - b;
    dtau2 += t * t;
    tt += a * b;
    double ch = tb.p(c, i) - tb.p(c, k);  // gamma(x) - gamma(y)
    ctx += ch * a;
    cty += ch * b;
  }
  ev1 = dtau2 / (2.0 * c2) * vv;
  const double det = tt * c2 - ctx * cty;
  ev2 = 2.0 * det / (c2 * c2) * vv;
  return std::sqrt(c2) / dg;
}

struct TripleResult {
  double em, e1, e2;
  double rem_em, rem_e1, rem_e2;
  double min_ratio;
};

TripleResult closed_triple(const ClosedCurve& curve,
                           const QuadratureSpec& spec) {
  spec.validate();
  const int M = spec.effective_grid(curve.sample_count());
  CurveTable tb(curve, M);
  TripleSums sums;
  double min_ratio = 1.0;
  const int band = spec.band_cells;
  for (int j = 0; j < M; ++j) {
    const bool in_band = (j < band) || (j > M - band);
    const bool in_band_c = (j / 2 < band) || (j / 2 > M / 2 - band);
    if (j == 0) {
      if (spec.policy == DiagonalPolicy::AnalyticLimit) {
        // limits of the three integrands as w -> 0
        for (int i = 0; i < M; ++i) {
          sums.em.add(tb.diag_base(i) / 12.0);
          sums.e1.add(tb.diag_base(i) / 2.0);
          sums.e2.add(-tb.diag_base(i) / 2.0);
          if (i % 2 == 0) {
            sums.em_c.add(tb.diag_base(i) / 12.0);
            sums.e1_c.add(tb.diag_base(i) / 2.0);
            sums.e2_c.add(-tb.diag_base(i) / 2.0);
          }
        }
      }
      continue;
    }
    if (in_band && spec.policy == DiagonalPolicy::ExcludeBand) continue;
    const bool coarse_j = (j % 2 == 0) && !(in_band_c && spec.policy == DiagonalPolicy::ExcludeBand);
    for (int i = 0; i < M; ++i) {
      double em, ev1, ev2;
      double ratio = accumulate_pair(tb, i, j, em, ev1, ev2);
      if (ratio < min_ratio) min_ratio = ratio;
      sums.em.add(em);
      sums.e1.add(ev1);
      sums.e2.add(ev2);
      if (coarse_j && i % 2 == 0) {
        sums.em_c.add(em);
        sums.e1_c.add(ev1);
        sums.e2_c.add(ev2);
      }
    }
  }
  if (min_ratio < kEmbeddedThreshold)
    throw Error(ErrorCode::NonEmbedded,
                "chord/arc ratio " + std::to_string(min_ratio) +
                    " below the embeddedness threshold");
  const double inv = 1.0 / (double(M) * M);
  const double inv_c = 4.0 / (double(M) * M);
  TripleResult r;
  r.em = sums.em.value() * inv;
  r.e1 = sums.e1.value() * inv;
  r.e2 = sums.e2.value() * inv;
  r.rem_em = std::fabs(r.em - sums.em_c.value() * inv_c);
  r.rem_e1 = std::fabs(r.e1 - sums.e1_c.value() * inv_c);
  r.rem_e2 = std::fabs(r.e2 - sums.e2_c.value() * inv_c);
  r.min_ratio = min_ratio;
  return r;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (nx < 64 || nw < 64)
    throw Error(ErrorCode::Validation, "quadrature grids must be >= 64");
  if (policy == DiagonalPolicy::ExcludeBand && band_cells < 1)
    throw Error(ErrorCode::Validation, "band width must be >= 1 cell");
  if (band_cells < 0)
    throw Error(ErrorCode::Validation, "band width must be >= 0");
}

int QuadratureSpec::effective_grid(int curve_samples) const {
  int g = std::max(std::max(nx, nw), curve_samples);
  return (g % 2 == 0) ? g : g + 1;
}

double mobius_energy(const ClosedCurve& curve, const QuadratureSpec& spec) {
  return closed_triple(curve, spec).em;
}

double e1(const ClosedCurve& curve, const QuadratureSpec& spec) {
  return closed_triple(curve, spec).e1;
}

double e2(const ClosedCurve& curve, const QuadratureSpec& spec) {
  return closed_triple(curve, spec).e2;
}

EnergyReport decompose(const ClosedCurve& curve, const QuadratureSpec& spec) {
  TripleResult t = closed_triple(curve, spec);
  EnergyReport rep;
  rep.e_mobius = t.em;
  rep.e1 = t.e1;
  rep.e2 = t.e2;
  rep.residual = t.em - t.e1 - t.e2 - 4.0;
  rep.remainder_mobius = t.rem_em;
  rep.remainder_e1 = t.rem_e1;
  rep.remainder_e2 = t.rem_e2;
  rep.min_chord_arc = t.min_ratio;
  rep.spec = spec;
  return rep;
}

double integrand_I(const ClosedCurve& curve, const ArcLengthMap& arclen,
                   double x, double w) {
  if (w == 0.0)
    throw Error(ErrorCode::Validation, "integrand is evaluated at w != 0");
  Eigen::VectorXd px = curve.evaluate(x);
  Eigen::VectorXd py = curve.evaluate(x + w);
  double c2 = (px - py).squaredNorm();
  double fwd = arclen(x + w) - arclen(x);
  const double L = arclen.total_length();
  fwd -= L * std::floor(fwd / L);
  double dg = std::min(fwd, L - fwd);
  double vx = curve.derivative(x, 1).norm();
  double vy = curve.derivative(x + w, 1).norm();
  return (1.0 / c2 - 1.0 / (dg * dg)) * vx * vy;
}

double integrand_I(const ClosedCurve& curve, double x, double w) {
  ArcLengthMap arclen(curve);
  return integrand_I(curve, arclen, x, w);
}

double integrand_majorant(const ClosedCurve& curve, double x, double w) {
  if (std::fabs(w) > 0.25)
    throw Error(ErrorCode::Validation, "majorant is defined for |w| <= 1/4");
  Eigen::MatrixXd g(curve.dimension(), 8);
  for (int a = 0; a < 8; ++a)
    g.col(a) = curve.derivative(x + Gauss8::nodes[a] * w, 1);
  double acc = 0.0;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      acc += Gauss8::weights[a] * Gauss8::weights[b] *
             (g.col(a) - g.col(b)).squaredNorm();
  return acc / (w * w);
}

double pairing_defect(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.norm() * b.norm() - a.dot(b);
}

namespace {

struct OpenTriple {
  OpenEnergyResult em, e1, e2;
};

OpenTriple open_triple(const OpenCurve& curve, double window) {
  const int M = curve.sample_count();
  const int d = curve.dimension();
  if (window <= 0.0) window = curve.r_dom();
  if (window > curve.r_dom() + 1e-12)
    throw Error(ErrorCode::Validation, "window exceeds the curve domain");
  Eigen::MatrixXd p = curve.samples().transpose();
  Eigen::MatrixXd tau = curve.tangents().transpose();
  const double h = curve.spacing();
  // energies over the full window and the half window in one pass
  KahanSum full[3], half[3];
  const double halfw = 0.5 * window;
  for (int i = 0; i < M; ++i) {
    double si = curve.arc_position(i);
    if (std::fabs(si) > window + 1e-12) continue;
    double wi = (std::fabs(std::fabs(si) - window) < h / 2) ? 0.5 : 1.0;
    bool i_half = std::fabs(si) <= halfw + 1e-12;
    double wi_h = (i_half && std::fabs(std::fabs(si) - halfw) < h / 2) ? 0.5 : wi;
    for (int j = 0; j < M; ++j) {
      double sj = curve.arc_position(j);
      if (std::fabs(sj) > window + 1e-12) continue;
      double wj = (std::fabs(std::fabs(sj) - window) < h / 2) ? 0.5 : 1.0;
      double em, ev1, ev2;
      if (i == j) {
        double k2 = curve.curvature()(i) * curve.curvature()(i);
        em = k2 / 12.0;
        ev1 = k2 / 2.0;
        ev2 = -k2 / 2.0;
      } else {
        double c2 = 0.0, dtau2 = 0.0, tt = 0.0, ctx = 0.0, cty = 0.0;
        for (int c = 0; c < d; ++c) {
          double ch = p(c, i) - p(c, j);
          c2 += ch * ch;
          double a = tau(c, i), b = tau(c, j);
          dtau2 += (a - b) * (a - b);
          tt += a * b;
          ctx += ch * a;
          cty += ch * b;
        }
        double dx = si - sj;
        em = 1.0 / c2 - 1.0 / (dx * dx);
        ev1 = dtau2 / (2.0 * c2);
        ev2 = 2.0 * (tt * c2 - ctx * cty) / (c2 * c2);
      }
      double wgt = wi * wj;
      full[0].add(wgt * em);
      full[1].add(wgt * ev1);
      full[2].add(wgt * ev2);
      if (i_half && std::fabs(sj) <= halfw + 1e-12) {
        double wj_h =
            (std::fabs(std::fabs(sj) - halfw) < h / 2) ? 0.5 : wj;
        double wgt_h = wi_h * wj_h;
        half[0].add(wgt_h * em);
        half[1].add(wgt_h * ev1);
        half[2].add(wgt_h * ev2);
      }
    }
  }
  OpenTriple r;
  OpenEnergyResult* outs[3] = {&r.em, &r.e1, &r.e2};
  for (int q = 0; q < 3; ++q) {
    outs[q]->value = full[q].value() * h * h;
    outs[q]->tail_estimate =
        std::fabs(full[q].value() - half[q].value()) * h * h;
  }
  return r;
}

}  // namespace

OpenEnergyResult mobius_energy_open(const OpenCurve& curve, double window) {
  return open_triple(curve, window).em;
}

OpenEnergyResult e1_open(const OpenCurve& curve, double window) {
  return open_triple(curve, window).e1;
}

OpenEnergyResult e2_open(const OpenCurve& curve, double window) {
  return open_triple(curve, window).e2;
}

}  // namespace knot
