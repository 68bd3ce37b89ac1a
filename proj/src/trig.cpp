#include "knot/trig.hpp"

#include <unsupported/Eigen/FFT>

#include "knot/errors.hpp"
#include "knot/numerics.hpp"

namespace knot {

namespace {

inline int freq_of_index(int i, int N) { return (i < N / 2) ? i : i - N; }

}  // namespace

TrigInterpolant::TrigInterpolant(const Eigen::MatrixXd& samples) {
  const int N = static_cast<int>(samples.rows());
  const int d = static_cast<int>(samples.cols());
  if (N < 2 || N % 2 != 0)
    throw Error(ErrorCode::Validation, "sample count must be even and >= 2");
  coeff_.resize(N, d);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(N), out(N);
  for (int c = 0; c < d; ++c) {
    for (int j = 0; j < N; ++j) in[j] = samples(j, c);
    fft.fwd(out, in);
    for (int j = 0; j < N; ++j) coeff_(j, c) = out[j] / double(N);
  }
}

Eigen::VectorXd TrigInterpolant::at(double t, int order) const {
  const int N = sample_count();
  const int d = dimension();
  if (order < 0 || order > 2)
    throw Error(ErrorCode::Validation, "derivative order must be 0, 1 or 2");
  // real signal: c_{-k} = conj(c_k); each pair contributes 2 Re(f c_k w^k)
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(d);
  const std::complex<double> w = std::polar(1.0, 2.0 * M_PI * t);
  std::complex<double> wk = w;
  for (int k = 1; k < N / 2; ++k) {
    std::complex<double> f = 1.0;
    const std::complex<double> ik(0.0, 2.0 * M_PI * k);
    for (int o = 0; o < order; ++o) f *= ik;
    acc += 2.0 * f * wk * coeff_.row(k).transpose();
    wk *= w;
  }
  // Nyquist mode as C cos(pi N t); C is real for real input
  double ny;
  switch (order) {
    case 0: ny = std::cos(M_PI * N * t); break;
    case 1: ny = -M_PI * N * std::sin(M_PI * N * t); break;
    default: ny = -(M_PI * N) * (M_PI * N) * std::cos(M_PI * N * t); break;
  }
  Eigen::VectorXd res(d);
  for (int c = 0; c < d; ++c) {
    double mean = (order == 0) ? coeff_(0, c).real() : 0.0;
    res(c) = mean + acc(c).real() + coeff_(N / 2, c).real() * ny;
  }
  return res;
}

Eigen::MatrixXd TrigInterpolant::resample(int M, int order) const {
  const int N = sample_count();
  const int d = dimension();
  if (M < N || M % 2 != 0)
    throw Error(ErrorCode::Validation, "resample target must be even, >= N");
  Eigen::MatrixXcd cm = Eigen::MatrixXcd::Zero(M, d);
  for (int i = 0; i < N; ++i) {
    int k = freq_of_index(i, N);
    if (k == -N / 2) {
      if (M > N) {
        // split Nyquist symmetrically between +-N/2
        for (int kk : {N / 2, -(N / 2)}) {
          std::complex<double> f = 1.0;
          const std::complex<double> ik(0.0, 2.0 * M_PI * kk);
          for (int o = 0; o < order; ++o) f *= ik;
          int idx = kk >= 0 ? kk : kk + M;
          cm.row(idx) += 0.5 * f * coeff_.row(i);
        }
      } else {
        // shared grid: cos(pi N t) convention
        if (order == 0) {
          cm.row(i) += coeff_.row(i);
        } else if (order == 2) {
          cm.row(i) += -(M_PI * N) * (M_PI * N) * coeff_.row(i);
        }  // order 1: vanishes at the nodes
      }
    } else {
      std::complex<double> f = 1.0;
      const std::complex<double> ik(0.0, 2.0 * M_PI * k);
      for (int o = 0; o < order; ++o) f *= ik;
      int idx = k >= 0 ? k : k + M;
      cm.row(idx) += f * coeff_.row(i);
    }
  }
  return synthesize(cm);
}

Eigen::MatrixXd TrigInterpolant::synthesize(const Eigen::MatrixXcd& coeff) {
  const int M = static_cast<int>(coeff.rows());
  const int d = static_cast<int>(coeff.cols());
  Eigen::MatrixXd out(M, d);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(M), res(M);
  for (int c = 0; c < d; ++c) {
    for (int j = 0; j < M; ++j) in[j] = coeff(j, c) * double(M);
    fft.inv(res, in);
    for (int j = 0; j < M; ++j) out(j, c) = res[j].real();
  }
  return out;
}

}  // namespace knot
