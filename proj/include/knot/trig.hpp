#pragma once

#include <Eigen/Dense>
#include <complex>

namespace knot {

// Trigonometric interpolant of a real vector-valued 1-periodic function given
// by N uniform samples (N even). The Nyquist mode is represented as the real
// combination cos(pi N t), which reproduces the samples and keeps the
// interpolant real; its odd derivatives vanish at the nodes.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  explicit TrigInterpolant(const Eigen::MatrixXd& samples);

  int sample_count() const { return static_cast<int>(coeff_.rows()); }
  int dimension() const { return static_cast<int>(coeff_.cols()); }

  // value / derivative of given order (0, 1 or 2) at arbitrary parameter t
  Eigen::VectorXd at(double t, int order = 0) const;

  // values of the interpolant (or its derivative) at M uniform nodes,
  // computed by zero-padded FFT; M must be even, M >= N
  Eigen::MatrixXd resample(int M, int order = 0) const;

  // complex Fourier coefficients, FFT index order (0..N/2-1, -N/2..-1)
  const Eigen::MatrixXcd& coefficients() const { return coeff_; }

  // rebuild samples from (possibly modified) coefficients
  static Eigen::MatrixXd synthesize(const Eigen::MatrixXcd& coeff);

 private:
  Eigen::MatrixXcd coeff_;  // (N x d), c_k = (1/N) sum_j f_j e^{-2pi i kj/N}
};

}  // namespace knot
