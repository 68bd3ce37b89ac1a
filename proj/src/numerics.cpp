#include "knot/numerics.hpp"

namespace knot {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int n) {
  if (n % 2) ++n;
  double h = (b - a) / n;
  KahanSum s;
  s.add(f(a));
  s.add(f(b));
  for (int i = 1; i < n; ++i) s.add(f(a + i * h) * (i % 2 ? 4.0 : 2.0));
  return s.value() * h / 3.0;
}

const double Gauss8::nodes[8] = {
    0.019855071751231884, 0.101666761293186630, 0.237233795041835507,
    0.408282678752175098, 0.591717321247824902, 0.762766204958164493,
    0.898333238706813370, 0.980144928248768116};
const double Gauss8::weights[8] = {
    0.050614268145188130, 0.111190517226687235, 0.156853322938943644,
    0.181341891689180991, 0.181341891689180991, 0.156853322938943644,
    0.111190517226687235, 0.050614268145188130};

}  // namespace knot
