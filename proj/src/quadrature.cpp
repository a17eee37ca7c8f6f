#include "densemg/quadrature.hpp"

#include <cmath>

namespace densemg {
namespace {

struct Simpson {
  const RealFunction& f;
  int max_depth;

  double checked(double x) const {
    const double v = f(x);
    if (!std::isfinite(v)) throw DivergenceError("integrand is not finite");
    return v;
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = checked(lm);
    const double frm = checked(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= max_depth || std::fabs(delta) <= 15.0 * tol) {
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double adaptive_simpson(const RealFunction& f, double a, double b, double tol, int max_depth) {
  Simpson s{f, max_depth};
  // Seed with four panels so integrands that vanish at the three initial
  // nodes are not mistaken for zero.
  double total = 0.0;
  constexpr int kPanels = 4;
  const double h = (b - a) / kPanels;
  for (int p = 0; p < kPanels; ++p) {
    const double lo = a + p * h;
    const double hi = p + 1 == kPanels ? b : lo + h;
    const double flo = s.checked(lo);
    const double fhi = s.checked(hi);
    const double fm = s.checked(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    total += s.recurse(lo, hi, flo, fm, fhi, whole, tol / kPanels, 0);
  }
  return total;
}

double integrate_unit_interval(const RealFunction& f, double tol) {
  // exp(-36) > DBL_EPSILON, so 1 - exp(-t) stays below 1 on the whole range.
  constexpr double kUpper = 36.0;
  return adaptive_simpson(
      [&f](double t) {
        const double w = std::exp(-t);
        return f(-std::expm1(-t)) * w;
      },
      0.0, kUpper, tol);
}

}  // namespace densemg
