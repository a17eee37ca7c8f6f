#pragma once

#include <functional>
#include <stdexcept>

namespace densemg {

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RealFunction = std::function<double(double)>;

/// Adaptive Simpson on [a, b] to absolute tolerance tol. Throws
/// DivergenceError when the integrand produces non-finite values.
double adaptive_simpson(const RealFunction& f, double a, double b, double tol,
                        int max_depth = 48);

/// Integral over the unit interval after the substitution y = 1 - exp(-t),
/// t in [0, 36]. Handles integrable singularities at y = 1 (such as
/// quantile functions of unbounded laws) without evaluating f at 1.
double integrate_unit_interval(const RealFunction& f, double tol);

}  // namespace densemg
