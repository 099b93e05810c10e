#pragma once

// Adaptive Gauss-Kronrod quadrature used as an independent oracle for the
// closed-form integrals.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cmvbeta/errors.hpp"

namespace cmvbeta::quad {

template <typename F>
double integrate(F&& f, double lo, double hi, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, tol);
}

/// Integral over the square [lo, hi]^2. The inner variable is mapped onto
/// the two triangles on either side of the diagonal, v = lo + (u - lo) s and
/// v = u + (hi - u) s, so kinks like |u - v|^p sit at panel endpoints and
/// short inner panels keep a relative error target.
template <typename F>
double integrate_square(F&& f, double lo, double hi, double tol = 1e-12) {
  auto outer = [&](double u) {
    auto below = [&](double s) { return f(u, lo + (u - lo) * s); };
    auto above = [&](double s) { return f(u, u + (hi - u) * s); };
    return (u - lo) * integrate(below, 0.0, 1.0, tol) + (hi - u) * integrate(above, 0.0, 1.0, tol);
  };
  return integrate(outer, lo, hi, tol);
}

/// (1/2pi) int_0^{2pi} |2 sin(theta/2)|^beta d theta, the n = 2 partition
/// function computed directly.
inline double partition_n2_quadrature(double beta) {
  detail::require(beta > 0.0, "beta must be positive");
  auto f = [beta](double t) { return std::pow(std::abs(2.0 * std::sin(0.5 * t)), beta); };
  return integrate(f, 0.0, 2.0 * std::numbers::pi) / (2.0 * std::numbers::pi);
}

/// int_{[0,1]^2} |u1 - u2|^{2z} prod u_j^{x-1} (1 - u_j)^{y-1} du for x, y >= 1.
inline double selberg_n2_quadrature(double x, double y, double z) {
  detail::require(x >= 1.0 && y >= 1.0 && z >= 0.0,
                  "quadrature oracle needs x, y >= 1 and z >= 0 (bounded integrand)");
  auto w = [x, y](double u) { return std::pow(u, x - 1.0) * std::pow(1.0 - u, y - 1.0); };
  auto f = [&](double u, double v) { return std::pow(std::abs(u - v), 2.0 * z) * w(u) * w(v); };
  return integrate_square(f, 0.0, 1.0);
}

}  // namespace cmvbeta::quad
