#pragma once

// Samplers for the disk-valued Theta_nu law, the symmetric beta law B(s,t) on
// (-1, 1), uniform points on spheres and simplices, and Dirichlet moments.

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "cmvbeta/errors.hpp"
#include "cmvbeta/rng.hpp"

namespace cmvbeta {

using cplx = std::complex<double>;

/// Degrees-of-freedom parameter of Theta_nu. nu == 1 is the uniform law on
/// the unit circle; nu > 1 has density (nu-1)/(2 pi) (1-|z|^2)^((nu-3)/2) on
/// the open disk.
struct ThetaParam {
  double nu;

  explicit ThetaParam(double nu_) : nu(nu_) {
    detail::require(std::isfinite(nu) && nu >= 1.0, "Theta_nu requires nu >= 1");
  }
};

/// Parameters of B(s,t): density proportional to (1-x)^(s-1) (1+x)^(t-1).
struct BetaSymParam {
  double s;
  double t;

  BetaSymParam(double s_, double t_) : s(s_), t(t_) {
    detail::require(std::isfinite(s) && std::isfinite(t) && s > 0.0 && t > 0.0,
                    "B(s,t) requires s > 0 and t > 0");
  }
};

/// CDF of |z|^2 for z ~ Theta_nu (nu > 1): 1 - (1-s)^((nu-1)/2).
inline double theta_radial_cdf(double nu, double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return -std::expm1(0.5 * (nu - 1.0) * std::log1p(-s));
}

inline cplx sample_theta(const ThetaParam& p, RngStream& rng) {
  const double phase = 2.0 * std::numbers::pi * rng.uniform();
  if (p.nu == 1.0) return std::polar(1.0, phase);
  // Inverse CDF of the squared radius: s = 1 - (1-U)^(2/(nu-1)).
  const double u = rng.uniform();
  const double s = -std::expm1(std::log1p(-u) * 2.0 / (p.nu - 1.0));
  double r = std::sqrt(s);
  if (r >= 1.0) r = std::nextafter(1.0, 0.0);
  return std::polar(r, phase);
}

/// x = 1 - 2u with u ~ Beta(s,t) on [0,1] built from two gamma variates. With
/// G1 ~ Gamma(s), G2 ~ Gamma(t): x = (G2-G1)/(G1+G2) = tanh((log G2 - log G1)/2),
/// which stays inside (-1,1) even when both shapes are tiny.
inline double sample_beta_sym(const BetaSymParam& p, RngStream& rng) {
  const double lg1 = rng.log_gamma(p.s);
  const double lg2 = rng.log_gamma(p.t);
  double x = std::tanh(0.5 * (lg2 - lg1));
  if (x >= 1.0) x = std::nextafter(1.0, 0.0);
  if (x <= -1.0) x = std::nextafter(-1.0, 0.0);
  return x;
}

/// Uniform point on the sphere S^dim in R^(dim+1).
inline std::vector<double> sample_sphere(int dim, RngStream& rng) {
  detail::require(dim >= 1, "sphere dimension must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(dim) + 1);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& x : v) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

/// Uniform point on the (n-1)-simplex via normalized unit exponentials.
inline std::vector<double> sample_simplex(int n, RngStream& rng) {
  detail::require(n >= 1, "simplex size must be >= 1");
  std::vector<double> mu(static_cast<std::size_t>(n));
  for (auto& m : mu) m = rng.exponential();
  const double total = std::accumulate(mu.begin(), mu.end(), 0.0);
  for (auto& m : mu) m /= total;
  return mu;
}

/// E[prod mu_j^p_j] for mu uniform on the (n-1)-simplex:
/// (n-1)! prod Gamma(p_j+1) / Gamma(sum p_j + n), evaluated in log space.
inline double dirichlet_moment(std::span<const double> p) {
  detail::require(!p.empty(), "dirichlet_moment needs at least one exponent");
  const double n = static_cast<double>(p.size());
  double log_value = std::lgamma(n);
  double total = 0.0;
  for (double pj : p) {
    detail::require(std::isfinite(pj) && pj > -1.0, "Dirichlet exponents must exceed -1");
    log_value += std::lgamma(pj + 1.0);
    total += pj;
  }
  log_value -= std::lgamma(total + n);
  return std::exp(log_value);
}

}  // namespace cmvbeta
