#pragma once

// Reference computations that share no code path with the library: dense
// Gram-Schmidt on monomials, Lanczos with full reorthogonalization, the
// explicit Jacobi polynomial sum, and brute-force products.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "cmvbeta/opuc.hpp"
#include "cmvbeta/rng.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Verblunsky coefficients via the monic orthogonal polynomials obtained by
/// solving the Gram system of the monomials: Phi_{k+1}(0) = -conj(alpha_k).
inline std::vector<cplx> gram_schmidt_alphas(const std::vector<double>& thetas, const std::vector<double>& mu) {
  const std::size_t n = thetas.size();
  std::vector<cplx> z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(1.0, thetas[j]);
  auto inner = [&](int p, int q) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += mu[j] * std::conj(std::pow(z[j], p)) * std::pow(z[j], q);
    return s;
  };
  std::vector<cplx> alphas(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXcd G(kk, kk);
    Eigen::VectorXcd rhs(kk);
    for (Eigen::Index i = 0; i < kk; ++i) {
      for (Eigen::Index j = 0; j < kk; ++j) G(i, j) = inner(static_cast<int>(i), static_cast<int>(j));
      rhs(i) = -inner(static_cast<int>(i), static_cast<int>(k));
    }
    const Eigen::VectorXcd c = G.fullPivLu().solve(rhs);
    alphas[k - 1] = -std::conj(c(0));
  }
  return alphas;
}

/// Monic polynomial coefficients of prod (z - z_j).
inline std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

struct Recurrence {
  std::vector<double> b;
  std::vector<double> a;
};

/// Jacobi coefficients of sum w_j delta(x_j) by Lanczos on diag(x) from
/// sqrt(w), with full reorthogonalization; `steps` <= number of points.
inline Recurrence lanczos(const std::vector<double>& xs, const std::vector<double>& ws, std::size_t steps) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(steps));
  Eigen::VectorXd q(n);
  for (Eigen::Index j = 0; j < n; ++j) q(j) = std::sqrt(ws[static_cast<std::size_t>(j)]);
  q.normalize();
  Recurrence out;
  for (std::size_t k = 0; k < steps; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    Q.col(kk) = q;
    Eigen::VectorXd r(n);
    for (Eigen::Index j = 0; j < n; ++j) r(j) = xs[static_cast<std::size_t>(j)] * q(j);
    out.b.push_back(q.dot(r));
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index c = 0; c <= kk; ++c) r -= Q.col(c).dot(r) * Q.col(c);
    if (k + 1 == steps) break;
    out.a.push_back(r.norm());
    q = r / r.norm();
  }
  return out;
}

inline double gen_binomial(double a, double k) {
  return std::exp(std::lgamma(a + 1.0) - std::lgamma(k + 1.0) - std::lgamma(a - k + 1.0));
}

/// Monic (in x) version of P_n^{(al,be)}(x/2) from the explicit sum
/// P_n(t) = sum_s C(n+al, n-s) C(n+be, s) ((t-1)/2)^s ((t+1)/2)^{n-s}.
inline std::vector<double> jacobi_monic_explicit(double al, double be, std::size_t n) {
  // (t-1)/2 = (x-2)/4 and (t+1)/2 = (x+2)/4 when t = x/2.
  auto power = [](double shift, std::size_t p) {
    std::vector<double> c{1.0};
    for (std::size_t i = 0; i < p; ++i) {
      std::vector<double> next(c.size() + 1, 0.0);
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] += c[j] / 4.0;
        next[j] += shift * c[j] / 4.0;
      }
      c = std::move(next);
    }
    return c;
  };
  std::vector<double> total(n + 1, 0.0);
  const double nn = static_cast<double>(n);
  for (std::size_t s = 0; s <= n; ++s) {
    const double coef = gen_binomial(nn + al, nn - static_cast<double>(s)) * gen_binomial(nn + be, static_cast<double>(s));
    const auto left = power(-2.0, s), right = power(2.0, n - s);
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j) total[i + j] += coef * left[i] * right[j];
  }
  const double lead = total[n];
  for (double& c : total) c /= lead;
  return total;
}

/// |Delta(e^{i theta})|^2 as a plain product of complex differences.
inline double vandermonde_sq_direct(const std::vector<double>& thetas) {
  double p = 1.0;
  for (std::size_t j = 0; j < thetas.size(); ++j)
    for (std::size_t k = j + 1; k < thetas.size(); ++k)
      p *= std::norm(std::polar(1.0, thetas[j]) - std::polar(1.0, thetas[k]));
  return p;
}

/// Random interior coefficients with modulus at most `rmax`.
inline cmvbeta::VerblunskySeq random_sequence(std::size_t m, cmvbeta::RngStream& rng, double rmax = 0.95) {
  std::vector<cplx> al(m);
  for (std::size_t k = 0; k + 1 < m; ++k)
    al[k] = std::polar(rmax * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
  al[m - 1] = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  return cmvbeta::VerblunskySeq(std::move(al));
}

inline cmvbeta::VerblunskySeq random_real_sequence(std::size_t n, cmvbeta::RngStream& rng, double rmax = 0.95) {
  std::vector<double> al(2 * n);
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) al[k] = rmax * (2.0 * rng.uniform() - 1.0);
  al[2 * n - 1] = -1.0;
  return cmvbeta::VerblunskySeq::from_real(al);
}

}  // namespace oracle
