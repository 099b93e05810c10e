#pragma once

// Circular and Jacobi beta-ensemble samplers built on independent Verblunsky
// coefficients, Haar samplers for the beta = 2 cross-checks, density and
// normalization evaluators, and exact rejection samplers used as oracles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "cmvbeta/cmv.hpp"
#include "cmvbeta/distributions.hpp"
#include "cmvbeta/errors.hpp"
#include "cmvbeta/opuc.hpp"
#include "cmvbeta/rng.hpp"
#include "cmvbeta/szego_map.hpp"

namespace cmvbeta {

enum class EnsembleKind { circular, jacobi };

inline const char* to_string(EnsembleKind k) {
  return k == EnsembleKind::circular ? "circular" : "jacobi";
}

/// One sampling task. The Jacobi exponents a, b are ignored by the circular
/// sampler.
struct EnsembleSpec {
  std::size_t n = 1;
  double beta = 2.0;
  double a = 0.0;
  double b = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const EnsembleSpec&) const = default;

  void validate(EnsembleKind kind) const {
    detail::require(n >= 1, "n must be at least 1");
    detail::require(std::isfinite(beta) && beta > 0.0, "beta must be positive");
    if (kind == EnsembleKind::jacobi)
      detail::require(std::isfinite(a) && std::isfinite(b) && a > -1.0 && b > -1.0,
                      "Jacobi exponents a and b must exceed -1");
  }
};

/// Circular draws store eigen-angles in [0, 2pi); Jacobi draws store
/// eigenvalues in [-2, 2]. Both ascending.
struct Draw {
  std::vector<double> points;
  std::vector<cplx> alphas;
  std::vector<double> weights;
};

struct SampleBatch {
  EnsembleKind kind = EnsembleKind::circular;
  EnsembleSpec spec;
  std::vector<Draw> draws;
  /// Total proposals consumed by a rejection sampler; 0 for matrix models.
  std::size_t proposals = 0;
};

struct SampleOptions {
  std::size_t threads = 1;
  bool keep_alphas = false;
  bool keep_weights = false;
};

/// alpha_k ~ Theta_{beta(n-k-1)+1}, k = 0..n-1. The last one is Theta_1.
inline std::vector<cplx> draw_circular_alphas(std::size_t n, double beta, RngStream& rng) {
  std::vector<cplx> alphas(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double nu = k + 1 == n ? 1.0 : beta * static_cast<double>(n - k - 1) + 1.0;
    alphas[k] = sample_theta(ThetaParam(nu), rng);
  }
  return alphas;
}

/// Parameters of B(s,t) for alpha_k, 0 <= k <= 2n-2, in the Jacobi model:
///   k even: s = (2n-k-2) beta/4 + a + 1,   t = (2n-k-2) beta/4 + b + 1
///   k odd:  s = (2n-k-3) beta/4 + a + b + 2, t = (2n-k-1) beta/4
inline BetaSymParam jacobi_alpha_law(std::size_t n, double beta, double a, double b,
                                     std::size_t k) {
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  if (k % 2 == 0) {
    const double base = (2.0 * nn - kk - 2.0) * beta / 4.0;
    return {base + a + 1.0, base + b + 1.0};
  }
  return {(2.0 * nn - kk - 3.0) * beta / 4.0 + a + b + 2.0, (2.0 * nn - kk - 1.0) * beta / 4.0};
}

/// alpha_0..alpha_{2n-2} per the law above, followed by alpha_{2n-1} = -1.
inline std::vector<double> draw_jacobi_alphas(std::size_t n, double beta, double a, double b,
                                              RngStream& rng) {
  std::vector<double> alphas(2 * n);
  for (std::size_t k = 0; k + 1 < 2 * n; ++k)
    alphas[k] = sample_beta_sym(jacobi_alpha_law(n, beta, a, b, k), rng);
  alphas[2 * n - 1] = -1.0;
  return alphas;
}

namespace detail {

template <typename DrawFn>
std::vector<Draw> run_draws(std::size_t count, std::size_t threads, DrawFn&& fn) {
  std::vector<Draw> draws(count);
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) draws[i] = fn(i);
    return draws;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) draws[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return draws;
}

}  // namespace detail

/// Circular beta-ensemble via the CMV model. Draw i uses
/// RngStream(spec.seed, i), so output is independent of `threads`.
inline SampleBatch sample_circular(const EnsembleSpec& spec, std::size_t count,
                                   const SampleOptions& opts = {}) {
  spec.validate(EnsembleKind::circular);
  SampleBatch batch{EnsembleKind::circular, spec, {}, 0};
  batch.draws = detail::run_draws(count, opts.threads, [&](std::size_t i) {
    RngStream rng(spec.seed, i);
    VerblunskySeq v(draw_circular_alphas(spec.n, spec.beta, rng));
    SpectralMeasureCircle m = cmv_spectral(v);
    Draw d;
    d.points = m.thetas();
    if (opts.keep_alphas) d.alphas = v.alphas();
    if (opts.keep_weights) d.weights = m.weights();
    return d;
  });
  return batch;
}

/// Jacobi beta-ensemble via the tridiagonal model J = geronimus(alpha).
inline SampleBatch sample_jacobi(const EnsembleSpec& spec, std::size_t count,
                                 const SampleOptions& opts = {}) {
  spec.validate(EnsembleKind::jacobi);
  SampleBatch batch{EnsembleKind::jacobi, spec, {}, 0};
  batch.draws = detail::run_draws(count, opts.threads, [&](std::size_t i) {
    RngStream rng(spec.seed, i);
    const auto al = draw_jacobi_alphas(spec.n, spec.beta, spec.a, spec.b, rng);
    const VerblunskySeq v = VerblunskySeq::from_real(al);
    const SpectralMeasureInterval m = jacobi_spectral(geronimus(v, spec.n));
    Draw d;
    d.points = m.xs;
    if (opts.keep_alphas) d.alphas = v.alphas();
    if (opts.keep_weights) d.weights = m.weights;
    return d;
  });
  return batch;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) moved into Q.
inline MatrixC sample_haar_unitary(std::size_t n, RngStream& rng) {
  detail::require(n >= 1, "n must be at least 1");
  const auto ni = static_cast<Eigen::Index>(n);
  MatrixC Z(ni, ni);
  const double s = std::numbers::sqrt2 / 2.0;
  for (Eigen::Index j = 0; j < ni; ++j)
    for (Eigen::Index i = 0; i < ni; ++i) Z(i, j) = cplx(rng.normal() * s, rng.normal() * s);
  Eigen::HouseholderQR<MatrixC> qr(Z);
  MatrixC Q = qr.householderQ();
  const MatrixC& R = qr.matrixQR();
  for (Eigen::Index j = 0; j < ni; ++j) {
    const double r = std::abs(R(j, j));
    Q.col(j) *= r > 0.0 ? R(j, j) / r : cplx(1.0);
  }
  return Q;
}

/// Haar-distributed element of SO(two_n).
inline MatrixR sample_haar_so(std::size_t two_n, RngStream& rng) {
  detail::require(two_n >= 2 && two_n % 2 == 0, "dimension must be even and at least 2");
  const auto ni = static_cast<Eigen::Index>(two_n);
  MatrixR Z(ni, ni);
  for (Eigen::Index j = 0; j < ni; ++j)
    for (Eigen::Index i = 0; i < ni; ++i) Z(i, j) = rng.normal();
  Eigen::HouseholderQR<MatrixR> qr(Z);
  MatrixR Q = qr.householderQ();
  const MatrixR& R = qr.matrixQR();
  for (Eigen::Index j = 0; j < ni; ++j)
    if (R(j, j) < 0.0) Q.col(j) *= -1.0;
  if (Q.determinant() < 0.0) Q.col(ni - 1) *= -1.0;
  return Q;
}

/// beta * sum_{j<k} log|e^{i theta_j} - e^{i theta_k}|; -infinity when two
/// angles coincide.
inline double log_density_circular(std::span<const double> thetas, double beta) {
  double s = 0.0;
  for (std::size_t j = 0; j < thetas.size(); ++j)
    for (std::size_t k = j + 1; k < thetas.size(); ++k) {
      const double c = log_chord(thetas[j], thetas[k]);
      if (!std::isfinite(c)) return -std::numeric_limits<double>::infinity();
      s += c;
    }
  return beta * s;
}

/// beta * sum_{j<k} log|x_j - x_k| + sum_j [a log(2 - x_j) + b log(2 + x_j)].
inline double log_density_jacobi(std::span<const double> xs, double beta, double a, double b) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    detail::require(std::abs(xs[j]) <= 2.0, "Jacobi points must lie in [-2, 2]");
    for (std::size_t k = j + 1; k < xs.size(); ++k) {
      const double d = std::abs(xs[j] - xs[k]);
      if (d == 0.0) return neg_inf;
      s += beta * std::log(d);
    }
    const double right = 2.0 - xs[j], left = 2.0 + xs[j];
    if (a != 0.0) {
      if (right == 0.0) return neg_inf;
      s += a * std::log(right);
    }
    if (b != 0.0) {
      if (left == 0.0) return neg_inf;
      s += b * std::log(left);
    }
  }
  return s;
}

/// Z_{n,beta} = Gamma(beta n/2 + 1) / Gamma(beta/2 + 1)^n.
inline double partition_circular(std::size_t n, double beta) {
  detail::require(n >= 1 && beta > 0.0, "partition function needs n >= 1 and beta > 0");
  const double nn = static_cast<double>(n);
  return std::exp(std::lgamma(0.5 * beta * nn + 1.0) - nn * std::lgamma(0.5 * beta + 1.0));
}

/// log of the Selberg integral over [0,1]^n of
/// |Delta(u)|^{2z} prod u_j^{x-1} (1-u_j)^{y-1}:
///   sum_{r<n} [lgG(rz+x) + lgG(rz+y) + lgG((r+1)z+1) - lgG(z+1) - lgG((n+r-1)z+x+y)].
inline double log_selberg_value(std::size_t n, double x, double y, double z) {
  detail::require(n >= 1, "n must be at least 1");
  detail::require(x > 0.0 && y > 0.0 && z >= 0.0, "Selberg parameters need x, y > 0 and z >= 0");
  const double nn = static_cast<double>(n);
  double s = 0.0;
  for (std::size_t rr = 0; rr < n; ++rr) {
    const double r = static_cast<double>(rr);
    s += std::lgamma(r * z + x) + std::lgamma(r * z + y) + std::lgamma((r + 1.0) * z + 1.0) -
         std::lgamma(z + 1.0) - std::lgamma((nn + r - 1.0) * z + x + y);
  }
  return s;
}

inline double selberg_value(std::size_t n, double x, double y, double z) {
  return std::exp(log_selberg_value(n, x, y, z));
}

/// The same integral after u = (t + 2)/4, i.e. over [-2, 2]^n with weight
/// (2-t)^{x-1} (2+t)^{y-1}: larger by 2^tau, tau = 2n[(n-1)z + x + y - 1].
inline double selberg_interval_value(std::size_t n, double x, double y, double z) {
  const double nn = static_cast<double>(n);
  const double tau = 2.0 * nn * ((nn - 1.0) * z + x + y - 1.0);
  return std::exp(log_selberg_value(n, x, y, z) + tau * std::numbers::ln2);
}

struct JacobianCheck {
  double fd_det = 0.0;
  double formula_det = 0.0;
  double relative_error() const { return std::abs(fd_det - formula_det) / std::abs(formula_det); }
};

namespace detail {

template <typename MapFn>
MatrixR central_difference_jacobian(const std::vector<double>& x0, std::size_t out_dim, double h,
                                    MapFn&& f) {
  const auto in = static_cast<Eigen::Index>(x0.size());
  MatrixR Jac(static_cast<Eigen::Index>(out_dim), in);
  for (Eigen::Index c = 0; c < in; ++c) {
    std::vector<double> xp = x0, xm = x0;
    xp[static_cast<std::size_t>(c)] += h;
    xm[static_cast<std::size_t>(c)] -= h;
    const std::vector<double> diff = f(xp, xm);
    for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(out_dim); ++r)
      Jac(r, c) = diff[static_cast<std::size_t>(r)] / (2.0 * h);
  }
  return Jac;
}

inline SpectralMeasureCircle circle_measure_from_coords(const std::vector<double>& coords,
                                                        std::size_t n) {
  std::vector<double> th(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<double> mu(coords.begin() + static_cast<std::ptrdiff_t>(n), coords.end());
  double rest = 1.0;
  for (double m : mu) rest -= m;
  mu.push_back(rest);
  for (auto& t : th) t = wrap_angle(t);
  return SpectralMeasureCircle(std::move(th), std::move(mu));
}

}  // namespace detail

/// Finite-difference determinant of (theta_1..theta_n, mu_1..mu_{n-1}) ->
/// (Re alpha_k, Im alpha_k for k <= n-2, phi) with alpha_{n-1} = e^{i phi},
/// against 2^{1-n} |Delta|^2 / prod_{k<=n-2} (1-|alpha_k|^2)^{n-k-2}.
inline JacobianCheck jacobian_check(const SpectralMeasureCircle& m, double h = 1e-5) {
  const std::size_t n = m.size();
  detail::require(h > 0.0 && std::isfinite(h), "finite-difference step must be positive");
  for (double w : m.weights())
    if (w <= 2.0 * h) throw ParameterError("finite-difference step underflows a weight");
  std::vector<double> x0(m.thetas());
  x0.insert(x0.end(), m.weights().begin(), m.weights().end() - 1);

  const std::size_t dim = 2 * n - 1;
  auto diff = [&](const std::vector<double>& xp, const std::vector<double>& xm) {
    const VerblunskySeq vp = measure_to_verblunsky(detail::circle_measure_from_coords(xp, n));
    const VerblunskySeq vm = measure_to_verblunsky(detail::circle_measure_from_coords(xm, n));
    std::vector<double> out(dim);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      out[2 * k] = vp[k].real() - vm[k].real();
      out[2 * k + 1] = vp[k].imag() - vm[k].imag();
    }
    out[dim - 1] = std::arg(vp[n - 1] * std::conj(vm[n - 1]));
    return out;
  };
  const MatrixR Jac = detail::central_difference_jacobian(x0, dim, h, diff);

  const VerblunskySeq v = measure_to_verblunsky(m);
  double log_formula = (1.0 - static_cast<double>(n)) * std::numbers::ln2 +
                       log_vandermonde_sq_circle(m.thetas());
  for (std::size_t k = 0; k + 1 < n; ++k)
    log_formula -= static_cast<double>(n - k - 2) * std::log1p(-std::norm(v[k]));
  return {std::abs(Jac.fullPivLu().determinant()), std::exp(log_formula)};
}

/// Conjugation-symmetric circle measure sum_j mu_j/2 [delta(e^{i t_j}) + delta(e^{-i t_j})]
/// with t_j in (0, pi).
inline SpectralMeasureCircle symmetric_circle_measure(std::span<const double> thetas,
                                                      std::span<const double> mu) {
  detail::require(thetas.size() == mu.size() && !thetas.empty(), "mismatched coordinates");
  std::vector<double> th, w;
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    detail::require(thetas[j] > 0.0 && thetas[j] < std::numbers::pi, "angles must lie in (0, pi)");
    th.push_back(thetas[j]);
    w.push_back(0.5 * mu[j]);
    th.push_back(2.0 * std::numbers::pi - thetas[j]);
    w.push_back(0.5 * mu[j]);
  }
  return SpectralMeasureCircle(std::move(th), std::move(w));
}

/// Real-coefficient version: (theta_1..theta_n in (0, pi), mu_1..mu_{n-1}) ->
/// (alpha_0..alpha_{2n-2}) against
/// 2^{1-n} |Delta(x)|^2 / prod_{k<=2n-2} (1-alpha_k^2)^{(2n-k-3)/2}, x_j = 2 cos theta_j.
inline JacobianCheck jacobian_check_real(std::span<const double> thetas,
                                         std::span<const double> mu, double h = 1e-5) {
  const std::size_t n = thetas.size();
  detail::require(h > 0.0 && std::isfinite(h), "finite-difference step must be positive");
  for (double w : mu)
    if (w <= 2.0 * h) throw ParameterError("finite-difference step underflows a weight");
  for (double t : thetas)
    if (t <= 2.0 * h || t >= std::numbers::pi - 2.0 * h)
      throw ParameterError("finite-difference step crosses the real axis");
  std::vector<double> x0(thetas.begin(), thetas.end());
  x0.insert(x0.end(), mu.begin(), mu.end() - 1);
  const std::size_t dim = 2 * n - 1;

  auto alphas_at = [&](const std::vector<double>& x) {
    std::vector<double> th(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> w(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
    double rest = 1.0;
    for (double m : w) rest -= m;
    w.push_back(rest);
    return measure_to_verblunsky(symmetric_circle_measure(th, w));
  };
  auto diff = [&](const std::vector<double>& xp, const std::vector<double>& xm) {
    const VerblunskySeq vp = alphas_at(xp), vm = alphas_at(xm);
    std::vector<double> out(dim);
    for (std::size_t k = 0; k < dim; ++k) out[k] = vp[k].real() - vm[k].real();
    return out;
  };
  const MatrixR Jac = detail::central_difference_jacobian(x0, dim, h, diff);

  const VerblunskySeq v = alphas_at(x0);
  double log_formula = (1.0 - static_cast<double>(n)) * std::numbers::ln2;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      log_formula += 2.0 * std::log(std::abs(2.0 * std::cos(thetas[j]) - 2.0 * std::cos(thetas[k])));
  for (std::size_t k = 0; k + 1 < 2 * n; ++k)
    log_formula -= 0.5 * (2.0 * static_cast<double>(n) - static_cast<double>(k) - 3.0) *
                   std::log1p(-v[k].real() * v[k].real());
  return {std::abs(Jac.fullPivLu().determinant()), std::exp(log_formula)};
}

/// E(alpha_k) for the Jacobi model: the mean (t-s)/(t+s) of B(s,t).
inline std::vector<double> mean_jacobi_alphas(std::size_t n, double beta, double a, double b) {
  std::vector<double> m(2 * n);
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
    const BetaSymParam p = jacobi_alpha_law(n, beta, a, b, k);
    m[k] = (p.t - p.s) / (p.t + p.s);
  }
  m[2 * n - 1] = -1.0;
  return m;
}

/// E det(x - J) computed three ways.
struct AomotoRoutes {
  /// Fold Phi_{2n} of the averaged coefficients.
  RealMonicPolynomial route_a;
  /// Geronimus relations on the reversed averaged coefficients.
  RealMonicPolynomial route_b;
  /// Monic classical Jacobi polynomial with shifted parameters.
  RealMonicPolynomial classical;

  double max_coeff_gap() const {
    double g = 0.0;
    for (std::size_t i = 0; i < route_a.coeffs().size(); ++i) {
      g = std::max(g, std::abs(route_a[i] - route_b[i]));
      g = std::max(g, std::abs(route_a[i] - classical[i]));
    }
    return g;
  }
};

inline AomotoRoutes aomoto_routes(std::size_t n, double beta, double a, double b) {
  detail::require(n >= 1, "n must be at least 1");
  detail::require(beta > 0.0 && a > -1.0 && b > -1.0, "need beta > 0 and a, b > -1");
  const auto mean = mean_jacobi_alphas(n, beta, a, b);
  const VerblunskySeq v = VerblunskySeq::from_real(mean);
  RealMonicPolynomial ra = fold_self_inversive(monic_coeffs(v, 2 * n));
  RealMonicPolynomial rb = charpoly(geronimus(reverse_coefficients(v), n));
  const double at = 2.0 * (a + 1.0) / beta - 1.0;
  const double bt = 2.0 * (b + 1.0) / beta - 1.0;
  RealMonicPolynomial cl = classical_jacobi(at, bt, n).second;
  return {std::move(ra), std::move(rb), std::move(cl)};
}

inline RealMonicPolynomial expected_charpoly(std::size_t n, double beta, double a, double b) {
  return aomoto_routes(n, beta, a, b).route_a;
}

/// Exact sampler for the circular ensemble with n <= 4, beta <= 8: uniform
/// angles accepted with probability |Delta|^beta / 2^{beta n(n-1)/2}.
inline SampleBatch rejection_oracle_circular(std::size_t n, double beta, std::size_t count,
                                             RngStream& rng) {
  detail::require(n >= 1 && n <= 4, "circular rejection oracle is limited to n <= 4");
  detail::require(beta > 0.0 && beta <= 8.0, "circular rejection oracle needs 0 < beta <= 8");
  const double pairs = 0.5 * static_cast<double>(n * (n - 1));
  const double log_envelope = beta * pairs * std::numbers::ln2;
  const double acceptance = std::exp(std::log(partition_circular(n, beta)) - log_envelope);
  if (acceptance < 1e-6) throw EnvelopeError("acceptance rate below 1e-6");

  SampleBatch batch{EnsembleKind::circular, EnsembleSpec{n, beta, 0.0, 0.0, rng.seed()}, {}, 0};
  batch.draws.reserve(count);
  std::vector<double> th(n);
  while (batch.draws.size() < count) {
    ++batch.proposals;
    for (auto& t : th) t = 2.0 * std::numbers::pi * rng.uniform();
    const double log_accept = log_density_circular(th, beta) - log_envelope;
    if (std::log(rng.uniform()) < log_accept) {
      Draw d;
      d.points = th;
      std::sort(d.points.begin(), d.points.end());
      batch.draws.push_back(std::move(d));
    }
  }
  return batch;
}

/// Exact sampler for the Jacobi ensemble with n <= 3 and a, b >= 0: uniform
/// proposals on [-2,2]^n against the envelope 4^{beta n(n-1)/2} 4^{n max(a,b)}.
inline SampleBatch rejection_oracle_jacobi(std::size_t n, double beta, double a, double b,
                                           std::size_t count, RngStream& rng) {
  detail::require(n >= 1 && n <= 3, "Jacobi rejection oracle is limited to n <= 3");
  detail::require(beta > 0.0, "beta must be positive");
  detail::require(a >= 0.0 && b >= 0.0, "Jacobi rejection oracle needs a, b >= 0");
  const double nn = static_cast<double>(n);
  const double log4 = 2.0 * std::numbers::ln2;
  const double log_envelope =
      beta * 0.5 * nn * (nn - 1.0) * log4 + nn * std::max(a, b) * log4;
  constexpr std::size_t probe = 10'000'000;

  SampleBatch batch{EnsembleKind::jacobi, EnsembleSpec{n, beta, a, b, rng.seed()}, {}, 0};
  batch.draws.reserve(count);
  std::vector<double> xs(n);
  while (batch.draws.size() < count) {
    ++batch.proposals;
    if (batch.proposals == probe &&
        static_cast<double>(batch.draws.size()) < 1e-6 * static_cast<double>(probe))
      throw EnvelopeError("acceptance rate below 1e-6");
    for (auto& x : xs) x = 4.0 * rng.uniform() - 2.0;
    const double log_accept = log_density_jacobi(xs, beta, a, b) - log_envelope;
    if (std::log(rng.uniform()) < log_accept) {
      Draw d;
      d.points = xs;
      std::sort(d.points.begin(), d.points.end());
      batch.draws.push_back(std::move(d));
    }
  }
  return batch;
}

/// Sorted circular gaps: for ascending angles, the n arcs between neighbours
/// (including the wrap-around arc), sorted ascending.
inline std::vector<double> sorted_gaps(std::span<const double> sorted_angles) {
  const std::size_t n = sorted_angles.size();
  std::vector<double> g(n);
  for (std::size_t j = 0; j + 1 < n; ++j) g[j] = sorted_angles[j + 1] - sorted_angles[j];
  g[n - 1] = sorted_angles[0] + 2.0 * std::numbers::pi - sorted_angles[n - 1];
  std::sort(g.begin(), g.end());
  return g;
}

}  // namespace cmvbeta
