#pragma once

// Orthogonal polynomials on the unit circle: the Szego recurrence, the
// bijection between finitely supported measures and Verblunsky coefficients,
// and the identities that tie the two coordinate systems together.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cmvbeta/errors.hpp"
#include "cmvbeta/polynomial.hpp"

namespace cmvbeta {

using cplx = std::complex<double>;

inline constexpr double kUnimodularTol = 1e-12;

/// Verblunsky coefficients alpha_0..alpha_{m-1} of a measure supported on m
/// points: |alpha_k| < 1 for k < m-1 and |alpha_{m-1}| = 1.
///
/// Index conventions: alpha(-1) == -1 and alpha(-2) == 0. Indices past the
/// end read as 0 so that boundary terms of the Geronimus-type formulas, which
/// always carry a vanishing prefactor there, need no special cases.
class VerblunskySeq {
 public:
  explicit VerblunskySeq(std::vector<cplx> alphas, double unimodular_tol = kUnimodularTol)
      : alphas_(std::move(alphas)) {
    detail::require(!alphas_.empty(), "Verblunsky sequence must be non-empty");
    for (std::size_t k = 0; k + 1 < alphas_.size(); ++k) {
      const double r = std::abs(alphas_[k]);
      detail::require(std::isfinite(r) && r < 1.0,
                      "interior Verblunsky coefficient " + std::to_string(k) +
                          " must lie in the open unit disk");
    }
    detail::require(std::abs(std::abs(alphas_.back()) - 1.0) <= unimodular_tol,
                    "last Verblunsky coefficient must be unimodular");
  }

  static VerblunskySeq from_real(std::span<const double> a,
                                 double unimodular_tol = kUnimodularTol) {
    return VerblunskySeq(std::vector<cplx>(a.begin(), a.end()), unimodular_tol);
  }

  std::size_t size() const { return alphas_.size(); }
  const cplx& operator[](std::size_t k) const { return alphas_[k]; }
  const std::vector<cplx>& alphas() const { return alphas_; }

  cplx alpha(std::ptrdiff_t k) const {
    if (k == -1) return -1.0;
    if (k < 0 || k >= static_cast<std::ptrdiff_t>(alphas_.size())) return 0.0;
    return alphas_[static_cast<std::size_t>(k)];
  }

  /// rho_k = sqrt(1 - |alpha_k|^2); exactly 0 for the final coefficient.
  double rho(std::size_t k) const {
    if (k + 1 >= alphas_.size()) return 0.0;
    return std::sqrt((1.0 - std::abs(alphas_[k])) * (1.0 + std::abs(alphas_[k])));
  }

  bool is_real() const {
    return std::all_of(alphas_.begin(), alphas_.end(),
                       [](const cplx& a) { return a.imag() == 0.0; });
  }

  std::vector<double> real_alphas() const {
    detail::require(is_real(), "Verblunsky sequence is not real");
    std::vector<double> out(alphas_.size());
    std::transform(alphas_.begin(), alphas_.end(), out.begin(),
                   [](const cplx& a) { return a.real(); });
    return out;
  }

 private:
  std::vector<cplx> alphas_;
};

/// Finitely supported probability measure sum_j mu_j delta(e^{i theta_j}).
class SpectralMeasureCircle {
 public:
  SpectralMeasureCircle(std::vector<double> thetas, std::vector<double> weights)
      : thetas_(std::move(thetas)), weights_(std::move(weights)) {
    detail::require(!thetas_.empty() && thetas_.size() == weights_.size(),
                    "measure needs matching, non-empty angle and weight lists");
    double total = 0.0;
    for (std::size_t j = 0; j < thetas_.size(); ++j) {
      detail::require(thetas_[j] >= 0.0 && thetas_[j] < 2.0 * std::numbers::pi,
                      "angles must lie in [0, 2pi)");
      detail::require(weights_[j] > 0.0, "weights must be positive");
      total += weights_[j];
    }
    detail::require(std::abs(total - 1.0) <= 1e-12, "weights must sum to 1");
    if (thetas_.size() > 1) {
      std::vector<double> sorted = thetas_;
      std::sort(sorted.begin(), sorted.end());
      double gap = sorted.front() + 2.0 * std::numbers::pi - sorted.back();
      for (std::size_t j = 1; j < sorted.size(); ++j) gap = std::min(gap, sorted[j] - sorted[j - 1]);
      if (gap <= 1e-10) throw DegenerateError("support points of the measure coincide");
    }
  }

  std::size_t size() const { return thetas_.size(); }
  const std::vector<double>& thetas() const { return thetas_; }
  const std::vector<double>& weights() const { return weights_; }
  cplx point(std::size_t j) const { return std::polar(1.0, thetas_[j]); }

 private:
  std::vector<double> thetas_;
  std::vector<double> weights_;
};

inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta >= two_pi) theta = 0.0;
  return theta;
}

/// log|e^{ia} - e^{ib}| = log|2 sin((a-b)/2)|.
inline double log_chord(double a, double b) {
  return std::log(std::abs(2.0 * std::sin(0.5 * (a - b))));
}

/// (Phi_k(z), Phi_k^*(z)) by the joint forward recurrence
///   Phi_{j+1} = z Phi_j - conj(alpha_j) Phi_j^*,  Phi_{j+1}^* = Phi_j^* - alpha_j z Phi_j.
inline std::pair<cplx, cplx> szego_evaluate(const VerblunskySeq& v, cplx z, std::size_t k) {
  detail::require(k <= v.size(), "polynomial degree exceeds the sequence length");
  cplx phi = 1.0, phi_star = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    const cplx next = z * phi - std::conj(v[j]) * phi_star;
    phi_star = phi_star - v[j] * z * phi;
    phi = next;
  }
  return {phi, phi_star};
}

/// Coefficients of Phi_k. Reversal maps c_l to conj(c_{k-l}).
inline MonicPolynomial monic_coeffs(const VerblunskySeq& v, std::size_t k) {
  detail::require(k <= v.size(), "polynomial degree exceeds the sequence length");
  std::vector<cplx> c{1.0};
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t deg = c.size() - 1;
    std::vector<cplx> next(deg + 2, 0.0);
    for (std::size_t l = 0; l <= deg; ++l) next[l + 1] += c[l];
    const cplx abar = std::conj(v[j]);
    for (std::size_t l = 0; l <= deg; ++l) next[l] -= abar * std::conj(c[deg - l]);
    c = std::move(next);
  }
  c.back() = 1.0;
  return MonicPolynomial(std::move(c));
}

/// ||Phi_k||_{L^2(d mu)} = prod_{l<k} rho_l.
inline double phi_norm(const VerblunskySeq& v, std::size_t k) {
  detail::require(k + 1 <= v.size(), "phi_norm index must be at most m-1");
  double p = 1.0;
  for (std::size_t l = 0; l < k; ++l) p *= v.rho(l);
  return p;
}

namespace detail {

/// True when the support is closed under theta -> 2pi - theta with matching
/// weights, to 1e-12.
inline bool conjugation_symmetric(const SpectralMeasureCircle& m) {
  constexpr double tol = 1e-12;
  const std::size_t n = m.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double mirror = m.thetas()[j] == 0.0 ? 0.0 : 2.0 * std::numbers::pi - m.thetas()[j];
    bool found = false;
    for (std::size_t k = 0; k < n && !found; ++k)
      found = std::abs(m.thetas()[k] - mirror) <= tol && std::abs(m.weights()[k] - m.weights()[j]) <= tol;
    if (!found) return false;
  }
  return true;
}

}  // namespace detail

struct MeasureDiagnostics {
  bool near_degenerate = false;
  /// Smallest 1 - |alpha_k| over interior coefficients.
  double min_interior_gap = 1.0;
  /// rho_k for k <= n-2 as produced by the reduction.
  std::vector<double> rho;
};

namespace detail {

/// Verblunsky coefficients of the spectral measure of (U, e_1) for a unitary U.
///
/// Column k is reflected with v = [0..0, w, a_{k+2,k}, .., a_{n,k}] where
/// w = a_{k+1,k} - (a_{k+1,k}/|a_{k+1,k}|) * ||a_{k+1:n,k}||, followed by a
/// diagonal phase that makes the new subdiagonal entry positive. The phase is
/// replaced by 1 when |a_{k+1,k}| < 1e-14. In realform the reflection uses
/// w = a_{k+1,k} - ||a_{k+1:n,k}|| and no phase step is needed.
///
/// The coefficients are read from the reduced H: column c equals
/// conj(alpha_c) X_c + rho_c e_{c+1}, where X_c is the unit vector
/// (prod_{l<c} rho_l, -alpha_0 prod_{1<=l<c} rho_l, ..., -alpha_{c-1}), so
/// conj(alpha_c) = <X_c, H e_c>. The rho_c are taken from the subdiagonal,
/// which keeps full relative accuracy when |alpha_c| is close to 1; they are
/// stored in `rhos` when given.
inline VerblunskySeq hessenberg_verblunsky(const Eigen::MatrixXcd& U, bool realform,
                                           std::vector<double>* rhos = nullptr) {
  const Eigen::Index n = U.rows();
  Eigen::MatrixXcd A = U;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    Eigen::VectorXcd x = A.col(k).tail(len);
    const double tail2 = len > 1 ? x.tail(len - 1).squaredNorm() : 0.0;
    const cplx a = x(0);
    const double absa = std::abs(a);
    const double norm = std::sqrt(absa * absa + tail2);
    if (norm < 1e-12) throw DegenerateError("vanishing pivot column: spectral measure has fewer than n points");

    // w = a - phase * norm, rewritten as phase * (|a| - norm) to avoid cancellation.
    cplx w;
    if (realform) {
      w = a.real() > 0.0 ? cplx(-tail2 / (a.real() + norm)) : cplx(a.real() - norm);
    } else {
      const cplx phase = absa < 1e-14 ? cplx(1.0) : a / absa;
      w = phase * (-tail2 / (absa + norm));
    }
    Eigen::VectorXcd hv = x;
    hv(0) = w;
    const double hv2 = hv.squaredNorm();
    if (hv2 > 0.0) {
      // Conjugate by R = I - 2 v v^dagger / ||v||^2 on rows/cols k+1..n-1.
      auto rows = A.bottomRows(len);
      const Eigen::RowVectorXcd left = hv.adjoint() * rows;
      rows -= (2.0 / hv2) * hv * left;
      auto cols = A.rightCols(len);
      const Eigen::VectorXcd right = cols * hv;
      cols -= (2.0 / hv2) * right * hv.adjoint();
    }
    if (!realform) {
      const cplx sub = A(k + 1, k);
      const double abs_sub = std::abs(sub);
      const cplx d = abs_sub > 0.0 ? std::conj(sub) / abs_sub : cplx(1.0);
      A.row(k + 1) *= d;
      A.col(k + 1) *= std::conj(d);
    }
    A.col(k).tail(len - 1).setZero();
  }

  std::vector<cplx> alphas(static_cast<std::size_t>(n));
  Eigen::VectorXcd X = Eigen::VectorXcd::Zero(n);
  X(0) = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    const cplx abar = X.head(c + 1).dot(A.col(c).head(c + 1));
    cplx a = std::conj(abar);
    if (realform) a = a.real();
    if (c + 1 == n) {
      a /= std::abs(a);
    } else if (!(std::abs(a) < 1.0)) {
      throw DegenerateError("reduced matrix has a unimodular interior coefficient");
    }
    alphas[static_cast<std::size_t>(c)] = a;
    if (c + 1 < n) {
      // X_{c+1} = rho_c X_c (rows 0..c) followed by -alpha_c in row c+1.
      const double rho = std::abs(A(c + 1, c));
      if (rhos) rhos->push_back(rho);
      X.head(c + 1) *= rho;
      X(c + 1) = -a;
    }
  }
  return VerblunskySeq(std::move(alphas));
}

}  // namespace detail

/// Verblunsky coefficients of a finitely supported measure.
///
/// The measure is the spectral measure of (D, q) with D = diag(z_j) and
/// q = (sqrt(mu_j)). A reflection W with W e_1 = q moves this to (W D W, e_1),
/// whose Householder reduction yields the coefficients. Only unitary
/// transformations are involved, so clustered points and tiny weights do not
/// destroy orthogonality the way a three-term (Stieltjes-type) recursion does.
/// An interior coefficient within 1e-10 of the circle flags near-degeneracy
/// in `diag` rather than throwing. Conjugation-symmetric measures return
/// exactly real coefficients.
inline VerblunskySeq measure_to_verblunsky(const SpectralMeasureCircle& m,
                                           MeasureDiagnostics* diag = nullptr) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::VectorXd q(n);
  for (Eigen::Index j = 0; j < n; ++j) q(j) = std::sqrt(m.weights()[static_cast<std::size_t>(j)]);
  q.normalize();
  Eigen::VectorXd v = -q;
  v(0) += 1.0;
  const double v2 = v.squaredNorm();
  Eigen::MatrixXd W = Eigen::MatrixXd::Identity(n, n);
  if (v2 > 0.0) W -= (2.0 / v2) * v * v.transpose();
  Eigen::MatrixXcd U(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const cplx z = m.point(static_cast<std::size_t>(c));
    for (Eigen::Index r = 0; r < n; ++r) U(r, c) = W(r, c) * z;
  }
  U = U * W;

  MeasureDiagnostics local;
  VerblunskySeq out = detail::hessenberg_verblunsky(U, false, &local.rho);
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double gap = 1.0 - std::abs(out[k]);
    local.min_interior_gap = std::min(local.min_interior_gap, gap);
    if (gap < 1e-10) local.near_degenerate = true;
  }
  if (diag) *diag = local;
  if (!detail::conjugation_symmetric(m)) return out;
  std::vector<double> re(out.size());
  for (std::size_t k = 0; k < re.size(); ++k) re[k] = out[k].real();
  re.back() = re.back() < 0.0 ? -1.0 : 1.0;
  return VerblunskySeq::from_real(re);
}

/// Both sides of |Delta(z)|^2 prod mu_j = prod_{k<=n-2} (1-|alpha_k|^2)^{n-k-1},
/// kept as logarithms.
struct ToeplitzSides {
  double log_lhs = 0.0;
  double log_rhs = 0.0;

  double lhs() const { return std::exp(log_lhs); }
  double rhs() const { return std::exp(log_rhs); }
  /// |lhs - rhs| / lhs
  double relative_gap() const { return std::abs(std::expm1(log_rhs - log_lhs)); }
};

inline double log_vandermonde_sq_circle(std::span<const double> thetas) {
  double s = 0.0;
  for (std::size_t j = 0; j < thetas.size(); ++j)
    for (std::size_t k = j + 1; k < thetas.size(); ++k) s += 2.0 * log_chord(thetas[j], thetas[k]);
  return s;
}

/// The right side uses rho_k^2 from the reduction in place of 1 - |alpha_k|^2,
/// which would cancel badly for nearly coincident support points.
inline ToeplitzSides toeplitz_det(const SpectralMeasureCircle& m) {
  const std::size_t n = m.size();
  ToeplitzSides out;
  out.log_lhs = log_vandermonde_sq_circle(m.thetas());
  for (double w : m.weights()) out.log_lhs += std::log(w);
  MeasureDiagnostics diag;
  measure_to_verblunsky(m, &diag);
  for (std::size_t k = 0; k + 1 < n; ++k)
    out.log_rhs += 2.0 * static_cast<double>(n - k - 1) * std::log(diag.rho[k]);
  return out;
}

/// Phi_{2n}(1) = 2 prod_{k<=2n-2} (1 - alpha_k) and
/// Phi_{2n}(-1) = 2 prod_{k<=2n-2} (1 + (-1)^k alpha_k) for a real sequence of
/// length 2n ending in -1.
inline std::pair<double, double> phi2n_at_pm1(const VerblunskySeq& v, std::size_t n) {
  if (!v.is_real()) throw ParameterError("phi2n_at_pm1 requires real Verblunsky coefficients");
  detail::require(n >= 1 && v.size() == 2 * n, "sequence length must be 2n");
  detail::require(std::abs(v[2 * n - 1].real() + 1.0) <= kUnimodularTol,
                  "last coefficient must equal -1");
  double plus = 2.0, minus = 2.0;
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
    const double a = v[k].real();
    plus *= 1.0 - a;
    minus *= (k % 2 == 0) ? 1.0 + a : 1.0 - a;
  }
  return {plus, minus};
}

/// tilde alpha_k = -e^{i phi} conj(alpha_{m-2-k}) for k <= m-2 and
/// tilde alpha_{m-1} = e^{i phi}, where alpha_{m-1} = e^{i phi}. Both systems
/// share the same degree-m monic orthogonal polynomial.
inline VerblunskySeq reverse_coefficients(const VerblunskySeq& v) {
  const std::size_t m = v.size();
  const cplx u = v[m - 1];
  std::vector<cplx> out(m);
  for (std::size_t k = 0; k + 1 < m; ++k) out[k] = -u * std::conj(v[m - 2 - k]);
  out[m - 1] = u;
  return VerblunskySeq(std::move(out));
}

}  // namespace cmvbeta
