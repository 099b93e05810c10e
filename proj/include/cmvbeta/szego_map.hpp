#pragma once

// From the circle to the interval [-2, 2]: pushforward of conjugation-symmetric
// measures under x = z + 1/z, the Geronimus relations, the symmetric
// tridiagonal eigensolver, the LM + ML direct-sum splitting, and the classical
// Jacobi recurrence.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cmvbeta/cmv.hpp"
#include "cmvbeta/errors.hpp"
#include "cmvbeta/opuc.hpp"
#include "cmvbeta/polynomial.hpp"

namespace cmvbeta {

/// Real symmetric tridiagonal matrix: diagonal b_1..b_n, off-diagonal
/// a_1..a_{n-1}, all a_k > 0.
struct JacobiOperator {
  std::vector<double> b;
  std::vector<double> a;

  JacobiOperator() = default;
  JacobiOperator(std::vector<double> diag, std::vector<double> off)
      : b(std::move(diag)), a(std::move(off)) {
    detail::require(!b.empty() && a.size() + 1 == b.size(),
                    "Jacobi operator needs n diagonal and n-1 off-diagonal entries");
    for (double ak : a) detail::require(ak > 0.0, "Jacobi off-diagonal entries must be positive");
  }

  std::size_t size() const { return b.size(); }

  MatrixR dense() const {
    const auto n = static_cast<Eigen::Index>(b.size());
    MatrixR J = MatrixR::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      J(i, i) = b[static_cast<std::size_t>(i)];
      if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = a[static_cast<std::size_t>(i)];
    }
    return J;
  }
};

/// Point masses (x_j, mu_j) on the line, sorted ascending. Measures produced
/// by the samplers live on [-2, 2]; `within_interval` checks that.
struct SpectralMeasureInterval {
  std::vector<double> xs;
  std::vector<double> weights;

  SpectralMeasureInterval() = default;
  SpectralMeasureInterval(std::vector<double> x, std::vector<double> w)
      : xs(std::move(x)), weights(std::move(w)) {
    detail::require(!xs.empty() && xs.size() == weights.size(),
                    "measure needs matching, non-empty point and weight lists");
    double total = 0.0;
    for (double wj : weights) {
      detail::require(wj >= 0.0, "weights must be non-negative");
      total += wj;
    }
    detail::require(std::abs(total - 1.0) <= 1e-10, "weights must sum to 1");
  }

  std::size_t size() const { return xs.size(); }

  bool within_interval(double tol = 1e-10) const {
    return std::all_of(xs.begin(), xs.end(), [&](double x) { return std::abs(x) <= 2.0 + tol; });
  }
};

/// x_j = 2 cos(theta_j) for a measure made of (theta, 2pi - theta) pairs of
/// equal weight; the pushed weight is the pair's total mass.
inline SpectralMeasureInterval push_to_interval(const SpectralMeasureCircle& m,
                                                double tol = 1e-9) {
  const std::size_t total = m.size();
  std::vector<std::pair<double, double>> upper, lower;
  for (std::size_t j = 0; j < total; ++j) {
    const double t = m.thetas()[j];
    if (t > tol && t < std::numbers::pi - tol)
      upper.emplace_back(t, m.weights()[j]);
    else if (t > std::numbers::pi + tol && t < 2.0 * std::numbers::pi - tol)
      lower.emplace_back(t, m.weights()[j]);
    else
      throw ParameterError("measure has mass at z = +-1; not conjugation-paired");
  }
  if (upper.size() != lower.size()) throw ParameterError("measure is not conjugation-symmetric");
  std::sort(upper.begin(), upper.end());
  std::sort(lower.begin(), lower.end(), std::greater<>());
  std::vector<std::pair<double, double>> pts;
  for (std::size_t j = 0; j < upper.size(); ++j) {
    if (std::abs(upper[j].first + lower[j].first - 2.0 * std::numbers::pi) > tol ||
        std::abs(upper[j].second - lower[j].second) > tol)
      throw ParameterError("measure is not conjugation-symmetric");
    pts.emplace_back(2.0 * std::cos(upper[j].first), upper[j].second + lower[j].second);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> xs, ws;
  for (auto& [x, w] : pts) {
    xs.push_back(x);
    ws.push_back(w);
  }
  return {std::move(xs), std::move(ws)};
}

namespace detail {

inline std::vector<double> checked_real_sequence(const VerblunskySeq& v, std::size_t n) {
  if (!v.is_real()) throw ParameterError("Geronimus relations need real Verblunsky coefficients");
  detail::require(n >= 1 && v.size() == 2 * n, "sequence length must be 2n");
  detail::require(std::abs(v[2 * n - 1].real() + 1.0) <= kUnimodularTol,
                  "last Verblunsky coefficient must be -1");
  return v.real_alphas();
}

/// alpha_k with alpha_{-1} = -1, alpha_{-2} = 0 and 0 past the end.
inline double real_alpha(std::span<const double> al, std::ptrdiff_t k) {
  if (k == -1) return -1.0;
  if (k < 0 || k >= static_cast<std::ptrdiff_t>(al.size())) return 0.0;
  return al[static_cast<std::size_t>(k)];
}

}  // namespace detail

/// Geronimus relations, for 0 <= k <= n-1:
///   b_{k+1} = (1 - a_{2k-1}) a_{2k} - (1 + a_{2k-1}) a_{2k-2}
///   a_{k+1} = sqrt((1 - a_{2k-1})(1 - a_{2k}^2)(1 + a_{2k+1}))
/// a_n vanishes because alpha_{2n-1} = -1 and is not stored.
inline JacobiOperator geronimus(const VerblunskySeq& v, std::size_t n) {
  const std::vector<double> al = detail::checked_real_sequence(v, n);
  auto A = [&](std::ptrdiff_t k) { return detail::real_alpha(al, k); };
  std::vector<double> b(n), a(n - 1);
  for (std::size_t kk = 0; kk < n; ++kk) {
    const auto k = static_cast<std::ptrdiff_t>(kk);
    b[kk] = (1.0 - A(2 * k - 1)) * A(2 * k) - (1.0 + A(2 * k - 1)) * A(2 * k - 2);
    if (kk + 1 < n)
      a[kk] = std::sqrt((1.0 - A(2 * k - 1)) * (1.0 - A(2 * k) * A(2 * k)) * (1.0 + A(2 * k + 1)));
  }
  return JacobiOperator(std::move(b), std::move(a));
}

/// Eigenvalues and squared first eigenvector components of a Jacobi matrix by
/// implicit-shift QL. Only the first row of the eigenvector matrix is carried
/// through the rotations.
inline SpectralMeasureInterval jacobi_spectral(const JacobiOperator& J) {
  const std::size_t n = J.size();
  std::vector<double> d = J.b, e(n, 0.0), z(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = J.a[i];
  z[0] = 1.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw ConvergenceError("tridiagonal QL did not converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(m) - 1;
           i >= static_cast<std::ptrdiff_t>(l); --i) {
        const auto iu = static_cast<std::size_t>(i);
        const double f = s * e[iu];
        const double bb = c * e[iu];
        r = std::hypot(f, g);
        e[iu + 1] = r;
        if (r == 0.0) {
          d[iu + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[iu + 1] - p;
        r = (d[iu] - g) * s + 2.0 * c * bb;
        p = s * r;
        d[iu + 1] = g + p;
        g = c * r - bb;
        const double zf = z[iu + 1];
        z[iu + 1] = s * z[iu] + c * zf;
        z[iu] = c * z[iu] - s * zf;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return d[x] < d[y]; });
  double total = 0.0;
  for (double zj : z) total += zj * zj;
  std::vector<double> xs(n), ws(n);
  for (std::size_t j = 0; j < n; ++j) {
    xs[j] = d[order[j]];
    ws[j] = z[order[j]] * z[order[j]] / total;
  }
  return {std::move(xs), std::move(ws)};
}

/// det(x - J) by the three-term recurrence of the leading principal minors.
inline RealMonicPolynomial charpoly(const JacobiOperator& J) {
  std::vector<double> prev{1.0}, cur{-J.b[0], 1.0};
  for (std::size_t k = 1; k < J.size(); ++k) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += cur[i];
      next[i] -= J.b[k] * cur[i];
    }
    const double a2 = J.a[k - 1] * J.a[k - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= a2 * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  cur.back() = 1.0;
  return RealMonicPolynomial(std::move(cur));
}

/// Coefficients (ascending powers of x) of C_k(x) = z^k + z^{-k} with
/// x = z + 1/z, i.e. 2 T_k(x/2): C_0 = 2, C_1 = x, C_{k+1} = x C_k - C_{k-1}.
inline std::vector<std::vector<double>> chebyshev_c_triangle(std::size_t max_k) {
  std::vector<std::vector<double>> C(max_k + 1);
  C[0] = {2.0};
  if (max_k >= 1) C[1] = {0.0, 1.0};
  for (std::size_t k = 2; k <= max_k; ++k) {
    C[k].assign(k + 1, 0.0);
    for (std::size_t i = 0; i < C[k - 1].size(); ++i) C[k][i + 1] += C[k - 1][i];
    for (std::size_t i = 0; i < C[k - 2].size(); ++i) C[k][i] -= C[k - 2][i];
  }
  return C;
}

/// Fold a real self-inversive degree-2n polynomial into the degree-n
/// polynomial P with P(z + 1/z) = (z^{-n} Phi(z) + z^n Phi(1/z)) / 2.
inline RealMonicPolynomial fold_self_inversive(const MonicPolynomial& phi) {
  const std::size_t deg = phi.degree();
  detail::require(deg % 2 == 0 && deg >= 2, "folding needs an even-degree polynomial");
  const std::size_t n = deg / 2;
  const auto C = chebyshev_c_triangle(n);
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t l = 0; l <= deg; ++l) {
    const double cl = phi[l].real();
    const std::size_t k = l > n ? l - n : n - l;
    for (std::size_t i = 0; i < C[k].size(); ++i) out[i] += 0.5 * cl * C[k][i];
  }
  if (std::abs(out[n] - 1.0) > 1e-9)
    throw ParameterError("folded polynomial is not monic; constant term of Phi must be 1");
  out[n] = 1.0;
  return RealMonicPolynomial(std::move(out));
}

struct SplitResult {
  JacobiOperator J;
  JacobiOperator J_tilde;
  double residual = 0.0;
  MatrixR A;
};

/// Conjugate LM + ML by S = diag([1], S_1, S_3, ...) with
///   S_k = 2^{-1/2} [[-sqrt(1-a_k), sqrt(1+a_k)], [sqrt(1+a_k), sqrt(1-a_k)]],
/// which diagonalizes M to diag(+1, -1, +1, ...). The even-indexed principal
/// submatrix is J, the odd-indexed one is J~; `residual` is the largest entry
/// outside those two tridiagonal patterns.
inline SplitResult split_lm_plus_ml(const VerblunskySeq& v) {
  if (!v.is_real()) throw ParameterError("split_lm_plus_ml requires real coefficients");
  const std::size_t m = v.size();
  detail::require(m >= 2 && m % 2 == 0, "split_lm_plus_ml requires an even-length sequence");
  detail::require(std::abs(v[m - 1].real() + 1.0) <= kUnimodularTol,
                  "last Verblunsky coefficient must be -1");
  const CMVOperator op(v);
  const MatrixR L = op.L().real();
  const MatrixR M = op.M().real();
  const auto mi = static_cast<Eigen::Index>(m);

  MatrixR S = MatrixR::Zero(mi, mi);
  S(0, 0) = 1.0;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (Eigen::Index k = 1; k < mi; k += 2) {
    if (k == mi - 1) {
      // S_k at alpha_k = -1 degenerates to the 1x1 block [-1].
      S(k, k) = -1.0;
      break;
    }
    const double ak = v[static_cast<std::size_t>(k)].real();
    const double sm = std::sqrt(1.0 - ak), sp = std::sqrt(1.0 + ak);
    S(k, k) = -sm * inv_sqrt2;
    S(k, k + 1) = sp * inv_sqrt2;
    S(k + 1, k) = sp * inv_sqrt2;
    S(k + 1, k + 1) = sm * inv_sqrt2;
  }
  MatrixR A = S.transpose() * (L * M + M * L) * S;

  const std::size_t n = m / 2;
  std::vector<double> b(n), a(n - 1), bt(n), at(n - 1);
  double residual = 0.0;
  for (Eigen::Index i = 0; i < mi; ++i) {
    for (Eigen::Index j = 0; j < mi; ++j) {
      const bool in_pattern = (i % 2 == j % 2) && std::abs(i - j) <= 2;
      if (!in_pattern) residual = std::max(residual, std::abs(A(i, j)));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto e = static_cast<Eigen::Index>(2 * k), o = e + 1;
    b[k] = A(e, e);
    bt[k] = A(o, o);
    if (k + 1 < n) {
      a[k] = A(e, e + 2);
      at[k] = A(o, o + 2);
    }
  }
  return {JacobiOperator(std::move(b), std::move(a)), JacobiOperator(std::move(bt), std::move(at)),
          residual, std::move(A)};
}

/// Recurrence coefficients of (2 +- x) d nu / (2 (1 +- alpha_0)):
///   b_{k+1} = +-(1 -+ a_{2k}) a_{2k+1} -+ (1 +- a_{2k}) a_{2k-1}
///   a_{k+1} = sqrt((1 -+ a_{2k})(1 - a_{2k+1}^2)(1 +- a_{2k+2}))
/// `sign` is +1 or -1 and selects the upper or lower choice throughout.
inline JacobiOperator twisted_coeffs(const VerblunskySeq& v, int sign) {
  detail::require(sign == 1 || sign == -1, "sign must be +1 or -1");
  if (!v.is_real()) throw ParameterError("twisted_coeffs requires real coefficients");
  detail::require(v.size() >= 2 && v.size() % 2 == 0, "sequence length must be 2n");
  const std::size_t n = v.size() / 2;
  const std::vector<double> al = detail::checked_real_sequence(v, n);
  auto A = [&](std::ptrdiff_t k) { return detail::real_alpha(al, k); };
  const double sg = sign;
  std::vector<double> b(n), a(n - 1);
  for (std::size_t kk = 0; kk < n; ++kk) {
    const auto k = static_cast<std::ptrdiff_t>(kk);
    b[kk] = sg * (1.0 - sg * A(2 * k)) * A(2 * k + 1) - sg * (1.0 + sg * A(2 * k)) * A(2 * k - 1);
    if (kk + 1 < n)
      a[kk] = std::sqrt((1.0 - sg * A(2 * k)) * (1.0 - A(2 * k + 1) * A(2 * k + 1)) *
                        (1.0 + sg * A(2 * k + 2)));
  }
  return JacobiOperator(std::move(b), std::move(a));
}

/// Orthonormal recurrence coefficients for the weight (2-x)^atil (2+x)^btil on
/// [-2, 2], and the monic degree-n orthogonal polynomial.
///
/// The k = 0 terms are evaluated with the common factors (atil+btil) and
/// (atil+btil+1) cancelled, so atil + btil = 0 or -1 needs no special case.
inline std::pair<JacobiOperator, RealMonicPolynomial> classical_jacobi(double atil, double btil,
                                                                       std::size_t n) {
  detail::require(atil > -1.0 && btil > -1.0, "classical Jacobi parameters must exceed -1");
  detail::require(n >= 1, "degree must be at least 1");
  const double s = atil + btil;
  std::vector<double> b(n), a(n - 1);
  for (std::size_t kk = 0; kk < n; ++kk) {
    const double k = static_cast<double>(kk);
    if (kk == 0) {
      b[0] = 2.0 * (btil - atil) / (s + 2.0);
    } else {
      b[kk] = 2.0 * (btil * btil - atil * atil) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
    }
    if (kk + 1 < n) {
      double a2;
      if (kk == 0) {
        a2 = 16.0 * (atil + 1.0) * (btil + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
      } else {
        const double q = 2.0 * k + s + 2.0;
        a2 = 16.0 * (k + 1.0) * (k + s + 1.0) * (k + atil + 1.0) * (k + btil + 1.0) /
             ((2.0 * k + s + 1.0) * q * q * (2.0 * k + s + 3.0));
      }
      a[kk] = std::sqrt(a2);
    }
  }
  JacobiOperator J(std::move(b), std::move(a));
  RealMonicPolynomial p = charpoly(J);
  return {std::move(J), std::move(p)};
}

}  // namespace cmvbeta
