#pragma once

// CMV and Hessenberg representations of multiplication by z, Householder
// reduction of a unitary matrix to Hessenberg form, and spectral measures.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "cmvbeta/errors.hpp"
#include "cmvbeta/opuc.hpp"

namespace cmvbeta {

using MatrixC = Eigen::MatrixXcd;
using MatrixR = Eigen::MatrixXd;

/// L = diag(Xi_0, Xi_2, ...) and M = diag(Xi_{-1}, Xi_1, Xi_3, ...) with
/// Xi_k = [[conj a_k, rho_k], [rho_k, -a_k]], Xi_{-1} = [1] and the final block
/// the 1x1 matrix [conj a_{n-1}].
class CMVOperator {
 public:
  explicit CMVOperator(VerblunskySeq v) : v_(std::move(v)) {
    const auto n = static_cast<Eigen::Index>(v_.size());
    L_ = MatrixC::Zero(n, n);
    M_ = MatrixC::Zero(n, n);
    M_(0, 0) = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      MatrixC& target = (k % 2 == 0) ? L_ : M_;
      const cplx a = v_[static_cast<std::size_t>(k)];
      if (k == n - 1) {
        target(k, k) = std::conj(a);
        break;
      }
      const double rho = v_.rho(static_cast<std::size_t>(k));
      target(k, k) = std::conj(a);
      target(k, k + 1) = rho;
      target(k + 1, k) = rho;
      target(k + 1, k + 1) = -a;
    }
  }

  const VerblunskySeq& coefficients() const { return v_; }
  const MatrixC& L() const { return L_; }
  const MatrixC& M() const { return M_; }
  MatrixC lm() const { return L_ * M_; }
  MatrixC ml() const { return M_ * L_; }
  Eigen::Index dim() const { return L_.rows(); }

 private:
  VerblunskySeq v_;
  MatrixC L_;
  MatrixC M_;
};

inline CMVOperator build_cmv(const VerblunskySeq& v) { return CMVOperator(v); }

/// Upper Hessenberg unitary with positive subdiagonal.
struct HessenbergOperator {
  MatrixC H;
};

/// Matrix of f -> z f in the orthonormal polynomial basis (0-based indices):
///   H(r, c) = -alpha_{r-1} conj(alpha_c) prod_{l=r}^{c-1} rho_l   for r <= c,
///   H(c+1, c) = rho_c, and zero below the subdiagonal; alpha_{-1} = -1.
inline HessenbergOperator build_hessenberg(const VerblunskySeq& v) {
  const auto n = static_cast<Eigen::Index>(v.size());
  MatrixC H = MatrixC::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const cplx abar = std::conj(v[static_cast<std::size_t>(c)]);
    double prod = 1.0;
    for (Eigen::Index r = c; r >= 0; --r) {
      if (r < c) prod *= v.rho(static_cast<std::size_t>(r));
      H(r, c) = -v.alpha(r - 1) * abar * prod;
    }
    if (c + 1 < n) H(c + 1, c) = v.rho(static_cast<std::size_t>(c));
  }
  return {std::move(H)};
}

inline double unitarity_defect(const MatrixC& U) {
  const auto n = U.rows();
  return (U * U.adjoint() - MatrixC::Identity(n, n)).cwiseAbs().maxCoeff();
}

/// Verblunsky coefficients of the spectral measure of (U, e_1); see
/// detail::hessenberg_verblunsky for the reduction itself.
inline VerblunskySeq householder_reduce(const MatrixC& U, bool realform = false) {
  detail::require(U.rows() == U.cols() && U.rows() >= 1, "matrix must be square");
  if (unitarity_defect(U) > 1e-8) throw NotUnitaryError("input matrix is not unitary");
  if (realform && U.imag().cwiseAbs().maxCoeff() != 0.0)
    throw ParameterError("realform reduction requires a real matrix");
  return detail::hessenberg_verblunsky(U, realform);
}

/// Eigen-decomposition of a CMV matrix: the measure plus the raw distance of
/// the computed eigenvalues from the unit circle before projection.
struct CircleSpectrum {
  SpectralMeasureCircle measure;
  std::vector<cplx> eigenvalues;
  double max_modulus_defect = 0.0;
};

namespace detail {

/// Re-orthonormalize eigenvectors whose eigenvalues lie closer than `gap`;
/// columns of a normal matrix's eigenbasis must be orthogonal but solvers
/// return arbitrary bases of near-degenerate clusters.
inline void orthonormalize_clusters(const Eigen::VectorXcd& lambda, MatrixC& V, double gap) {
  const Eigen::Index n = lambda.size();
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (done[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> cluster{i};
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(lambda(j) - lambda(i)) < gap) cluster.push_back(j);
    for (auto c : cluster) done[static_cast<std::size_t>(c)] = true;
    if (cluster.size() < 2) continue;
    for (std::size_t p = 0; p < cluster.size(); ++p) {
      auto vp = V.col(cluster[p]);
      for (std::size_t q = 0; q < p; ++q) {
        const auto vq = V.col(cluster[q]);
        vp -= vq.dot(vp) * vq;
      }
      vp.normalize();
    }
  }
}

}  // namespace detail

inline CircleSpectrum cmv_eigen(const VerblunskySeq& v) {
  const CMVOperator op(v);
  const MatrixC C = op.lm();
  Eigen::ComplexEigenSolver<MatrixC> solver(C, true);
  if (solver.info() != Eigen::Success) throw ConvergenceError("complex eigensolver did not converge");
  Eigen::VectorXcd lambda = solver.eigenvalues();
  MatrixC V = solver.eigenvectors();
  for (Eigen::Index j = 0; j < V.cols(); ++j) V.col(j).normalize();
  detail::orthonormalize_clusters(lambda, V, 1e-8);

  const auto n = static_cast<std::size_t>(lambda.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> theta(n), w(n);
  double defect = 0.0;
  std::vector<cplx> raw(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    raw[j] = lambda(jj);
    defect = std::max(defect, std::abs(std::abs(lambda(jj)) - 1.0));
    theta[j] = wrap_angle(std::arg(lambda(jj)));
    w[j] = std::norm(V(0, jj));
  }
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return theta[a] < theta[b]; });
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> ts(n), ws(n);
  std::vector<cplx> eig(n);
  for (std::size_t j = 0; j < n; ++j) {
    ts[j] = theta[order[j]];
    ws[j] = w[order[j]] / total;
    eig[j] = raw[order[j]];
  }
  return {SpectralMeasureCircle(std::move(ts), std::move(ws)), std::move(eig), defect};
}

/// Eigen-angles in [0, 2pi), ascending, with weights |<e_1, v_j>|^2.
inline SpectralMeasureCircle cmv_spectral(const VerblunskySeq& v) {
  CircleSpectrum s = cmv_eigen(v);
  if (s.max_modulus_defect > 1e-10)
    throw ConvergenceError("CMV eigenvalues are not unimodular to 1e-10");
  return std::move(s.measure);
}

struct DetCheck {
  cplx prod_eigs;
  cplx formula;
  double error() const { return std::abs(prod_eigs - formula); }
};

/// prod lambda_j against (-1)^{m-1} conj(alpha_{m-1}).
inline DetCheck cmv_det_check(const VerblunskySeq& v) {
  const SpectralMeasureCircle m = cmv_spectral(v);
  // Product of unit-modulus eigenvalues is exp(i * sum theta).
  double phase = 0.0;
  for (double t : m.thetas()) phase += t;
  const double sign = (v.size() % 2 == 1) ? 1.0 : -1.0;
  return {std::polar(1.0, phase), sign * std::conj(v[v.size() - 1])};
}

}  // namespace cmvbeta
