#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cmvbeta/cmv.hpp"
#include "cmvbeta/distributions.hpp"
#include "cmvbeta/opuc.hpp"
#include "oracles.hpp"

using namespace cmvbeta;

namespace {

SpectralMeasureCircle random_measure(std::size_t n, RngStream& rng, double min_gap = 1e-3) {
  for (;;) {
    std::vector<double> th(n);
    for (auto& t : th) t = 2.0 * std::numbers::pi * rng.uniform();
    std::vector<double> s = th;
    std::sort(s.begin(), s.end());
    bool ok = n == 1 || s.front() + 2.0 * std::numbers::pi - s.back() > min_gap;
    for (std::size_t j = 1; j < n; ++j) ok = ok && s[j] - s[j - 1] > min_gap;
    if (ok) return SpectralMeasureCircle(th, sample_simplex(static_cast<int>(n), rng));
  }
}

}  // namespace

TEST(VerblunskySeq, Invariants) {
  EXPECT_NO_THROW(VerblunskySeq({0.5, cplx(0.6, 0.8)}));
  EXPECT_THROW(VerblunskySeq({1.0, 1.0}), ParameterError);
  EXPECT_THROW(VerblunskySeq({0.5, 0.9}), ParameterError);
  EXPECT_THROW(VerblunskySeq(std::vector<cplx>{}), ParameterError);
  const VerblunskySeq v({0.6, -1.0});
  EXPECT_EQ(v.alpha(-1), cplx(-1.0));
  EXPECT_EQ(v.alpha(-2), cplx(0.0));
  EXPECT_EQ(v.alpha(5), cplx(0.0));
  EXPECT_NEAR(v.rho(0), 0.8, 1e-15);
  EXPECT_EQ(v.rho(1), 0.0);
  EXPECT_TRUE(v.is_real());
  EXPECT_FALSE(VerblunskySeq({cplx(0, 0.1), 1.0}).is_real());
}

TEST(SpectralMeasureCircle, Invariants) {
  EXPECT_THROW(SpectralMeasureCircle({0.0, 1.0}, {0.5, 0.6}), ParameterError);
  EXPECT_THROW(SpectralMeasureCircle({0.0, 7.0}, {0.5, 0.5}), ParameterError);
  EXPECT_THROW(SpectralMeasureCircle({0.0, 1.0}, {1.0, 0.0}), ParameterError);
  EXPECT_THROW(SpectralMeasureCircle({1.0, 1.0 + 1e-11}, {0.5, 0.5}), DegenerateError);
  EXPECT_THROW(SpectralMeasureCircle({0.0, 2.0 * std::numbers::pi - 1e-11}, {0.5, 0.5}), DegenerateError);
}

TEST(Szego, FreeCase) {
  const VerblunskySeq v({0.0, 0.0, 0.0, 1.0});
  const cplx z(0.3, -1.2);
  const auto [phi, phis] = szego_evaluate(v, z, 3);
  EXPECT_NEAR(std::abs(phi - std::pow(z, 3)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(phis - 1.0), 0.0, 1e-14);
}

TEST(Szego, HandIteration) {
  const VerblunskySeq v({0.5, 1.0});
  EXPECT_NEAR(std::abs(szego_evaluate(v, 1.0, 1).first - 0.5), 0.0, 1e-15);
}

TEST(Szego, ReversedPolynomialHasEqualModulusOnCircle) {
  RngStream rng(1, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const VerblunskySeq v = oracle::random_sequence(10, rng);
    for (int i = 0; i < 100; ++i) {
      const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
      for (std::size_t k : {1, 5, 10}) {
        const auto [phi, phis] = szego_evaluate(v, z, k);
        ASSERT_NEAR(std::abs(phi), std::abs(phis), 1e-10 * std::max(1.0, std::abs(phi)));
      }
    }
  }
}

TEST(Szego, RejectsDegreeBeyondLength) {
  const VerblunskySeq v({0.1, 1.0});
  EXPECT_THROW(szego_evaluate(v, 1.0, 3), ParameterError);
  EXPECT_THROW(monic_coeffs(v, 3), ParameterError);
}

TEST(MonicCoeffs, KnownShapes) {
  const VerblunskySeq zero({0.0, 0.0, cplx(0, 1)});
  const auto p = monic_coeffs(zero, 2);
  EXPECT_EQ(p.coeffs(), (std::vector<cplx>{0.0, 0.0, 1.0}));
  const VerblunskySeq v({cplx(0.2, 0.3), 1.0});
  const auto q = monic_coeffs(v, 1);
  EXPECT_EQ(q[0], -std::conj(v[0]));
  EXPECT_EQ(q[1], cplx(1.0));
  EXPECT_EQ(monic_coeffs(v, 0).coeffs(), std::vector<cplx>{1.0});
}

TEST(MonicCoeffs, AgreesWithRecurrenceValues) {
  RngStream rng(2, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const VerblunskySeq v = oracle::random_sequence(1 + trial % 12, rng);
    const std::size_t k = v.size();
    const MonicPolynomial p = monic_coeffs(v, k);
    for (int i = 0; i < 10; ++i) {
      const cplx z(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
      const cplx direct = szego_evaluate(v, z, k).first;
      ASSERT_LE(std::abs(p(z) - direct), 1e-10 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST(MonicCoeffs, RealCoefficientsStayReal) {
  RngStream rng(3, 0);
  const VerblunskySeq v = oracle::random_real_sequence(5, rng);
  const MonicPolynomial p = monic_coeffs(v, 10);
  for (const cplx& c : p.coeffs()) EXPECT_EQ(c.imag(), 0.0);
}

TEST(PhiNorm, ExamplesAndDiscreteNorm) {
  EXPECT_EQ(phi_norm(VerblunskySeq({0.3, 1.0}), 0), 1.0);
  EXPECT_NEAR(phi_norm(VerblunskySeq({0.6, 1.0}), 1), 0.8, 1e-15);
  EXPECT_THROW(phi_norm(VerblunskySeq({0.6, 1.0}), 2), ParameterError);

  RngStream rng(4, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const SpectralMeasureCircle m = random_measure(2 + trial % 8, rng);
    const VerblunskySeq v = measure_to_verblunsky(m);
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
      const MonicPolynomial p = monic_coeffs(v, k);
      double norm2 = 0.0;
      for (std::size_t j = 0; j < m.size(); ++j) norm2 += m.weights()[j] * std::norm(p(m.point(j)));
      ASSERT_NEAR(std::sqrt(norm2), phi_norm(v, k), 1e-10);
    }
  }
}

TEST(MeasureToVerblunsky, SinglePoint) {
  const SpectralMeasureCircle m({1.1}, {1.0});
  const VerblunskySeq v = measure_to_verblunsky(m);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NEAR(std::abs(v[0] - std::conj(std::polar(1.0, 1.1))), 0.0, 1e-15);
}

TEST(MeasureToVerblunsky, PlusMinusOne) {
  const SpectralMeasureCircle m({0.0, std::numbers::pi}, {0.5, 0.5});
  const VerblunskySeq v = measure_to_verblunsky(m);
  // Phi_2 = z^2 - 1 = z Phi_1 - conj(alpha_1) Phi_1^*, so alpha_1 = +1; the
  // determinant identity agrees: det = -1 = -conj(alpha_1).
  EXPECT_NEAR(std::abs(v[0]), 0.0, 1e-15);
  EXPECT_EQ(v[1], cplx(1.0));
  EXPECT_TRUE(v.is_real());
}

TEST(MeasureToVerblunsky, MatchesGramSchmidtOracle) {
  RngStream rng(5, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const SpectralMeasureCircle m = random_measure(1 + trial % 8, rng, 0.1);
    const VerblunskySeq v = measure_to_verblunsky(m);
    const auto ref = oracle::gram_schmidt_alphas(m.thetas(), m.weights());
    for (std::size_t k = 0; k < v.size(); ++k) ASSERT_LE(std::abs(v[k] - ref[k]), 1e-8) << trial << " " << k;
  }
}

TEST(MeasureToVerblunsky, InverseOfCmvSpectral) {
  RngStream rng(6, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const VerblunskySeq v = oracle::random_sequence(1 + trial % 20, rng);
    const VerblunskySeq w = measure_to_verblunsky(cmv_spectral(v));
    for (std::size_t k = 0; k < v.size(); ++k) ASSERT_LE(std::abs(v[k] - w[k]), 1e-8);
  }
}

TEST(MeasureToVerblunsky, NearDegenerateIsFlaggedNotThrown) {
  const SpectralMeasureCircle m({0.5, 0.5 + 2e-10, 3.0}, {0.3, 0.3, 0.4});
  MeasureDiagnostics d;
  EXPECT_NO_THROW(measure_to_verblunsky(m, &d));
  EXPECT_LT(d.min_interior_gap, 1e-6);
}

TEST(Toeplitz, Examples) {
  const auto two = toeplitz_det(SpectralMeasureCircle({0.0, std::numbers::pi}, {0.5, 0.5}));
  EXPECT_NEAR(two.lhs(), 1.0, 1e-14);
  EXPECT_NEAR(two.rhs(), 1.0, 1e-14);
  const auto one = toeplitz_det(SpectralMeasureCircle({2.0}, {1.0}));
  EXPECT_EQ(one.lhs(), 1.0);
  EXPECT_EQ(one.rhs(), 1.0);
}

TEST(Toeplitz, HoldsForRandomMeasures) {
  RngStream rng(7, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const SpectralMeasureCircle m = random_measure(n, rng, 1e-9);
    const auto s = toeplitz_det(m);
    ASSERT_LE(s.relative_gap(), 1e-8) << "n=" << n;
    double direct = oracle::vandermonde_sq_direct(m.thetas());
    for (double w : m.weights()) direct *= w;
    ASSERT_NEAR(s.lhs() / direct, 1.0, 1e-10);
  }
}

TEST(Phi2n, Examples) {
  const VerblunskySeq zero = VerblunskySeq::from_real(std::vector<double>{0, 0, 0, -1});
  EXPECT_EQ(phi2n_at_pm1(zero, 2), std::make_pair(2.0, 2.0));
  const VerblunskySeq one = VerblunskySeq::from_real(std::vector<double>{0.3, -1});
  EXPECT_NEAR(phi2n_at_pm1(one, 1).first, 1.4, 1e-15);
  EXPECT_THROW(phi2n_at_pm1(VerblunskySeq({cplx(0, 0.3), -1.0}), 1), ParameterError);
}

TEST(Phi2n, MatchesDirectEvaluation) {
  RngStream rng(8, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const VerblunskySeq v = oracle::random_real_sequence(n, rng);
    const auto [p1, m1] = phi2n_at_pm1(v, n);
    EXPECT_NEAR(p1, szego_evaluate(v, 1.0, 2 * n).first.real(), 1e-10 * std::max(1.0, std::abs(p1)));
    EXPECT_NEAR(m1, szego_evaluate(v, -1.0, 2 * n).first.real(), 1e-10 * std::max(1.0, std::abs(m1)));
  }
}

TEST(Reverse, RealSequenceWithPiPhaseIsPlainReversal) {
  const VerblunskySeq v = VerblunskySeq::from_real(std::vector<double>{0.1, -0.2, 0.7, -1.0});
  const VerblunskySeq r = reverse_coefficients(v);
  EXPECT_NEAR(r[0].real(), 0.7, 1e-16);
  EXPECT_NEAR(r[1].real(), -0.2, 1e-16);
  EXPECT_NEAR(r[2].real(), 0.1, 1e-16);
  EXPECT_EQ(r[3], cplx(-1.0));
}

TEST(Reverse, InvolutionAndSamePolynomial) {
  RngStream rng(9, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 10;
    const VerblunskySeq v = oracle::random_sequence(m, rng);
    const VerblunskySeq r = reverse_coefficients(v);
    const VerblunskySeq rr = reverse_coefficients(r);
    for (std::size_t k = 0; k < m; ++k) ASSERT_LE(std::abs(rr[k] - v[k]), 1e-15);
    const auto p = monic_coeffs(v, m), q = monic_coeffs(r, m);
    for (std::size_t k = 0; k <= m; ++k) ASSERT_LE(std::abs(p[k] - q[k]), 1e-10);
  }
}

TEST(Reverse, DegreeMPolynomialVanishesOnSupport) {
  RngStream rng(10, 0);
  const SpectralMeasureCircle m = random_measure(6, rng, 0.05);
  const auto p = monic_coeffs(measure_to_verblunsky(m), 6);
  std::vector<cplx> roots;
  for (std::size_t j = 0; j < 6; ++j) roots.push_back(m.point(j));
  const auto ref = oracle::poly_from_roots(roots);
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_LE(std::abs(p[k] - ref[k]), 1e-9);
}
