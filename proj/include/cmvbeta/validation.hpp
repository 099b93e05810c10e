#pragma once

// Verification suites: every identity and distributional claim implemented by
// the library, checked against an independent computation. Each check
// reports the measured discrepancy next to its tolerance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "cmvbeta/cmv.hpp"
#include "cmvbeta/distributions.hpp"
#include "cmvbeta/ensembles.hpp"
#include "cmvbeta/io.hpp"
#include "cmvbeta/opuc.hpp"
#include "cmvbeta/quadrature.hpp"
#include "cmvbeta/stats.hpp"
#include "cmvbeta/szego_map.hpp"

namespace cmvbeta::validation {

inline constexpr int kReportSchemaVersion = 1;

/// How `measured` is compared with `tolerance`.
enum class Sense { at_most, at_least };

struct CheckResult {
  std::string name;
  /// The identity or claim the check certifies.
  std::string anchor;
  /// Acceptance criterion number (1..13); 0 for supplementary checks.
  int criterion = 0;
  double measured = 0.0;
  double tolerance = 0.0;
  Sense sense = Sense::at_most;
  bool passed = false;
  double seconds = 0.0;
  /// Message of the exception that aborted the check, if any.
  std::string error;
};

struct Options {
  bool fast = false;
  std::uint64_t seed = 20240607;
  std::size_t threads = 1;
  /// Per-check tolerance overrides keyed by check name.
  std::map<std::string, double> tolerances;
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(const Options& o) : opts_(o) {}

  double tol(const std::string& name, double fallback) const {
    auto it = opts_.tolerances.find(name);
    return it == opts_.tolerances.end() ? fallback : it->second;
  }

  /// Runs `measure` and records the result against the (possibly
  /// overridden) tolerance. Exceptions count as failures with a NaN value.
  void run(const std::string& name, const std::string& anchor, int criterion, double tolerance,
           Sense sense, const std::function<double()>& measure) {
    CheckResult r{name, anchor, criterion, 0.0, tol(name, tolerance), sense, false, 0.0, {}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.measured = measure();
      r.passed = sense == Sense::at_most ? r.measured <= r.tolerance : r.measured >= r.tolerance;
    } catch (const std::exception& e) {
      r.error = e.what();
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results_.push_back(std::move(r));
  }

  const Options& options() const { return opts_; }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  Options opts_;
  std::vector<CheckResult> results_;
};

/// Random measure on the circle with every circular gap at least `min_gap`
/// and every weight at least `min_weight`.
inline SpectralMeasureCircle random_circle_measure(std::size_t n, RngStream& rng,
                                                   double min_gap = 1e-9,
                                                   double min_weight = 0.0) {
  for (;;) {
    std::vector<double> th(n);
    for (auto& t : th) t = 2.0 * std::numbers::pi * rng.uniform();
    std::sort(th.begin(), th.end());
    bool ok = true;
    if (n > 1)
      for (double g : sorted_gaps(th)) ok = ok && g >= min_gap;
    std::vector<double> w = sample_simplex(static_cast<int>(n), rng);
    for (double x : w) ok = ok && x >= min_weight;
    if (ok) return SpectralMeasureCircle(std::move(th), std::move(w));
  }
}

/// Interior coefficients in the open disk, last uniform on the circle.
inline VerblunskySeq random_complex_sequence(std::size_t m, RngStream& rng) {
  std::vector<cplx> al(m);
  for (std::size_t k = 0; k + 1 < m; ++k) al[k] = sample_theta(ThetaParam(3.0), rng);
  al[m - 1] = sample_theta(ThetaParam(1.0), rng);
  return VerblunskySeq(std::move(al));
}

/// Real sequence of length 2n with interior entries uniform on (-1, 1) and
/// last entry -1.
inline VerblunskySeq random_real_sequence(std::size_t n, RngStream& rng) {
  std::vector<double> al(2 * n);
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) al[k] = sample_beta_sym({1.0, 1.0}, rng);
  al[2 * n - 1] = -1.0;
  return VerblunskySeq::from_real(al);
}

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

template <typename T>
double max_coeff_diff(const BasicMonicPolynomial<T>& p, const BasicMonicPolynomial<T>& q) {
  if (p.degree() != q.degree()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i <= p.degree(); ++i) d = std::max(d, std::abs(p[i] - q[i]));
  return d;
}

/// Component j of each draw's statistic vector, collected over the batch.
inline std::vector<std::vector<double>> components(const SampleBatch& batch, bool gaps) {
  const std::size_t n = batch.spec.n;
  std::vector<std::vector<double>> cols(n);
  for (const Draw& d : batch.draws) {
    const std::vector<double> s = gaps ? sorted_gaps(d.points) : d.points;
    for (std::size_t j = 0; j < n; ++j) cols[j].push_back(s[j]);
  }
  return cols;
}

/// Smallest two-sample KS p-value over the components.
inline double min_component_p(const SampleBatch& x, const SampleBatch& y, bool gaps) {
  const auto cx = components(x, gaps), cy = components(y, gaps);
  double p = 1.0;
  for (std::size_t j = 0; j < cx.size(); ++j) p = std::min(p, stats::ks_two_sample(cx[j], cy[j]).p_value);
  return p;
}

/// CDF of B(s,t) on (-1,1): P(X <= x) = I_{(1+x)/2}(t, s).
inline double beta_sym_cdf(double s, double t, double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(t, s, 0.5 * (1.0 + x));
}

inline std::string batch_csv(const SampleBatch& b) {
  std::ostringstream os;
  io::write_csv(os, b);
  return os.str();
}

}  // namespace detail

/// Toeplitz, det-CMV, Szego-map, split, reversal, folding and structural checks.
inline std::vector<CheckResult> run_identities(const Options& opts) {
  detail::Recorder rec(opts);
  const std::uint64_t seed = opts.seed;

  rec.run("toeplitz_identity", "Toeplitz determinant identity |Delta|^2 prod mu = prod (1-|alpha|^2)^(n-k-1)",
          1, 1e-8, Sense::at_most, [&] {
            RngStream rng(seed, 1);
            double worst = 0.0;
            for (int trial = 0; trial < 1000; ++trial) {
              const std::size_t n = 1 + rng.next_u64() % 12;
              worst = std::max(worst, toeplitz_det(detail::random_circle_measure(n, rng)).relative_gap());
            }
            return worst;
          });

  rec.run("det_cmv", "det(LM) = (-1)^(m-1) conj(alpha_(m-1))", 2, 1e-9, Sense::at_most, [&] {
    RngStream rng(seed, 2);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t m = 1 + rng.next_u64() % 15;
      worst = std::max(worst, cmv_det_check(detail::random_complex_sequence(m, rng)).error());
    }
    return worst;
  });

  rec.run("szego_commuting_diagram", "push_to_interval o cmv_spectral = jacobi_spectral o geronimus",
          3, 1e-8, Sense::at_most, [&] {
            RngStream rng(seed, 3);
            double worst = 0.0;
            for (int trial = 0; trial < 200; ++trial) {
              const std::size_t n = 1 + rng.next_u64() % 16;
              const VerblunskySeq v = detail::random_real_sequence(n, rng);
              const SpectralMeasureInterval lhs = push_to_interval(cmv_spectral(v));
              const SpectralMeasureInterval rhs = jacobi_spectral(geronimus(v, n));
              worst = std::max({worst, detail::max_abs_diff(lhs.xs, rhs.xs),
                                detail::max_abs_diff(lhs.weights, rhs.weights)});
            }
            return worst;
          });

  rec.run("folding_identity", "det(x - J) = z^-n Phi_2n(z) folded under x = z + 1/z", 0, 1e-9,
          Sense::at_most, [&] {
            RngStream rng(seed, 33);
            double worst = 0.0;
            for (int trial = 0; trial < 200; ++trial) {
              const std::size_t n = 1 + rng.next_u64() % 12;
              const VerblunskySeq v = detail::random_real_sequence(n, rng);
              worst = std::max(worst, detail::max_coeff_diff(charpoly(geronimus(v, n)),
                                                             fold_self_inversive(monic_coeffs(v, 2 * n))));
            }
            return worst;
          });

  auto split_trials = [&](auto&& metric) {
    RngStream rng(seed, 4);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + rng.next_u64() % 8;
      const VerblunskySeq v = detail::random_real_sequence(n, rng);
      worst = std::max(worst, metric(v, n, split_lm_plus_ml(v)));
    }
    return worst;
  };
  rec.run("split_residual", "S^T (LM + ML) S is a direct sum of two Jacobi matrices", 4, 1e-10,
          Sense::at_most, [&] {
            return split_trials([](const VerblunskySeq&, std::size_t, const SplitResult& s) { return s.residual; });
          });
  rec.run("split_even_block", "even block of the split equals geronimus(alpha)", 4, 1e-10, Sense::at_most, [&] {
    return split_trials([](const VerblunskySeq& v, std::size_t n, const SplitResult& s) {
      const JacobiOperator G = geronimus(v, n);
      return std::max(detail::max_abs_diff(s.J.b, G.b), detail::max_abs_diff(s.J.a, G.a));
    });
  });
  rec.run("split_odd_block_measure", "spectral measure of the odd block is (4-x^2) d nu / (2(1-a0^2)(1-a1))",
          4, 1e-8, Sense::at_most, [&] {
            return split_trials([](const VerblunskySeq& v, std::size_t n, const SplitResult& s) {
              const SpectralMeasureInterval nu = jacobi_spectral(geronimus(v, n));
              const SpectralMeasureInterval mt = jacobi_spectral(s.J_tilde);
              const double a0 = v[0].real(), a1 = v[1].real();
              std::vector<double> w(nu.size());
              for (std::size_t j = 0; j < nu.size(); ++j)
                w[j] = (4.0 - nu.xs[j] * nu.xs[j]) * nu.weights[j] / (2.0 * (1.0 - a0 * a0) * (1.0 - a1));
              return std::max(detail::max_abs_diff(mt.xs, nu.xs), detail::max_abs_diff(mt.weights, w));
            });
          });

  rec.run("coefficient_reversal", "reversed Verblunsky sequence gives the same degree-m polynomial", 5, 1e-10,
          Sense::at_most, [&] {
            RngStream rng(seed, 5);
            double worst = 0.0;
            for (int trial = 0; trial < 100; ++trial) {
              const std::size_t m = 1 + rng.next_u64() % 10;
              const VerblunskySeq v = detail::random_complex_sequence(m, rng);
              worst = std::max(worst, detail::max_coeff_diff(monic_coeffs(v, m),
                                                             monic_coeffs(reverse_coefficients(v), m)));
            }
            return worst;
          });

  rec.run("cmv_unimodularity", "CMV eigenvalues lie on the unit circle (n <= 50)", 13, 1e-10, Sense::at_most, [&] {
    RngStream rng(seed, 13);
    double worst = 0.0;
    for (std::size_t n : {1, 2, 5, 10, 20, 35, 50})
      for (double beta : {0.5, 1.0, 2.0, 4.0})
        for (int rep = 0; rep < 5; ++rep)
          worst = std::max(worst, cmv_eigen(VerblunskySeq(draw_circular_alphas(n, beta, rng))).max_modulus_defect);
    return worst;
  });
  rec.run("jacobi_eigenvalue_range", "Jacobi-model eigenvalues lie in [-2, 2] (excess reported)", 13, 1e-10,
          Sense::at_most, [&] {
            double worst = 0.0;
            for (std::size_t n : {1, 2, 5, 10, 20, 50})
              for (double beta : {0.5, 2.0})
                for (double a : {-0.5, 0.0, 2.0}) {
                  const auto batch = sample_jacobi({n, beta, a, -a / 4.0, seed + n}, 20);
                  for (const Draw& d : batch.draws)
                    for (double x : d.points) worst = std::max(worst, std::abs(x) - 2.0);
                }
            return std::max(worst, 0.0);
          });
  rec.run("byte_identical_reruns", "fixed seed reproduces identical output (mismatch count)", 13, 0.0,
          Sense::at_most, [&] {
            double mismatches = 0.0;
            const EnsembleSpec cs{7, 1.5, 0.0, 0.0, seed};
            const EnsembleSpec js{5, 2.5, 0.5, -0.25, seed};
            const std::string c1 = detail::batch_csv(sample_circular(cs, 200));
            const std::string c2 = detail::batch_csv(sample_circular(cs, 200));
            const std::string c3 = detail::batch_csv(sample_circular(cs, 200, {4, false, false}));
            const std::string j1 = detail::batch_csv(sample_jacobi(js, 200));
            const std::string j2 = detail::batch_csv(sample_jacobi(js, 200, {3, false, false}));
            mismatches += (c1 != c2) + (c1 != c3) + (j1 != j2);
            return mismatches;
          });
  return rec.take();
}

/// Partition function, Selberg and Aomoto checks.
inline std::vector<CheckResult> run_integrals(const Options& opts) {
  detail::Recorder rec(opts);
  for (double beta : {1.0, 2.0, 3.0, 4.0}) {
    std::ostringstream name;
    name << "partition_n2_beta" << beta;
    rec.run(name.str(), "Z_{2,beta} = Gamma(beta+1)/Gamma(beta/2+1)^2 vs quadrature", 6, 1e-6, Sense::at_most,
            [beta] {
              const double exact = partition_circular(2, beta);
              return std::abs(quad::partition_n2_quadrature(beta) - exact) / exact;
            });
  }
  struct Sel {
    const char* name;
    double x, y, z;
  };
  for (const Sel& s : {Sel{"selberg_n2_111", 1, 1, 1}, Sel{"selberg_n2_11half", 1, 1, 0.5},
                       Sel{"selberg_n2_211", 2, 1, 1}}) {
    rec.run(s.name, "Selberg integral over [0,1]^2 vs adaptive quadrature", 7, 1e-5, Sense::at_most, [s] {
      const double q = quad::selberg_n2_quadrature(s.x, s.y, s.z);
      return std::abs(selberg_value(2, s.x, s.y, s.z) - q) / q;
    });
  }
  rec.run("selberg_n2_111_closed", "Selberg (1,1,1) equals 1/6", 7, 1e-12, Sense::at_most,
          [] { return std::abs(selberg_value(2, 1, 1, 1) - 1.0 / 6.0) * 6.0; });

  rec.run("aomoto_exact_routes", "averaged-coefficient polynomial = reversed Geronimus route = classical Jacobi",
          8, 1e-10, Sense::at_most, [] {
            double worst = 0.0;
            for (std::size_t n = 1; n <= 8; ++n)
              for (double beta : {0.5, 1.0, 2.0, 4.0})
                for (double a : {-0.5, 0.0, 1.0})
                  for (double b : {-0.5, 0.0, 1.0}) worst = std::max(worst, aomoto_routes(n, beta, a, b).max_coeff_gap());
            return worst;
          });

  rec.run("aomoto_monte_carlo", "E det(x - J) over sampled J matches expected_charpoly (max |z| score)", 9,
          4.0, Sense::at_most, [&] {
            const EnsembleSpec spec{4, 1.7, 0.3, 1.1, opts.seed + 9};
            const std::size_t count = 20000;
            const SampleBatch batch = sample_jacobi(spec, count, {opts.threads, false, false});
            const RealMonicPolynomial exact = expected_charpoly(4, 1.7, 0.3, 1.1);
            std::vector<std::vector<double>> coeffs(4);
            for (const Draw& d : batch.draws) {
              std::vector<double> c{1.0};
              for (double x : d.points) {
                std::vector<double> next(c.size() + 1, 0.0);
                for (std::size_t i = 0; i < c.size(); ++i) {
                  next[i + 1] += c[i];
                  next[i] -= x * c[i];
                }
                c = std::move(next);
              }
              for (std::size_t i = 0; i < 4; ++i) coeffs[i].push_back(c[i]);
            }
            double worst = 0.0;
            for (std::size_t i = 0; i < 4; ++i) {
              const stats::MeanEstimate e = stats::mean_estimate(coeffs[i]);
              worst = std::max(worst, std::abs(e.mean - exact[i]) / e.std_error);
            }
            return worst;
          });
  return rec.take();
}

/// Finite-difference Jacobian determinants against the closed forms.
inline std::vector<CheckResult> run_jacobians(const Options& opts) {
  detail::Recorder rec(opts);
  rec.run("jacobian_complex_pm_i", "(theta, mu) -> alpha Jacobian at z = +-i, mu = (1/2, 1/2)", 10, 1e-4,
          Sense::at_most, [] {
            const SpectralMeasureCircle m({0.5 * std::numbers::pi, 1.5 * std::numbers::pi}, {0.5, 0.5});
            return jacobian_check(m).relative_error();
          });
  for (std::size_t n : {2, 3}) {
    rec.run("jacobian_complex_n" + std::to_string(n), "(theta, mu) -> alpha Jacobian, unitary case", 10, 1e-4,
            Sense::at_most, [&, n] {
              RngStream rng(opts.seed, 100 + n);
              double worst = 0.0;
              for (int trial = 0; trial < 20; ++trial)
                worst = std::max(worst, jacobian_check(detail::random_circle_measure(n, rng, 0.2, 0.05))
                                            .relative_error());
              return worst;
            });
    rec.run("jacobian_real_n" + std::to_string(n), "(theta, mu) -> alpha Jacobian, orthogonal case", 10, 1e-4,
            Sense::at_most, [&, n] {
              RngStream rng(opts.seed, 200 + n);
              double worst = 0.0;
              for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> th;
                std::vector<double> mu;
                for (;;) {
                  th.assign(n, 0.0);
                  for (auto& t : th) t = 0.1 + (std::numbers::pi - 0.2) * rng.uniform();
                  std::sort(th.begin(), th.end());
                  mu = sample_simplex(static_cast<int>(n), rng);
                  bool ok = *std::min_element(mu.begin(), mu.end()) > 0.05;
                  for (std::size_t j = 0; j + 1 < n; ++j) ok = ok && th[j + 1] - th[j] > 0.1;
                  if (ok) break;
                }
                worst = std::max(worst, jacobian_check_real(th, mu).relative_error());
              }
              return worst;
            });
  }
  return rec.take();
}

/// Matrix-model samplers against exact rejection samplers and Haar matrices.
/// With `fast`, only the n = 2 oracle comparisons run.
inline std::vector<CheckResult> run_ensembles(const Options& opts) {
  detail::Recorder rec(opts);
  const std::size_t draws = 10000;
  const std::vector<std::size_t> circ_ns = opts.fast ? std::vector<std::size_t>{2} : std::vector<std::size_t>{2, 3};
  const std::vector<double> circ_betas{0.5, 1.0, 2.0, 4.0};
  const std::vector<double> jac_betas{1.0, 2.0};
  std::size_t tests = 0;
  for (std::size_t n : circ_ns) tests += n * circ_betas.size();
  tests += 2 * jac_betas.size();
  const double level = 1e-3 / static_cast<double>(tests);

  for (std::size_t n : circ_ns)
    for (double beta : circ_betas) {
      std::ostringstream name;
      name << "ks_circular_n" << n << "_beta" << beta;
      rec.run(name.str(), "CMV model matches |Delta|^beta on the circle (min KS p over sorted gaps)", 11, level,
              Sense::at_least, [&, n, beta] {
                const EnsembleSpec spec{n, beta, 0.0, 0.0, opts.seed + 1000 + n};
                const SampleBatch model = sample_circular(spec, draws, {opts.threads, false, false});
                RngStream rng(opts.seed + 2000 + n, static_cast<std::uint64_t>(beta * 8));
                const SampleBatch oracle = rejection_oracle_circular(n, beta, draws, rng);
                return detail::min_component_p(model, oracle, true);
              });
    }
  for (double beta : jac_betas) {
    std::ostringstream name;
    name << "ks_jacobi_n2_beta" << beta;
    rec.run(name.str(), "tridiagonal model matches the Jacobi ensemble (min KS p over sorted eigenvalues)", 11,
            level, Sense::at_least, [&, beta] {
              const EnsembleSpec spec{2, beta, 0.0, 0.0, opts.seed + 3000};
              const SampleBatch model = sample_jacobi(spec, draws, {opts.threads, false, false});
              RngStream rng(opts.seed + 4000, static_cast<std::uint64_t>(beta * 8));
              const SampleBatch oracle = rejection_oracle_jacobi(2, beta, 0.0, 0.0, draws, rng);
              return detail::min_component_p(model, oracle, false);
            });
  }
  if (opts.fast) return rec.take();

  const std::size_t haar_draws = 5000;
  const double haar_level = 1e-3 / 9.0;
  rec.run("haar_unitary_alphas", "Haar U(4): alpha_j ~ Theta_(2n-2j-1) (min KS p)", 12, haar_level,
          Sense::at_least, [&] {
            const std::size_t n = 4;
            RngStream rng(opts.seed, 12);
            std::vector<std::vector<double>> radial(n - 1);
            std::vector<double> last_phase;
            for (std::size_t t = 0; t < haar_draws; ++t) {
              const VerblunskySeq v = householder_reduce(sample_haar_unitary(n, rng));
              for (std::size_t j = 0; j + 1 < n; ++j) radial[j].push_back(std::norm(v[j]));
              last_phase.push_back(wrap_angle(std::arg(v[n - 1])));
            }
            double p = stats::ks_one_sample(last_phase, stats::uniform_cdf(0.0, 2.0 * std::numbers::pi)).p_value;
            for (std::size_t j = 0; j + 1 < n; ++j) {
              const double nu = 2.0 * static_cast<double>(n - j) - 1.0;
              p = std::min(p, stats::ks_one_sample(radial[j], [nu](double s) { return theta_radial_cdf(nu, s); })
                                  .p_value);
            }
            return p;
          });
  std::vector<double> so_last;
  rec.run("haar_so_alphas", "Haar SO(6): alpha_k ~ B((2n-k-1)/2, (2n-k-1)/2) (min KS p)", 12, haar_level,
          Sense::at_least, [&] {
            const std::size_t n = 3;
            RngStream rng(opts.seed, 1212);
            std::vector<std::vector<double>> cols(2 * n - 1);
            for (std::size_t t = 0; t < haar_draws; ++t) {
              const MatrixR Q = sample_haar_so(2 * n, rng);
              const VerblunskySeq v = householder_reduce(Q.cast<cplx>(), true);
              for (std::size_t k = 0; k + 1 < 2 * n; ++k) cols[k].push_back(v[k].real());
              so_last.push_back(v[2 * n - 1].real());
            }
            double p = 1.0;
            for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
              const double s = 0.5 * (2.0 * static_cast<double>(n) - static_cast<double>(k) - 1.0);
              p = std::min(p, stats::ks_one_sample(cols[k], [s](double x) { return detail::beta_sym_cdf(s, s, x); })
                                  .p_value);
            }
            return p;
          });
  rec.run("haar_so_last_alpha", "Haar SO(6): alpha_(2n-1) = -1 (max deviation)", 12, 1e-9, Sense::at_most, [&] {
    if (so_last.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (double a : so_last) worst = std::max(worst, std::abs(a + 1.0));
    return worst;
  });
  return rec.take();
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "integrals", "jacobians", "ensembles", "all"};
  return names;
}

/// Throws ParameterError for an unknown suite.
inline std::vector<CheckResult> run_suite(const std::string& suite, const Options& opts) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> r) { out.insert(out.end(), r.begin(), r.end()); };
  if (suite == "identities" || suite == "all") append(run_identities(opts));
  if (suite == "integrals" || suite == "all") append(run_integrals(opts));
  if (suite == "jacobians" || suite == "all") append(run_jacobians(opts));
  if (suite == "ensembles" || suite == "all") append(run_ensembles(opts));
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw ParameterError("unknown suite '" + suite + "'");
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& r) {
  return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.passed; });
}

inline io::json report_json(const std::string& suite, const Options& opts, const std::vector<CheckResult>& r) {
  io::json checks = io::json::array();
  for (const auto& c : r) {
    io::json m = std::isfinite(c.measured) ? io::json(c.measured) : io::json(nullptr);
    checks.push_back({{"name", c.name},
                      {"anchor", c.anchor},
                      {"criterion", c.criterion},
                      {"measured", m},
                      {"tolerance", c.tolerance},
                      {"comparison", c.sense == Sense::at_most ? "<=" : ">="},
                      {"passed", c.passed},
                      {"seconds", c.seconds},
                      {"error", c.error}});
  }
  return {{"schema", "cmvbeta.validation"},
          {"version", kReportSchemaVersion},
          {"suite", suite},
          {"fast", opts.fast},
          {"seed", opts.seed},
          {"tolerance_overrides", opts.tolerances},
          {"passed", all_passed(r)},
          {"checks", checks}};
}

}  // namespace cmvbeta::validation
