#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cmvbeta {

/// Reproducible random stream.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit words (seed_lo, seed_hi, stream_lo, stream_hi). Both algorithms are
/// fully specified by the C++ standard, so a (seed, stream_id) pair yields the
/// same bit sequence on every conforming platform. All variate transforms
/// below are written out here rather than taken from <random>, whose
/// distributions are implementation-defined.
///
/// A stream is cheap to construct; batch samplers give every draw its own
/// stream_id so results do not depend on how work is split across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id & 0xffffffffu),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by the Box-Muller transform; the second variate of each
  /// pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  /// Unit-rate exponential.
  double exponential() { return -std::log(uniform()); }

  /// log of a Gamma(shape, 1) variate. Marsaglia-Tsang squeeze for
  /// shape >= 1; for shape < 1 the boost G(a) = G(a+1) * U^(1/a) is applied in
  /// log space so tiny shapes do not underflow to an exact zero.
  double log_gamma(double shape) {
    if (shape < 1.0) return log_gamma(shape + 1.0) + std::log(uniform()) / shape;
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
        return std::log(d * v);
    }
  }

  double gamma(double shape) { return std::exp(log_gamma(shape)); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cmvbeta
