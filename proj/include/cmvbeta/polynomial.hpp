#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cmvbeta/errors.hpp"

namespace cmvbeta {

/// Monic polynomial stored by ascending coefficients c_0..c_k with c_k == 1.
template <typename T>
class BasicMonicPolynomial {
 public:
  BasicMonicPolynomial() : coeffs_{T(1)} {}

  explicit BasicMonicPolynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    detail::require(!coeffs_.empty() && coeffs_.back() == T(1),
                    "monic polynomial needs leading coefficient exactly 1");
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }

  template <typename U>
  auto operator()(const U& z) const {
    using R = decltype(T() * U());
    R acc = R(coeffs_.back());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * z + R(coeffs_[i]);
    return acc;
  }

 private:
  std::vector<T> coeffs_;
};

using MonicPolynomial = BasicMonicPolynomial<std::complex<double>>;
using RealMonicPolynomial = BasicMonicPolynomial<double>;

}  // namespace cmvbeta
