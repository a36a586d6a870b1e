#pragma once

#include <cmath>
#include <complex>

namespace hyperpascal {

/// Neumaier's variant of Kahan summation: the running compensation also
/// captures the low-order bits lost when the addend exceeds the sum.
template <typename Real>
class CompensatedSum {
 public:
  void add(Real value) {
    const Real t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(Real value) {
    add(value);
    return *this;
  }

  Real value() const { return sum_ + compensation_; }

 private:
  Real sum_{0};
  Real compensation_{0};
};

/// Componentwise compensated sum of complex values.
template <typename Real>
class CompensatedSum<std::complex<Real>> {
 public:
  void add(std::complex<Real> value) {
    re_.add(value.real());
    im_.add(value.imag());
  }

  CompensatedSum& operator+=(std::complex<Real> value) {
    add(value);
    return *this;
  }

  std::complex<Real> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<Real> re_;
  CompensatedSum<Real> im_;
};

}  // namespace hyperpascal
