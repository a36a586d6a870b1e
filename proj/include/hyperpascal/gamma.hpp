#pragma once

#include <complex>
#include <span>

namespace hyperpascal {

/// Reals closer than this to an integer are treated as that integer when
/// classifying Gamma poles.
inline constexpr double kIntegerTolerance = 1e-9;

bool is_integer(double x);
bool is_nonpositive_integer(double x);

/// log|v| together with the sign of v. sign == 0 marks an exact zero.
struct SignedLogValue {
  double log_magnitude = 0.0;
  int sign = 1;

  static SignedLogValue from_value(double v);
  double value() const;
};

SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b);
SignedLogValue operator/(const SignedLogValue& a, const SignedLogValue& b);

/// Leading Laurent term c * h^(-order) of an expression as h -> 0+.
///
/// order > 0 diverges, order == 0 converges to the mantissa and order < 0
/// vanishes in the limit. Only the leading term is kept; products and
/// quotients of leading terms are leading terms of the product/quotient.
struct HLimitValue {
  double mantissa = 1.0;
  int order = 0;

  /// Canonicalizes an exact zero mantissa to order 0.
  static HLimitValue make(double mantissa, int order);
  static HLimitValue zero() { return {0.0, 0}; }

  bool is_zero() const { return mantissa == 0.0 || order < 0; }
  bool is_divergent() const { return order > 0 && mantissa != 0.0; }
  bool is_finite_nonzero() const { return order == 0 && mantissa != 0.0; }

  /// Value of the limit. Throws DivergentCoefficientError when order > 0.
  double limit() const;
};

HLimitValue operator*(const HLimitValue& a, const HLimitValue& b);
/// Throws DomainError when dividing by a canonical zero.
HLimitValue operator/(const HLimitValue& a, const HLimitValue& b);

/// Same algebra as HLimitValue with the mantissa kept in log form, so that
/// ratios of very large Gamma values never overflow before they cancel.
struct LogHLimit {
  SignedLogValue mantissa{};
  int order = 0;

  HLimitValue to_hlimit() const;
  bool is_zero() const { return mantissa.sign == 0 || order < 0; }
  bool is_divergent() const { return order > 0 && mantissa.sign != 0; }
};

LogHLimit operator*(const LogHLimit& a, const LogHLimit& b);
LogHLimit operator/(const LogHLimit& a, const LogHLimit& b);

/// Gamma(x) for x > 0 via the Lanczos approximation, exact at small
/// positive integers.
double gamma_positive(double x);

/// log|Gamma(x)| and sign(Gamma(x)); DomainError at non-positive integers.
SignedLogValue log_gamma_signed(double x);

/// Leading behavior of Gamma(x + h) as h -> 0+.
/// Away from poles: (Gamma(x), 0). At x = -m: ((-1)^m / m!, 1).
HLimitValue gamma_leading(double x);
LogHLimit gamma_leading_log(double x);

/// Regularized lim Prod Gamma(numerator_i + h) / Prod Gamma(denominator_j + h).
LogHLimit regularized_gamma_ratio(std::span<const double> numerator,
                                  std::span<const double> denominator);

/// Regularized Pochhammer symbol (a)_k = Gamma(a + k) / Gamma(a).
HLimitValue pochhammer(double a, double k);

/// base^exponent on the principal branch, arg(base) in (-pi, pi].
std::complex<double> principal_power(std::complex<double> base, double exponent);

}  // namespace hyperpascal
