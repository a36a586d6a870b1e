#pragma once

#include <complex>
#include <span>

#include "hyperpascal/gamma.hpp"
#include "hyperpascal/lattice.hpp"

namespace hyperpascal {

using Complex = std::complex<double>;

/// Default relative tolerance used by the truncation verdict rule.
inline constexpr double kDefaultSeriesTolerance = 1e-6;
/// |z| must lie within this distance of 1 for a bilateral series to count.
inline constexpr double kUnitCircleTolerance = 1e-12;

/// Parameters of 1H1(a; b; z) = sum_k (a)_k / (b)_k z^k over all integers k.
struct H1Params {
  double a = 0.0;
  double b = 0.0;
  Complex z{1.0, 0.0};
};

enum class Verdict { Converged, SlowlyConverging, NotConverging };
const char* to_string(Verdict verdict);

/// Partial sum over k in [-window, window] with its tail diagnostics.
/// A window whose outer half holds only exact zeros is a terminated
/// (finite) series; its decay exponent is +infinity.
struct TruncationReport {
  Complex value{};
  int window = 0;
  double last_term_magnitude = 0.0;
  double decay_exponent_estimate = 0.0;
  Verdict verdict = Verdict::NotConverging;

  bool terminated() const;
};

enum class Outcome { Pass, Fail, Inconclusive };
const char* to_string(Outcome outcome);

struct VerificationReport {
  Complex lhs{};
  Complex rhs{};
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  Outcome verdict = Outcome::Inconclusive;
};

/// Shared verdict rule. A terminated series is Converged. Otherwise the sum
/// must be finite and admissible (|z| = 1, or the modulus chain holds);
/// Converged then needs decay > 1 and last < 1e-3 * tolerance * |value|,
/// any other positive decay is SlowlyConverging.
Verdict classify_truncation(Complex value, double decay, double last_term, bool admissible,
                            bool terminated, double tolerance);

/// Fills abs/rel error and Pass/Fail; callers override with Inconclusive.
VerificationReport compare(Complex lhs, Complex rhs, double tolerance);

/// Least-squares slope of log(magnitude) against log(index) over the points
/// with nonzero magnitude, negated. +inf when every magnitude is zero.
double decay_exponent(std::span<const double> indices, std::span<const double> magnitudes);

/// Single term ((a)_k / (b)_k) z^k with regularized Pochhammer symbols.
/// Throws DivergentCoefficientError when the ratio keeps a pole.
Complex h1_term(const H1Params& params, long long k);

/// Symmetric truncation of 1H1 with paired +k/-k compensated accumulation.
/// `prefactor` multiplies every term inside the h-limit algebra, so a
/// vanishing prefactor can cancel a divergent Pochhammer ratio.
TruncationReport evaluate_h1(const H1Params& params, int window,
                             double tolerance = kDefaultSeriesTolerance,
                             const HLimitValue& prefactor = HLimitValue{});

/// b - a: on |z| = 1 the terms decay like |k|^-(b - a).
double convergence_exponent(double a, double b);

/// Regularized binomial coefficient C(n, l) (h -> 0+ limit).
RegularizedValue generalized_binomial(double n, double l);

/// sum over j in y + Z of C(x, j) z^j at a fixed window, i.e.
/// z^y C(x, y) 1H1(y - x; y + 1; -z).
TruncationReport bilateral_binomial_sum(double x, double y, Complex z, int window,
                                        double tolerance = kDefaultSeriesTolerance);

inline constexpr int kBinomialStartWindow = 256;
inline constexpr int kBinomialMaxWindow = 1 << 18;

/// bilateral_binomial_sum with the window doubled from 256 until the verdict
/// settles, capped at 2^20 terms.
TruncationReport bilateral_binomial_rhs(double x, double y, Complex z,
                                        double tolerance = kDefaultSeriesTolerance);

/// Compares principal_power(1 + z, x) with bilateral_binomial_rhs.
VerificationReport verify_bilateral_binomial(double x, double y, Complex z,
                                             double tolerance);

/// Same check together with the series report that produced the rhs.
struct BinomialVerification {
  VerificationReport verification;
  TruncationReport series;
};
BinomialVerification verify_bilateral_binomial_detailed(double x, double y, Complex z,
                                                        double tolerance);

}  // namespace hyperpascal
