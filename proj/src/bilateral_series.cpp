#include "hyperpascal/bilateral_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hyperpascal/compensated_sum.hpp"
#include "hyperpascal/errors.hpp"

namespace hyperpascal {
namespace {

constexpr long long kProductPathLimit = 512;

// Running term c * h^(-order) of the 1H1 recurrence. A factor (p + j) whose
// parameter p is an integer and which vanishes at h = 0 contributes one
// power of h instead of a zero.
struct RunningTerm {
  Complex mantissa{1.0, 0.0};
  int order = 0;

  void multiply_factor(double parameter, bool integral, long long rounded, long long j) {
    if (integral && rounded + j == 0) {
      --order;
    } else {
      mantissa *= parameter + static_cast<double>(j);
    }
  }

  void divide_factor(double parameter, bool integral, long long rounded, long long j) {
    if (integral && rounded + j == 0) {
      ++order;
    } else {
      mantissa /= parameter + static_cast<double>(j);
    }
  }

  Complex value(long long k) const {
    if (order > 0 && mantissa != Complex{}) {
      throw DivergentCoefficientError("1H1 coefficient diverges at k = " + std::to_string(k));
    }
    if (order < 0) return {};
    return mantissa;
  }
};

struct Parameter {
  double value;
  bool integral;
  long long rounded;

  explicit Parameter(double v)
      : value(v),
        integral(is_integer(v)),
        rounded(integral ? static_cast<long long>(std::round(v)) : 0) {}
};

HLimitValue h1_ratio(double a, double b, long long k) {
  if (std::llabs(k) <= kProductPathLimit) {
    const Parameter pa(a);
    const Parameter pb(b);
    RunningTerm t;
    if (k > 0) {
      for (long long j = 0; j < k; ++j) {
        t.multiply_factor(pa.value, pa.integral, pa.rounded, j);
        t.divide_factor(pb.value, pb.integral, pb.rounded, j);
      }
    } else {
      for (long long j = 1; j <= -k; ++j) {
        t.multiply_factor(pb.value, pb.integral, pb.rounded, -j);
        t.divide_factor(pa.value, pa.integral, pa.rounded, -j);
      }
    }
    return HLimitValue::make(t.mantissa.real(), t.order);
  }
  const auto kk = static_cast<double>(k);
  return (gamma_leading_log(a + kk) * gamma_leading_log(b) /
          (gamma_leading_log(a) * gamma_leading_log(b + kk)))
      .to_hlimit();
}

}  // namespace

Verdict classify_truncation(Complex value, double decay, double last_term, bool on_circle,
                            bool terminated, double tolerance) {
  if (terminated) return Verdict::Converged;
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    return Verdict::NotConverging;
  }
  if (!on_circle) return Verdict::NotConverging;
  if (decay > 1.0 && last_term < 1e-3 * tolerance * std::abs(value)) {
    return Verdict::Converged;
  }
  if (decay > 0.0) return Verdict::SlowlyConverging;
  return Verdict::NotConverging;
}

namespace {

bool on_unit_circle(Complex z) {
  return std::abs(std::abs(z) - 1.0) <= kUnitCircleTolerance;
}

// Symmetric partial sum over [-window, window]. `pair_at(k)` is called for
// k = 1, 2, ..., window in order and returns (term(k), term(-k)); each pair
// is combined before it enters the compensated accumulator.
template <typename PairFn>
TruncationReport sum_paired(Complex centre, PairFn&& pair_at, int window, double tolerance,
                            bool on_circle) {
  if (!(tolerance > 0.0)) throw DomainError("series tolerance must be > 0");
  CompensatedSum<Complex> sum;
  sum.add(centre);

  const int outer_start = (window + 1) / 2;
  std::vector<double> indices;
  std::vector<double> magnitudes;
  indices.reserve(static_cast<std::size_t>(window - outer_start + 1));
  magnitudes.reserve(indices.capacity());

  double last = 0.0;
  for (long long k = 1; k <= window; ++k) {
    const auto [plus, minus] = pair_at(k);
    sum.add(plus + minus);
    last = std::max(std::abs(plus), std::abs(minus));
    if (k >= outer_start) {
      indices.push_back(static_cast<double>(k));
      magnitudes.push_back(last);
    }
  }

  TruncationReport report;
  report.value = sum.value();
  report.window = window;
  report.last_term_magnitude = last;
  report.decay_exponent_estimate = decay_exponent(indices, magnitudes);
  report.verdict = classify_truncation(report.value, report.decay_exponent_estimate, last,
                                      on_circle, report.terminated(), tolerance);
  return report;
}

HLimitValue binomial_prefactor(double x, double y) {
  const LatticePoint p{y, x - y};
  const RegularizedValue v = point_value(p);
  if (v.kind == ValueKind::Finite) return HLimitValue::make(v.value, 0);
  return point_limit(p.coords()).to_hlimit();
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Converged:
      return "Converged";
    case Verdict::SlowlyConverging:
      return "SlowlyConverging";
    case Verdict::NotConverging:
      return "NotConverging";
  }
  return "?";
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Pass:
      return "Pass";
    case Outcome::Fail:
      return "Fail";
    case Outcome::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

bool TruncationReport::terminated() const {
  return decay_exponent_estimate == std::numeric_limits<double>::infinity();
}

VerificationReport compare(Complex lhs, Complex rhs, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  VerificationReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.abs_error = std::abs(lhs - rhs);
  r.rel_error = r.abs_error / std::max(std::abs(lhs), 1e-300);
  r.verdict = r.rel_error <= tolerance ? Outcome::Pass : Outcome::Fail;
  return r;
}

double decay_exponent(std::span<const double> indices, std::span<const double> magnitudes) {
  std::vector<double> lx;
  std::vector<double> ly;
  bool all_zero = true;
  for (std::size_t i = 0; i < indices.size() && i < magnitudes.size(); ++i) {
    if (magnitudes[i] != 0.0) all_zero = false;
    if (magnitudes[i] > 0.0 && std::isfinite(magnitudes[i]) && indices[i] > 0.0) {
      lx.push_back(std::log(indices[i]));
      ly.push_back(std::log(magnitudes[i]));
    }
  }
  if (all_zero) return std::numeric_limits<double>::infinity();
  if (lx.size() < 2) return 0.0;
  const auto n = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return 0.0;
  return -sxy / sxx;
}

Complex h1_term(const H1Params& params, long long k) {
  const HLimitValue ratio = h1_ratio(params.a, params.b, k);
  if (ratio.is_divergent()) {
    throw DivergentCoefficientError("1H1 coefficient diverges at k = " + std::to_string(k));
  }
  if (ratio.is_zero()) return {};
  return ratio.mantissa * principal_power(params.z, static_cast<double>(k));
}

TruncationReport evaluate_h1(const H1Params& params, int window, double tolerance,
                             const HLimitValue& prefactor) {
  if (window < 8) throw DomainError("evaluate_h1: window must be >= 8");
  if (params.z == Complex{}) throw DomainError("evaluate_h1: z = 0 has no negative powers");

  const Parameter a(params.a);
  const Parameter b(params.b);
  const Complex z = params.z;

  RunningTerm up;
  up.mantissa = prefactor.mantissa;
  up.order = prefactor.mantissa == 0.0 ? 0 : prefactor.order;
  RunningTerm down = up;

  // term(k + 1) = term(k) (a + k) / (b + k) z
  // term(-k - 1) = term(-k) (b - k - 1) / (a - k - 1) / z
  auto next_pair = [&](long long k) {
    up.multiply_factor(a.value, a.integral, a.rounded, k - 1);
    up.divide_factor(b.value, b.integral, b.rounded, k - 1);
    up.mantissa *= z;
    down.multiply_factor(b.value, b.integral, b.rounded, -k);
    down.divide_factor(a.value, a.integral, a.rounded, -k);
    down.mantissa /= z;
    return std::pair{up.value(k), down.value(-k)};
  };
  return sum_paired(up.value(0), next_pair, window, tolerance, on_unit_circle(z));
}

double convergence_exponent(double a, double b) { return b - a; }

RegularizedValue generalized_binomial(double n, double l) {
  return point_value(LatticePoint{l, n - l});
}

TruncationReport bilateral_binomial_sum(double x, double y, Complex z, int window,
                                        double tolerance) {
  if (z == Complex{}) throw DomainError("bilateral binomial: z must be nonzero");
  const HLimitValue prefactor = binomial_prefactor(x, y);
  if (!prefactor.is_finite_nonzero()) {
    // C(x, y) itself sits on a pole; a vanishing prefactor times a divergent
    // 1H1 coefficient has no sign-consistent joint limit (the reflection that
    // links the two forms flips the sign of h), so sum C(x, j) z^j directly.
    if (window < 8) throw DomainError("bilateral binomial: window must be >= 8");
    auto term = [&](double j) -> Complex {
      const RegularizedValue c = generalized_binomial(x, j);
      if (c.is_divergent()) {
        throw DivergentCoefficientError("bilateral binomial: divergent C(x, j)");
      }
      if (c.as_real() == 0.0) return {};
      return c.value * principal_power(z, j);
    };
    auto pair_at = [&](long long k) {
      const auto kk = static_cast<double>(k);
      return std::pair{term(y + kk), term(y - kk)};
    };
    return sum_paired(term(y), pair_at, window, tolerance, on_unit_circle(z));
  }
  const H1Params params{y - x, y + 1.0, -z};
  TruncationReport report = evaluate_h1(params, window, tolerance, prefactor);
  const Complex anchor_power = principal_power(z, y);
  report.value *= anchor_power;
  report.last_term_magnitude *= std::abs(anchor_power);
  return report;
}

TruncationReport bilateral_binomial_rhs(double x, double y, Complex z, double tolerance) {
  int window = kBinomialStartWindow;
  TruncationReport previous = bilateral_binomial_sum(x, y, z, window, tolerance);
  if (previous.terminated()) return previous;
  while (window < kBinomialMaxWindow) {
    window *= 2;
    TruncationReport current = bilateral_binomial_sum(x, y, z, window, tolerance);
    const bool settled =
        current.verdict == previous.verdict &&
        (current.verdict != Verdict::Converged ||
         std::abs(current.value - previous.value) <= tolerance * std::abs(current.value));
    previous = current;
    if (settled) break;
  }
  return previous;
}

BinomialVerification verify_bilateral_binomial_detailed(double x, double y, Complex z,
                                                        double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("verify_bilateral_binomial: tolerance must be > 0");
  const Complex lhs = principal_power(1.0 + z, x);
  BinomialVerification out;
  out.series = bilateral_binomial_rhs(x, y, z, tolerance);
  out.verification = compare(lhs, out.series.value, tolerance);
  if (out.series.terminated()) return out;
  if (!on_unit_circle(z) || out.series.verdict == Verdict::NotConverging ||
      convergence_exponent(y - x, y + 1.0) <= 1.0) {
    out.verification.verdict = Outcome::Inconclusive;
  }
  return out;
}

VerificationReport verify_bilateral_binomial(double x, double y, Complex z, double tolerance) {
  return verify_bilateral_binomial_detailed(x, y, z, tolerance).verification;
}

}  // namespace hyperpascal
