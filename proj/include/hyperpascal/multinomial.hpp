#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hyperpascal/bilateral_series.hpp"

namespace hyperpascal {

/// One evaluation of (1 + x_1 + ... + x_k)^n as a k-fold bilateral sum.
/// Index i runs over anchors[i] + Z; anchors are reduced into [0, 1).
struct TheoremInstance {
  double exponent_n = 0.0;
  std::vector<Complex> variables;
  std::vector<double> anchors;

  TheoremInstance() = default;
  TheoremInstance(double n, std::vector<Complex> vars, std::vector<double> anchor_offsets);

  std::size_t dimension() const { return variables.size(); }
};

/// residual_1 = ||x_1| - 1|, residual_i = ||x_i| - |1 + x_1 + ... + x_{i-1}||.
struct ModulusChainReport {
  std::vector<double> residuals;

  double max_residual() const;
  bool satisfied() const { return max_residual() <= kChainTolerance; }

  static constexpr double kChainTolerance = 1e-9;
};

ModulusChainReport modulus_chain_residuals(std::span<const Complex> variables);

/// Variables on the modulus chain built from their phases:
/// x_1 = e^{i theta_1}, x_i = |1 + x_1 + ... + x_{i-1}| e^{i theta_i}.
std::vector<Complex> chain_from_phases(std::span<const double> thetas);

struct MultiTruncationReport {
  Complex value{};
  int window = 0;
  double shell_tail_magnitude = 0.0;
  double decay_exponent_estimate = 0.0;
  Verdict verdict = Verdict::NotConverging;

  bool terminated() const;
};

/// Maximum number of index tuples one evaluation may visit.
inline constexpr double kMultinomialTermCap = 1e8;

/// x_1^l_1 ... x_k^l_k / (l_1! ... l_k! (n + 1)_{-(l_1 + ... + l_k)}),
/// regularized jointly (the coefficient is the lattice value at
/// (l_1, ..., l_k, n - sum l)). Throws DivergentCoefficientError when the
/// coefficient keeps a pole and DomainError for indices off their anchors.
Complex general_term(const TheoremInstance& inst, std::span<const double> indices);

/// Shell sums s_0, ..., s_window: s_r is the compensated sum over the index
/// offsets of max-norm r, visited in lexicographic order.
std::vector<Complex> shell_sums(const TheoremInstance& inst, int window);

MultiTruncationReport evaluate_multinomial(const TheoremInstance& inst, int window,
                                           double tolerance = kDefaultSeriesTolerance);

/// Outcome of the two-stage reduction: inner sums collapse to (1+x_1)^(n-l)
/// and the outer sum over l runs through the bilateral binomial engine.
struct NestedReductionResult {
  Complex value{};
  TruncationReport outer;
  ModulusChainReport chain;
  Verdict verdict = Verdict::NotConverging;
};

NestedReductionResult nested_reduction(const TheoremInstance& inst, int window,
                                       double tolerance = kDefaultSeriesTolerance);

/// u_i = x_i - 1/(k+1) for the k+1 variables x_0..x_k, so 1 + sum u = sum x.
std::vector<Complex> symmetric_substitution(std::span<const Complex> variables);

MultiTruncationReport symmetric_form(double exponent_n, std::span<const Complex> variables,
                                     std::span<const double> anchors, int window,
                                     double tolerance = kDefaultSeriesTolerance);

struct ProbeReport {
  Verdict verdict = Verdict::NotConverging;
  Complex value{};
  std::vector<int> windows;
  std::vector<Complex> partial_sums;
  std::vector<double> deltas;  // |S(K_j) - S(K_{j-1})|
  double decay_exponent_estimate = 0.0;
};

/// Sum over the unit point x_i = 1 along an increasing window schedule.
/// Converged when the sum terminates, or when the successive deltas keep
/// shrinking and the shell decay exponent exceeds 1; otherwise
/// NotConverging (three consecutive non-decreasing deltas fail the Cauchy
/// test outright).
ProbeReport unit_sum_probe(double exponent_n, int dimension, std::span<const double> anchors,
                           std::span<const int> schedule);

}  // namespace hyperpascal
