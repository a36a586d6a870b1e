#include "hyperpascal/multinomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hyperpascal/compensated_sum.hpp"
#include "hyperpascal/errors.hpp"

namespace hyperpascal {
namespace {

double reduce_anchor(double a) {
  if (!std::isfinite(a)) throw DomainError("anchor must be finite");
  double r = a - std::floor(a);
  if (r >= 1.0 - kIntegerTolerance) r = 0.0;
  if (r < kIntegerTolerance) r = 0.0;
  return r;
}

void check_cap(std::size_t dimension, int window) {
  const double terms = std::pow(2.0 * window + 1.0, static_cast<double>(dimension));
  if (terms > kMultinomialTermCap) {
    throw ResourceError("bilateral sum of " + std::to_string(terms) +
                        " terms exceeds the cap of 1e8");
  }
}

// Visits every offset tuple in [-r, r]^k with max-norm exactly r, in
// lexicographic order. The last coordinate is restricted to {-r, r} unless
// an earlier coordinate already sits on the boundary.
template <typename Visit>
void for_each_shell_offset(std::size_t k, int r, Visit&& visit) {
  std::vector<int> offset(k, 0);
  auto rec = [&](auto&& self, std::size_t pos, bool on_boundary) -> void {
    if (pos + 1 == k) {
      if (on_boundary) {
        for (int v = -r; v <= r; ++v) {
          offset[pos] = v;
          visit(offset);
        }
      } else {
        offset[pos] = -r;
        visit(offset);
        if (r != 0) {
          offset[pos] = r;
          visit(offset);
        }
      }
      return;
    }
    for (int v = -r; v <= r; ++v) {
      offset[pos] = v;
      self(self, pos + 1, on_boundary || v == r || v == -r);
    }
  };
  rec(rec, 0, false);
}

Complex power_factor(Complex x, double exponent) {
  if (exponent == 0.0) return {1.0, 0.0};
  return principal_power(x, exponent);
}

}  // namespace

TheoremInstance::TheoremInstance(double n, std::vector<Complex> vars,
                                 std::vector<double> anchor_offsets)
    : exponent_n(n), variables(std::move(vars)), anchors(std::move(anchor_offsets)) {
  if (!std::isfinite(exponent_n)) throw DomainError("exponent must be finite");
  if (variables.empty()) throw DomainError("theorem instance needs at least one variable");
  if (anchors.size() != variables.size()) {
    throw DomainError("anchors and variables must have equal length");
  }
  for (double& a : anchors) a = reduce_anchor(a);
}

double ModulusChainReport::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

ModulusChainReport modulus_chain_residuals(std::span<const Complex> variables) {
  ModulusChainReport report;
  Complex partial{1.0, 0.0};
  for (const Complex& x : variables) {
    report.residuals.push_back(std::abs(std::abs(x) - std::abs(partial)));
    partial += x;
  }
  return report;
}

std::vector<Complex> chain_from_phases(std::span<const double> thetas) {
  std::vector<Complex> vars;
  Complex partial{1.0, 0.0};
  for (double theta : thetas) {
    vars.push_back(std::polar(std::abs(partial), theta));
    partial += vars.back();
  }
  return vars;
}

bool MultiTruncationReport::terminated() const {
  return decay_exponent_estimate == std::numeric_limits<double>::infinity();
}

Complex general_term(const TheoremInstance& inst, std::span<const double> indices) {
  const std::size_t k = inst.dimension();
  if (indices.size() != k) throw DomainError("general_term: wrong number of indices");

  std::vector<double> coords(k + 1);
  double index_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!is_integer(indices[i] - inst.anchors[i])) {
      throw DomainError("general_term: index " + std::to_string(indices[i]) +
                        " is not in its anchor class");
    }
    coords[i] = indices[i];
    index_sum += indices[i];
  }
  coords[k] = inst.exponent_n - index_sum;

  const LatticePoint point(coords);
  const RegularizedValue coefficient = point_value(point);
  if (coefficient.is_divergent()) {
    throw DivergentCoefficientError("general_term: coefficient diverges");
  }
  if (coefficient.as_real() == 0.0) return {};

  Complex product{coefficient.value, 0.0};
  for (std::size_t i = 0; i < k; ++i) {
    product *= power_factor(inst.variables[i], indices[i]);
  }
  return product;
}

std::vector<Complex> shell_sums(const TheoremInstance& inst, int window) {
  if (window < 0) throw DomainError("shell_sums: window must be >= 0");
  const std::size_t k = inst.dimension();
  check_cap(k, window);

  std::vector<Complex> shells;
  shells.reserve(static_cast<std::size_t>(window) + 1);
  std::vector<double> indices(k);
  for (int r = 0; r <= window; ++r) {
    CompensatedSum<Complex> shell;
    for_each_shell_offset(k, r, [&](const std::vector<int>& offset) {
      for (std::size_t i = 0; i < k; ++i) indices[i] = inst.anchors[i] + offset[i];
      shell.add(general_term(inst, indices));
    });
    shells.push_back(shell.value());
  }
  return shells;
}

namespace {

double shell_decay(std::span<const Complex> shells) {
  const auto window = static_cast<int>(shells.size()) - 1;
  std::vector<double> radii;
  std::vector<double> magnitudes;
  for (int r = std::max(1, (window + 1) / 2); r <= window; ++r) {
    radii.push_back(r);
    magnitudes.push_back(std::abs(shells[static_cast<std::size_t>(r)]));
  }
  return decay_exponent(radii, magnitudes);
}

}  // namespace

MultiTruncationReport evaluate_multinomial(const TheoremInstance& inst, int window,
                                           double tolerance) {
  if (window < 4) throw DomainError("evaluate_multinomial: window must be >= 4");
  const std::vector<Complex> shells = shell_sums(inst, window);

  CompensatedSum<Complex> total;
  for (const Complex& s : shells) total.add(s);

  MultiTruncationReport report;
  report.value = total.value();
  report.window = window;
  report.shell_tail_magnitude = std::abs(shells.back());
  report.decay_exponent_estimate = shell_decay(shells);
  const bool admissible = modulus_chain_residuals(inst.variables).satisfied();
  report.verdict = classify_truncation(report.value, report.decay_exponent_estimate,
                                       report.shell_tail_magnitude, admissible,
                                       report.terminated(), tolerance);
  return report;
}

NestedReductionResult nested_reduction(const TheoremInstance& inst, int window,
                                       double tolerance) {
  if (inst.dimension() != 2) throw DomainError("nested_reduction needs exactly two variables");
  const Complex x1 = inst.variables[0];
  const Complex x2 = inst.variables[1];
  const Complex base = 1.0 + x1;
  if (base == Complex{}) throw DomainError("nested_reduction: 1 + x1 must be nonzero");

  NestedReductionResult result;
  result.chain = modulus_chain_residuals(inst.variables);
  // sum_l C(n, l) (1 + x1)^(n - l) x2^l = (1 + x1)^n sum_l C(n, l) (x2 / (1 + x1))^l
  result.outer = bilateral_binomial_sum(inst.exponent_n, inst.anchors[1], x2 / base, window,
                                        tolerance);
  result.value = principal_power(base, inst.exponent_n) * result.outer.value;
  result.verdict = result.chain.satisfied() ? result.outer.verdict : Verdict::NotConverging;
  return result;
}

std::vector<Complex> symmetric_substitution(std::span<const Complex> variables) {
  const double shift = 1.0 / static_cast<double>(variables.size());
  std::vector<Complex> u(variables.begin(), variables.end());
  for (Complex& v : u) v -= shift;
  return u;
}

MultiTruncationReport symmetric_form(double exponent_n, std::span<const Complex> variables,
                                     std::span<const double> anchors, int window,
                                     double tolerance) {
  if (variables.empty()) throw DomainError("symmetric_form needs at least one variable");
  const TheoremInstance inst(exponent_n, symmetric_substitution(variables),
                             std::vector<double>(anchors.begin(), anchors.end()));
  return evaluate_multinomial(inst, window, tolerance);
}

ProbeReport unit_sum_probe(double exponent_n, int dimension, std::span<const double> anchors,
                           std::span<const int> schedule) {
  if (dimension < 1) throw DomainError("unit_sum_probe: dimension must be >= 1");
  if (anchors.size() != static_cast<std::size_t>(dimension)) {
    throw DomainError("unit_sum_probe: need one anchor per dimension");
  }
  if (schedule.empty()) throw DomainError("unit_sum_probe: empty window schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 4 || (i > 0 && schedule[i] <= schedule[i - 1])) {
      throw DomainError("unit_sum_probe: schedule must be increasing windows >= 4");
    }
  }

  const TheoremInstance inst(
      exponent_n, std::vector<Complex>(static_cast<std::size_t>(dimension), Complex{1.0, 0.0}),
      std::vector<double>(anchors.begin(), anchors.end()));
  const std::vector<Complex> shells = shell_sums(inst, schedule.back());

  ProbeReport report;
  CompensatedSum<Complex> running;
  std::size_t next = 0;
  for (int r = 0; r <= schedule.back(); ++r) {
    running.add(shells[static_cast<std::size_t>(r)]);
    if (r == schedule[next]) {
      report.windows.push_back(r);
      report.partial_sums.push_back(running.value());
      ++next;
    }
  }
  for (std::size_t j = 1; j < report.partial_sums.size(); ++j) {
    report.deltas.push_back(std::abs(report.partial_sums[j] - report.partial_sums[j - 1]));
  }
  report.value = report.partial_sums.back();
  report.decay_exponent_estimate = shell_decay(shells);

  if (report.decay_exponent_estimate == std::numeric_limits<double>::infinity()) {
    report.verdict = Verdict::Converged;
    return report;
  }
  bool cauchy_failed = false;
  for (std::size_t j = 0; j + 2 < report.deltas.size(); ++j) {
    const auto& d = report.deltas;
    if (d[j] <= d[j + 1] && d[j + 1] <= d[j + 2]) cauchy_failed = true;
  }
  const bool finite = std::isfinite(report.value.real()) && std::isfinite(report.value.imag());
  report.verdict = (!cauchy_failed && finite && report.decay_exponent_estimate > 1.0)
                       ? Verdict::Converged
                       : Verdict::NotConverging;
  return report;
}

}  // namespace hyperpascal
