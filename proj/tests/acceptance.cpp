// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance        run every criterion
//   acceptance N      run criterion N only
//
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperpascal/bilateral_series.hpp"
#include "hyperpascal/cli.hpp"
#include "hyperpascal/lattice.hpp"
#include "hyperpascal/multinomial.hpp"
#include "oracles.hpp"

using namespace hyperpascal;

namespace {

struct Result {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 = no limit
  std::function<Result()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <typename F>
void for_box(int dim, int lo, int hi, F&& f) {
  std::vector<double> p(static_cast<std::size_t>(dim), lo);
  while (true) {
    f(p);
    int i = dim - 1;
    while (i >= 0 && p[static_cast<std::size_t>(i)] == hi) {
      p[static_cast<std::size_t>(i)] = lo;
      --i;
    }
    if (i < 0) return;
    p[static_cast<std::size_t>(i)] += 1.0;
  }
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

Result recurrence_suite() {
  int checked = 0;
  int offenders = 0;
  double worst = 0.0;
  std::string where;
  for_box(3, -8, 8, [&](const std::vector<double>& c) {
    const LatticePoint p(c);
    const double r = recurrence_residual(p);
    const double bound = 1e-9 * (1.0 + std::abs(point_value(p).as_real()));
    ++checked;
    if (std::abs(r) > bound) {
      ++offenders;
      if (std::abs(r) > worst) {
        worst = std::abs(r);
        std::ostringstream os;
        os << "(" << c[0] << "," << c[1] << "," << c[2] << ") residual " << r;
        where = os.str();
      }
    }
  });
  std::ostringstream os;
  os << checked << " points, " << offenders << " violating";
  if (offenders > 0) os << "; worst " << where;
  return {offenders == 0, os.str()};
}

Result region_counts() {
  const int c2 = region_component_count(2, 10);
  const int c3 = region_component_count(3, 10);
  const int c4 = region_component_count(4, 8);
  std::ostringstream os;
  os << "components dim2/W10=" << c2 << " dim3/W10=" << c3 << " dim4/W8=" << c4
     << " (expected 3, 4, 5)";
  return {c2 == 3 && c3 == 4 && c4 == 5, os.str()};
}

Result oracle_equivalence() {
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<int> dim_dist(2, 4);
  std::uniform_int_distribution<int> whole(-6, 6);
  std::uniform_int_distribution<int> half(0, 1);
  const double h = 1e-6;
  int compared = 0;
  int failures = 0;
  double worst = 0.0;
  while (compared < 1000) {
    std::vector<double> c(static_cast<std::size_t>(dim_dist(rng)));
    for (double& x : c) x = whole(rng) + 0.5 * half(rng);
    const RegularizedValue v = point_value(LatticePoint(c));
    if (v.kind != ValueKind::Finite) continue;
    const double ref = oracle::small_h_point_value(c, h);
    const double err = std::abs(v.value - ref) / std::abs(v.value);
    worst = std::max(worst, err);
    if (!(err <= 1e-4)) ++failures;
    ++compared;
  }
  return {failures == 0,
          std::to_string(compared) + " finite points, max rel err " + fmt("%.3e", worst)};
}

Result eq6_identity() {
  const double a = 2.0 / 3.0;
  const double b = -1.0 / 3.0;
  const double lhs = point_value({a, a, a}).as_real();
  const double rhs = 3.0 * point_value({b, a, a}).as_real();
  const double err = std::abs(lhs - rhs) / std::abs(lhs);
  return {err <= 1e-12, "value " + fmt("%.15f", lhs) + ", rel err " + fmt("%.3e", err)};
}

Result layer_oracle() {
  bool ok = true;
  std::string detail;
  for (int n = 0; n <= 8; ++n) {
    const LayerTable layer = generate_layer(3, n);
    const auto ref = oracle::expand_power(3, n);
    if (layer.entries.size() != ref.size()) ok = false;
    double sum = 0.0;
    for (const auto& [exps, coeff] : ref) {
      const auto it = layer.entries.find(exps);
      if (it == layer.entries.end() || it->second != static_cast<double>(coeff)) ok = false;
    }
    for (const auto& [comp, value] : layer.entries) sum += value;
    if (sum != std::pow(3.0, n)) ok = false;
  }
  detail = ok ? "n = 0..8 exact, sums 3^n" : "mismatch against brute-force expansion";
  return {ok, detail};
}

Result bilateral_binomial() {
  const Complex zs[] = {Complex{1.0, 0.0}, Complex{0.0, 1.0},
                        std::polar(1.0, std::numbers::pi / 3.0)};
  int cases = 0;
  int passed = 0;
  for (int x = 0; x <= 8; ++x) {
    for (int y = 0; y <= x; ++y) {
      for (Complex z : zs) {
        ++cases;
        if (verify_bilateral_binomial(x, y, z, 1e-10).verdict == hyperpascal::Outcome::Pass) {
          ++passed;
        }
      }
    }
  }
  const Complex z = std::polar(1.0, std::numbers::pi / 3.0);
  const BinomialVerification v = verify_bilateral_binomial_detailed(2.5, 0.7, z, 1e-5);
  const bool series_ok =
      v.verification.verdict == hyperpascal::Outcome::Pass && v.series.window <= 20000;
  std::ostringstream os;
  os << passed << "/" << cases << " terminating at 1e-10; x=2.5 y=0.7: "
     << to_string(v.verification.verdict) << " K=" << v.series.window
     << " rel err " << fmt("%.3e", v.verification.rel_error) << " decay "
     << fmt("%.2f", v.series.decay_exponent_estimate);
  return {passed == cases && series_ok, os.str()};
}

Result trinomial_pipeline() {
  const double thetas[] = {std::numbers::pi / 3.0, std::numbers::pi / 5.0};
  const std::vector<Complex> vars = chain_from_phases(thetas);
  const TheoremInstance inst(2.5, vars, {0.5, 0.5});
  const Complex lhs = principal_power(1.0 + vars[0] + vars[1], 2.5);

  const NestedReductionResult nested = nested_reduction(inst, 4096);
  const double nested_err = rel(nested.value, lhs);

  // Matched windows: both routes truncated at the same K.
  const int k = 64;
  const NestedReductionResult nested_k = nested_reduction(inst, k);
  const MultiTruncationReport direct = evaluate_multinomial(inst, k);
  const double direct_err = rel(direct.value, nested_k.value);

  std::ostringstream os;
  os << "nested vs closed form rel err " << fmt("%.3e", nested_err) << " (need 1e-4); "
     << "nested vs direct at K=" << k << " rel err " << fmt("%.3e", direct_err)
     << " (need 1e-2), direct verdict " << to_string(direct.verdict) << " |sum|="
     << fmt("%.3e", std::abs(direct.value));
  return {nested_err <= 1e-4 && direct_err <= 1e-2, os.str()};
}

Result degenerate_exactness() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  std::uniform_int_distribution<int> anchor(-3, 3);
  double worst = 0.0;
  bool all_terminated = true;
  for (int k = 1; k <= 3; ++k) {
    for (int n = 0; n <= 6; ++n) {
      std::vector<Complex> vars;
      std::vector<double> anchors;
      for (int i = 0; i < k; ++i) {
        vars.emplace_back(d(rng), d(rng));
        anchors.push_back(anchor(rng));
      }
      const MultiTruncationReport r = evaluate_multinomial(TheoremInstance(n, vars, anchors), 16);
      all_terminated = all_terminated && r.terminated();
      std::vector<Complex> terms{Complex{1.0, 0.0}};
      terms.insert(terms.end(), vars.begin(), vars.end());
      const Complex ref = oracle::expanded_value(terms, n);
      worst = std::max(worst, std::abs(r.value - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  return {all_terminated && worst <= 1e-12,
          "k = 1..3, n = 0..6, max rel err " + fmt("%.3e", worst) +
              (all_terminated ? ", all terminated" : ", some sums did not terminate")};
}

Result symmetric_equivalence() {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  double worst = 0.0;
  double worst_closed = 0.0;
  for (int size = 2; size <= 4; ++size) {
    for (int n = 0; n <= 6; ++n) {
      std::vector<Complex> vars;
      for (int i = 0; i < size; ++i) vars.emplace_back(d(rng), d(rng));
      const std::vector<double> anchors(static_cast<std::size_t>(size), 0.0);
      const MultiTruncationReport sym = symmetric_form(n, vars, anchors, 16);
      const MultiTruncationReport direct =
          evaluate_multinomial(TheoremInstance(n, symmetric_substitution(vars), anchors), 16);
      Complex total{};
      for (Complex v : vars) total += v;
      const Complex closed = principal_power(total, n);
      const double scale = std::max(1.0, std::abs(closed));
      worst = std::max(worst, std::abs(sym.value - direct.value) / scale);
      worst_closed = std::max(worst_closed, std::abs(sym.value - closed) / scale);
    }
  }
  return {worst <= 1e-10 && worst_closed <= 1e-10,
          "max rel diff " + fmt("%.3e", worst) + ", vs (sum x)^n " + fmt("%.3e", worst_closed)};
}

Result unit_probe() {
  const int schedule[] = {64, 128, 256, 512};
  const double integral[] = {0.0, 0.0};
  bool exact = true;
  for (int n = 0; n <= 6; ++n) {
    const ProbeReport r = unit_sum_probe(n, 2, integral, schedule);
    exact = exact && r.verdict == Verdict::Converged && r.value == Complex{std::pow(3.0, n), 0.0};
  }
  const double halves[] = {0.5, 0.5};
  const ProbeReport r = unit_sum_probe(2.0, 2, halves, schedule);
  std::ostringstream os;
  os << "integer anchors " << (exact ? "exact 3^n" : "NOT exact") << "; anchors (0.5,0.5): "
     << to_string(r.verdict) << ", deltas";
  for (double delta : r.deltas) os << " " << fmt("%.2e", delta);
  return {exact && r.verdict == Verdict::NotConverging, os.str()};
}

Result determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"coeff", "2", "1"},
      {"coeff", "-3", "1"},
      {"coeff", "0.6666666667", "0.6666666667", "0.6666666667"},
      {"layer", "--dim", "3", "--n", "2", "--format", "csv"},
      {"layer", "--dim", "4", "--n", "1"},
      {"layer", "--dim", "3", "--n", "8"},
      {"region-map", "--dim", "2", "--window", "6"},
      {"region-map", "--dim", "3", "--window", "6"},
      {"region-map", "--dim", "4", "--window", "5"},
      {"verify", "binomial", "--x", "3", "--y", "1", "--z", "1+0i", "--tol", "1e-10"},
      {"verify", "trinomial", "--n", "2.5", "--theta1", "1.0472", "--theta2", "0.6283", "--tol",
       "1e-3"},
      {"verify", "binomial", "--x", "-0.5", "--y", "0.25", "--z", "0+1i"},
      {"probe", "--n", "2", "--dim", "2", "--anchors", "0", "0"},
      {"probe", "--n", "2", "--dim", "2", "--anchors", "0.5", "0.5"},
      {"probe", "--n", "2.5", "--dim", "1", "--anchors", "0.5"},
  };
  int identical = 0;
  for (const auto& cmd : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int c1 = cli::run(cmd, out1, err1);
    const int c2 = cli::run(cmd, out2, err2);
    if (c1 == c2 && out1.str() == out2.str() && err1.str() == err2.str() && !out1.str().empty()) {
      ++identical;
    }
  }
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands byte-identical across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "recurrence suite on [-8,8]^3", 10.0, recurrence_suite},
      {2, "region component counts", 30.0, region_counts},
      {3, "small-h oracle equivalence", 5.0, oracle_equivalence},
      {4, "three-dimensional Gamma identity", 0.0, eq6_identity},
      {5, "layer oracle", 0.0, layer_oracle},
      {6, "bilateral binomial theorem", 5.0, bilateral_binomial},
      {7, "trinomial pipeline", 60.0, trinomial_pipeline},
      {8, "degenerate multinomial exactness", 0.0, degenerate_exactness},
      {9, "symmetric form equivalence", 0.0, symmetric_equivalence},
      {10, "unit-sum probe", 30.0, unit_probe},
      {11, "CLI determinism", 0.0, determinism},
  };

  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1..%zu]\n", criteria.size());
      return 2;
    }
  }

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Result o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += "; over time limit " + fmt("%.0f s", c.time_limit_s);
    }
    if (!o.pass) ++failed;
    std::printf("[%s] C%-2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
  }
  return failed == 0 ? 0 : 1;
}
