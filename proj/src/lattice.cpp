#include "hyperpascal/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyperpascal/errors.hpp"

namespace hyperpascal {
namespace {

long double exact_binomial(std::int64_t n, std::int64_t k) {
  k = std::min(k, n - k);
  long double r = 1.0L;
  for (std::int64_t j = 1; j <= k; ++j) {
    r = r * static_cast<long double>(n - k + j) / static_cast<long double>(j);
  }
  return r;
}

// Pole counting on the integer lattice. A numerator pole appears when the
// coordinate sum is <= -1, a denominator pole for every coordinate <= -1.
// On the unique negative axis i of a negative pyramid the residue ratio is
// (-1)^(m - m_i) m_i! / (m! Prod_{j != i} x_j!) with m = -sum - 1 and
// m_i = -x_i - 1, which is the signed multinomial of (m, x_j for j != i).
RegularizedValue integer_point_value(std::span<const std::int64_t> x) {
  const std::int64_t sum = std::accumulate(x.begin(), x.end(), std::int64_t{0});
  const int numerator_poles = sum <= -1 ? 1 : 0;
  int denominator_poles = 0;
  std::size_t negative_axis = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= -1) {
      ++denominator_poles;
      negative_axis = i;
    }
  }
  const int order = numerator_poles - denominator_poles;
  if (order < 0) return RegularizedValue::zero_by_poles();
  if (order > 0) return RegularizedValue::divergent();
  if (numerator_poles == 0) return RegularizedValue::finite(exact_multinomial(x));

  std::vector<std::int64_t> parts;
  parts.reserve(x.size());
  parts.push_back(-sum - 1);
  std::int64_t others = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j == negative_axis) continue;
    parts.push_back(x[j]);
    others += x[j];
  }
  const double sign = (others % 2 == 0) ? 1.0 : -1.0;
  return RegularizedValue::finite(sign * exact_multinomial(parts));
}

std::vector<std::int64_t> rounded(std::span<const double> coords) {
  std::vector<std::int64_t> out(coords.size());
  std::transform(coords.begin(), coords.end(), out.begin(),
                 [](double c) { return static_cast<std::int64_t>(std::round(c)); });
  return out;
}

bool residual_within(double residual, double value) {
  return std::abs(residual) <= 1e-9 * (1.0 + std::abs(value));
}

}  // namespace

LatticePoint::LatticePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DomainError("lattice point needs at least 2 coordinates");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw DomainError("lattice point coordinates must be finite");
  }
}

double LatticePoint::sum() const {
  return std::accumulate(coords_.begin(), coords_.end(), 0.0);
}

bool LatticePoint::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double c) { return is_integer(c); });
}

LatticePoint LatticePoint::decremented(std::size_t axis) const {
  std::vector<double> c = coords_;
  c.at(axis) -= 1.0;
  return LatticePoint(std::move(c));
}

RegularizedValue RegularizedValue::from_limit(const HLimitValue& limit) {
  if (limit.is_zero()) return zero_by_poles();
  if (limit.is_divergent()) return divergent();
  return finite(limit.mantissa);
}

RegularizedValue RegularizedValue::from_limit(const LogHLimit& limit) {
  if (limit.is_zero()) return zero_by_poles();
  if (limit.is_divergent()) return divergent();
  return finite(limit.mantissa.value());
}

double RegularizedValue::as_real() const {
  switch (kind) {
    case ValueKind::Finite:
      return value;
    case ValueKind::ZeroByPoles:
      return 0.0;
    case ValueKind::Divergent:
      break;
  }
  throw DivergentCoefficientError("regularized value diverges");
}

const char* to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::Finite:
      return "Finite";
    case ValueKind::ZeroByPoles:
      return "ZeroByPoles";
    case ValueKind::Divergent:
      return "Divergent";
  }
  return "?";
}

const char* to_string(RegionTag::Kind kind) {
  switch (kind) {
    case RegionTag::Kind::Nonnegative:
      return "Nonnegative";
    case RegionTag::Kind::NegativePyramid:
      return "NegativePyramid";
    case RegionTag::Kind::ZeroSet:
      return "ZeroSet";
    case RegionTag::Kind::OffLattice:
      return "OffLattice";
  }
  return "?";
}

double exact_multinomial(std::span<const std::int64_t> parts) {
  long double result = 1.0L;
  std::int64_t running = 0;
  for (std::int64_t part : parts) {
    if (part < 0) throw DomainError("exact_multinomial: negative part");
    running += part;
    result *= exact_binomial(running, part);
  }
  return static_cast<double>(result);
}

LogHLimit point_limit(std::span<const double> coords) {
  const double sum = std::accumulate(coords.begin(), coords.end(), 0.0);
  const double numerator[] = {sum + 1.0};
  std::vector<double> denominator(coords.size());
  std::transform(coords.begin(), coords.end(), denominator.begin(),
                 [](double c) { return c + 1.0; });
  return regularized_gamma_ratio(numerator, denominator);
}

RegularizedValue point_value(const LatticePoint& p) {
  if (p.is_integral()) return integer_point_value(rounded(p.coords()));
  return RegularizedValue::from_limit(point_limit(p.coords()));
}

double multinomial_coefficient(const LatticePoint& p) {
  for (double c : p.coords()) {
    if (c <= -1.0 || (is_integer(c) && std::round(c) <= -1.0)) {
      throw DomainError("multinomial_coefficient: coordinate <= -1, use point_value");
    }
  }
  const auto coords = p.coords();
  if (p.is_integral()) return exact_multinomial(rounded(coords));

  const double top = p.sum() + 1.0;
  if (is_nonpositive_integer(top)) {
    throw DomainError("multinomial_coefficient: numerator pole, use point_value");
  }
  SignedLogValue acc = log_gamma_signed(top);
  for (double c : coords) acc = acc / log_gamma_signed(c + 1.0);
  return acc.value();
}

double recurrence_residual(const LatticePoint& p) {
  const RegularizedValue centre = point_value(p);
  if (centre.is_divergent()) {
    throw DivergentCoefficientError("recurrence_residual: divergent value at p");
  }
  double parents = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const RegularizedValue v = point_value(p.decremented(i));
    if (v.is_divergent()) {
      throw DivergentCoefficientError("recurrence_residual: divergent parent value");
    }
    parents += v.as_real();
  }
  return centre.as_real() - parents;
}

RegionTag classify_region(const LatticePoint& p) {
  if (!p.is_integral()) return {RegionTag::Kind::OffLattice, -1};
  const auto x = rounded(p.coords());
  const RegularizedValue v = integer_point_value(x);
  if (v.kind == ValueKind::ZeroByPoles) return {RegionTag::Kind::ZeroSet, -1};
  if (std::all_of(x.begin(), x.end(), [](std::int64_t c) { return c >= 0; })) {
    return {RegionTag::Kind::Nonnegative, -1};
  }
  const auto it = std::find_if(x.begin(), x.end(), [](std::int64_t c) { return c <= -1; });
  return {RegionTag::Kind::NegativePyramid, static_cast<int>(it - x.begin())};
}

double composition_count(int dim, int n) {
  return static_cast<double>(exact_binomial(n + dim - 1, dim - 1));
}

LayerTable generate_layer(int dim, int n, std::size_t cap) {
  if (dim < 2) throw DomainError("generate_layer: dim must be >= 2");
  if (n < 0) throw DomainError("generate_layer: n must be >= 0");
  if (composition_count(dim, n) > static_cast<double>(cap)) {
    throw ResourceError("generate_layer: " + std::to_string(composition_count(dim, n)) +
                        " compositions exceed cap " + std::to_string(cap));
  }
  LayerTable table{n, dim, {}};
  std::vector<std::int64_t> parts(static_cast<std::size_t>(dim), 0);
  std::vector<int> key(static_cast<std::size_t>(dim), 0);

  // Depth-first over parts[0], parts[1], ... in increasing order yields
  // lexicographic compositions; the last part takes whatever remains.
  auto fill = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == parts.size()) {
      parts[pos] = remaining;
      key[pos] = remaining;
      table.entries.emplace_hint(table.entries.end(), key, exact_multinomial(parts));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      parts[pos] = c;
      key[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  fill(fill, 0, n);
  return table;
}

RegionMap region_map(int dim, int window) {
  if (dim < 2 || dim > 5) throw DomainError("region_map: dim must be in [2, 5]");
  if (window < 2) throw DomainError("region_map: window must be >= 2");

  // Values live on the box [-window - 1, window]^dim so that every parent
  // p - e_i of a window point is available for the construction-law test.
  const std::int64_t side = 2 * static_cast<std::int64_t>(window) + 2;
  const std::int64_t offset = window + 1;
  double total = std::pow(static_cast<double>(side), dim);
  if (total > static_cast<double>(kRegionScanCap)) {
    throw ResourceError("region_map: scan of " + std::to_string(total) +
                        " points exceeds cap");
  }
  const auto n_points = static_cast<std::size_t>(total);
  std::vector<std::int64_t> stride(static_cast<std::size_t>(dim));
  stride.back() = 1;
  for (int i = dim - 2; i >= 0; --i) stride[i] = stride[i + 1] * side;

  std::vector<double> values(n_points);
  std::vector<std::int64_t> coord(static_cast<std::size_t>(dim), -offset);
  for (std::size_t idx = 0; idx < n_points; ++idx) {
    values[idx] = integer_point_value(coord).as_real();
    for (int i = dim - 1; i >= 0; --i) {
      if (++coord[i] < side - offset) break;
      coord[i] = -offset;
    }
  }

  auto index_of = [&](std::span<const std::int64_t> c) {
    std::int64_t idx = 0;
    for (int i = 0; i < dim; ++i) idx += (c[i] + offset) * stride[i];
    return static_cast<std::size_t>(idx);
  };

  std::vector<std::size_t> parent(n_points);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };

  RegionMap map;
  map.dim = dim;
  map.window = window;
  std::vector<std::size_t> nonzero_indices;
  std::fill(coord.begin(), coord.end(), -window);
  bool done = false;
  while (!done) {
    map.points.emplace_back(coord.begin(), coord.end());
    map.tags.push_back(classify_region(LatticePoint(std::vector<double>(coord.begin(), coord.end()))));

    const std::size_t idx = index_of(coord);
    if (values[idx] != 0.0) {
      nonzero_indices.push_back(idx);
      double parents = 0.0;
      for (int i = 0; i < dim; ++i) parents += values[idx - stride[i]];
      if (residual_within(values[idx] - parents, values[idx])) {
        for (int i = 0; i < dim; ++i) {
          if (coord[i] == -window) continue;
          const std::size_t q = idx - stride[i];
          if (values[q] != 0.0) parent[find(idx)] = find(q);
        }
      }
    }
    done = true;
    for (int i = dim - 1; i >= 0; --i) {
      if (++coord[i] <= window) {
        done = false;
        break;
      }
      coord[i] = -window;
    }
  }

  std::vector<std::size_t> roots;
  roots.reserve(nonzero_indices.size());
  for (std::size_t idx : nonzero_indices) roots.push_back(find(idx));
  std::sort(roots.begin(), roots.end());
  map.components = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
  return map;
}

int region_component_count(int dim, int window) {
  return region_map(dim, window).components;
}

}  // namespace hyperpascal
