#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hyperpascal/gamma.hpp"

namespace hyperpascal {

/// A point (x_1, ..., x_dim) of Pascal hyper-space, dim >= 2.
class LatticePoint {
 public:
  explicit LatticePoint(std::vector<double> coords);
  LatticePoint(std::initializer_list<double> coords)
      : LatticePoint(std::vector<double>(coords)) {}

  std::size_t dim() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  double sum() const;
  bool is_integral() const;

  /// This point with coordinate `axis` decreased by one.
  LatticePoint decremented(std::size_t axis) const;

 private:
  std::vector<double> coords_;
};

enum class ValueKind { Finite, ZeroByPoles, Divergent };

struct RegularizedValue {
  ValueKind kind = ValueKind::Finite;
  double value = 0.0;  // meaningful only for Finite

  static RegularizedValue finite(double v) { return {ValueKind::Finite, v}; }
  static RegularizedValue zero_by_poles() { return {ValueKind::ZeroByPoles, 0.0}; }
  static RegularizedValue divergent() { return {ValueKind::Divergent, 0.0}; }
  static RegularizedValue from_limit(const HLimitValue& limit);
  static RegularizedValue from_limit(const LogHLimit& limit);

  bool is_divergent() const { return kind == ValueKind::Divergent; }
  bool is_finite_nonzero() const { return kind == ValueKind::Finite && value != 0.0; }
  /// Finite value with ZeroByPoles read as 0; throws on Divergent.
  double as_real() const;
};

const char* to_string(ValueKind kind);

struct RegionTag {
  enum class Kind { Nonnegative, NegativePyramid, ZeroSet, OffLattice };
  Kind kind = Kind::OffLattice;
  int axis = -1;  // NegativePyramid only

  friend bool operator==(const RegionTag&, const RegionTag&) = default;
};

const char* to_string(RegionTag::Kind kind);

/// One layer of the dim-dimensional Pascal pyramid: every composition of n
/// into dim nonnegative parts with its multinomial coefficient. std::map
/// keeps the compositions in lexicographic order.
struct LayerTable {
  int n = 0;
  int dim = 0;
  std::map<std::vector<int>, double> entries;
};

inline constexpr std::size_t kDefaultLayerCap = 10'000'000;

/// Exact (x_1 + ... + x_k)! / (x_1! ... x_k!) for nonnegative integers.
double exact_multinomial(std::span<const std::int64_t> parts);

/// Regularized lim Gamma(sum + 1 + h) / Prod Gamma(x_i + 1 + h).
RegularizedValue point_value(const LatticePoint& p);

/// Same limit in log-mantissa form, for callers that multiply it further.
LogHLimit point_limit(std::span<const double> coords);

/// (sum x)! / Prod x_i! evaluated directly through Gamma.
/// DomainError when a coordinate is <= -1 or the numerator sits on a pole.
double multinomial_coefficient(const LatticePoint& p);

/// point_value(p) - sum_i point_value(p - e_i). ZeroByPoles counts as 0.
/// DivergentCoefficientError when any participating value diverges.
double recurrence_residual(const LatticePoint& p);

RegionTag classify_region(const LatticePoint& p);

/// ResourceError when the composition count exceeds `cap`.
LayerTable generate_layer(int dim, int n, std::size_t cap = kDefaultLayerCap);

/// Number of compositions of n into dim nonnegative parts.
double composition_count(int dim, int n);

/// Region tag of every integer point of [-window, window]^dim, points in
/// lexicographic order, plus the connected components of the finite
/// nonzero points. Two points are linked when they differ by one unit step
/// p - e_i -> p and the construction law holds at p.
struct RegionMap {
  int dim = 0;
  int window = 0;
  std::vector<std::vector<int>> points;
  std::vector<RegionTag> tags;
  int components = 0;
};

inline constexpr std::size_t kRegionScanCap = 20'000'000;

RegionMap region_map(int dim, int window);
int region_component_count(int dim, int window);

}  // namespace hyperpascal
