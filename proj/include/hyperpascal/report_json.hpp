#pragma once

#include <string>

#include <json.hpp>

#include "hyperpascal/bilateral_series.hpp"
#include "hyperpascal/lattice.hpp"
#include "hyperpascal/multinomial.hpp"

namespace hyperpascal {

using Json = nlohmann::ordered_json;

/// Floats are printed with 17 significant digits ("%.17g"); non-finite
/// floats become null. Key order is insertion order.
std::string dump_json(const Json& value, int indent = 2);

/// Real number as text with 17 significant digits.
std::string format_real(double value);

Json to_json(Complex z);
Json to_json(const RegularizedValue& v);
Json to_json(const RegionTag& tag);
Json to_json(const LayerTable& table);
Json to_json(const TruncationReport& report);
Json to_json(const VerificationReport& report);
Json to_json(const ModulusChainReport& report);
Json to_json(const MultiTruncationReport& report);
Json to_json(const NestedReductionResult& result);
Json to_json(const ProbeReport& report);

/// Region map with per-tag counts; `include_points` adds every point.
Json to_json(const RegionMap& map, bool include_points);

/// CSV with header c1..c_dim,value; rows in lexicographic order.
std::string layer_csv(const LayerTable& table);
/// CSV with header c1..c_dim,tag,axis.
std::string region_csv(const RegionMap& map);

}  // namespace hyperpascal
