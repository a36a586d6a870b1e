#include "hyperpascal/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace hyperpascal {
namespace {

void write_string(std::string& out, const std::string& s) {
  // Reuse nlohmann's escaping for strings.
  out += Json(s).dump();
}

void write(std::string& out, const Json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, it.key());
        out += indent < 0 ? ":" : ": ";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(out, item, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_real(d) : "null";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

Json real_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string dump_json(const Json& value, int indent) {
  std::string out;
  write(out, value, indent, 0);
  return out;
}

Json to_json(Complex z) { return Json{{"re", real_or_null(z.real())}, {"im", real_or_null(z.imag())}}; }

Json to_json(const RegularizedValue& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["value"] = v.kind == ValueKind::Finite ? real_or_null(v.value) : Json(nullptr);
  return j;
}

Json to_json(const RegionTag& tag) {
  Json j;
  j["tag"] = to_string(tag.kind);
  j["axis"] = tag.kind == RegionTag::Kind::NegativePyramid ? Json(tag.axis) : Json(nullptr);
  return j;
}

Json to_json(const LayerTable& table) {
  Json entries = Json::array();
  for (const auto& [composition, value] : table.entries) {
    entries.push_back(Json{{"composition", composition}, {"value", real_or_null(value)}});
  }
  return entries;
}

Json to_json(const TruncationReport& report) {
  Json j;
  j["value"] = to_json(report.value);
  j["window"] = report.window;
  j["last_term_magnitude"] = real_or_null(report.last_term_magnitude);
  j["decay_exponent_estimate"] = real_or_null(report.decay_exponent_estimate);
  j["verdict"] = to_string(report.verdict);
  return j;
}

Json to_json(const VerificationReport& report) {
  Json j;
  j["lhs"] = to_json(report.lhs);
  j["rhs"] = to_json(report.rhs);
  j["abs_error"] = real_or_null(report.abs_error);
  j["rel_error"] = real_or_null(report.rel_error);
  j["tolerance"] = report.tolerance;
  j["verdict"] = to_string(report.verdict);
  return j;
}

Json to_json(const ModulusChainReport& report) {
  Json residuals = Json::array();
  for (double r : report.residuals) residuals.push_back(real_or_null(r));
  return Json{{"residuals", residuals}, {"satisfied", report.satisfied()}};
}

Json to_json(const MultiTruncationReport& report) {
  Json j;
  j["value"] = to_json(report.value);
  j["window"] = report.window;
  j["shell_tail_magnitude"] = real_or_null(report.shell_tail_magnitude);
  j["decay_exponent_estimate"] = real_or_null(report.decay_exponent_estimate);
  j["verdict"] = to_string(report.verdict);
  return j;
}

Json to_json(const NestedReductionResult& result) {
  Json j;
  j["value"] = to_json(result.value);
  j["verdict"] = to_string(result.verdict);
  j["outer"] = to_json(result.outer);
  j["modulus_chain"] = to_json(result.chain);
  return j;
}

Json to_json(const ProbeReport& report) {
  Json j;
  j["verdict"] = to_string(report.verdict);
  j["value"] = to_json(report.value);
  j["windows"] = report.windows;
  Json sums = Json::array();
  for (Complex s : report.partial_sums) sums.push_back(to_json(s));
  j["partial_sums"] = sums;
  Json deltas = Json::array();
  for (double d : report.deltas) deltas.push_back(real_or_null(d));
  j["deltas"] = deltas;
  j["decay_exponent_estimate"] = real_or_null(report.decay_exponent_estimate);
  return j;
}

Json to_json(const RegionMap& map, bool include_points) {
  std::map<std::string, int> counts;
  for (const RegionTag& t : map.tags) {
    std::string key = to_string(t.kind);
    if (t.kind == RegionTag::Kind::NegativePyramid) key += "(" + std::to_string(t.axis) + ")";
    ++counts[key];
  }
  Json j;
  j["dim"] = map.dim;
  j["window"] = map.window;
  j["components"] = map.components;
  Json c = Json::object();
  for (const auto& [key, count] : counts) c[key] = count;
  j["region_counts"] = c;
  if (include_points) {
    Json points = Json::array();
    for (std::size_t i = 0; i < map.points.size(); ++i) {
      Json p = to_json(map.tags[i]);
      Json row;
      row["coords"] = map.points[i];
      row["tag"] = p["tag"];
      row["axis"] = p["axis"];
      points.push_back(row);
    }
    j["points"] = points;
  }
  return j;
}

std::string layer_csv(const LayerTable& table) {
  std::ostringstream os;
  for (int i = 1; i <= table.dim; ++i) os << 'c' << i << ',';
  os << "value\n";
  for (const auto& [composition, value] : table.entries) {
    for (int c : composition) os << c << ',';
    os << format_real(value) << '\n';
  }
  return os.str();
}

std::string region_csv(const RegionMap& map) {
  std::ostringstream os;
  for (int i = 1; i <= map.dim; ++i) os << 'c' << i << ',';
  os << "tag,axis\n";
  for (std::size_t i = 0; i < map.points.size(); ++i) {
    for (int c : map.points[i]) os << c << ',';
    os << to_string(map.tags[i].kind) << ',';
    if (map.tags[i].kind == RegionTag::Kind::NegativePyramid) os << map.tags[i].axis;
    os << '\n';
  }
  return os.str();
}

}  // namespace hyperpascal
