#include "hyperpascal/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "hyperpascal/bilateral_series.hpp"
#include "hyperpascal/errors.hpp"
#include "hyperpascal/lattice.hpp"
#include "hyperpascal/multinomial.hpp"
#include "hyperpascal/report_json.hpp"

namespace hyperpascal::cli {
namespace {

enum class Format { Json, Csv };

struct Output {
  Format format = Format::Json;
  std::string path;
};

void add_output_options(CLI::App* cmd, Output& output) {
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};
  cmd->add_option("--format", output.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--output,-o", output.path, "Write to this file instead of stdout");
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("trailing characters in '" + text + "'");
  return v;
}

void emit(const Output& output, const std::string& text, std::ostream& out) {
  if (output.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output.path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + output.path);
  file << text;
}

void require_json(const Output& output, const char* command) {
  if (output.format != Format::Json) {
    throw CLI::ValidationError(std::string(command) + " only supports --format json");
  }
}

// Pass/Fail stands only when the series actually delivered a trustworthy
// value: terminated, or measured decay above 1 without a NotConverging flag.
void settle(VerificationReport& report, Verdict verdict, bool terminated, double decay) {
  if (terminated) return;
  if (verdict == Verdict::NotConverging || !(decay > 1.0)) {
    report.verdict = Outcome::Inconclusive;
  }
}

std::vector<Complex> parse_complex_list(const std::vector<std::string>& texts) {
  std::vector<Complex> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_complex(t));
  return out;
}

struct VerifyOptions {
  std::string kind;
  double x = 0.0;
  double y = 0.0;
  std::string z = "1";
  double n = 0.0;
  std::optional<double> theta1;
  std::optional<double> theta2;
  std::vector<double> thetas;
  std::vector<std::string> vars;
  std::vector<double> anchors;
  double tolerance = 1e-6;
  std::optional<int> window;
  std::string method = "nested";
};

int verify_command(const VerifyOptions& opt, const Output& output, std::ostream& out) {
  require_json(output, "verify");
  Json j;
  j["kind"] = opt.kind;
  VerificationReport report;

  if (opt.kind == "binomial") {
    const Complex z = parse_complex(opt.z);
    const BinomialVerification v = verify_bilateral_binomial_detailed(opt.x, opt.y, z, opt.tolerance);
    report = v.verification;
    j["verification"] = to_json(report);
    j["series"] = to_json(v.series);
  } else if (opt.kind == "trinomial") {
    std::vector<Complex> vars;
    if (!opt.vars.empty()) {
      vars = parse_complex_list(opt.vars);
    } else if (opt.theta1 && opt.theta2) {
      const double thetas[] = {*opt.theta1, *opt.theta2};
      vars = chain_from_phases(thetas);
    } else {
      throw CLI::ValidationError("verify trinomial needs --theta1/--theta2 or --vars");
    }
    if (vars.size() != 2) throw CLI::ValidationError("verify trinomial needs two variables");
    std::vector<double> anchors = opt.anchors.empty() ? std::vector<double>{0.5, 0.5} : opt.anchors;
    const TheoremInstance inst(opt.n, vars, anchors);
    const Complex lhs = principal_power(1.0 + vars[0] + vars[1], opt.n);
    if (opt.method == "nested") {
      const NestedReductionResult r = nested_reduction(inst, opt.window.value_or(4096), opt.tolerance);
      report = compare(lhs, r.value, opt.tolerance);
      settle(report, r.verdict, r.outer.terminated(), r.outer.decay_exponent_estimate);
      j["verification"] = to_json(report);
      j["series"] = to_json(r);
    } else if (opt.method == "direct") {
      const MultiTruncationReport r = evaluate_multinomial(inst, opt.window.value_or(32), opt.tolerance);
      report = compare(lhs, r.value, opt.tolerance);
      settle(report, r.verdict, r.terminated(), r.decay_exponent_estimate);
      j["verification"] = to_json(report);
      j["series"] = to_json(r);
    } else {
      throw CLI::ValidationError("--method must be nested or direct");
    }
    j["modulus_chain"] = to_json(modulus_chain_residuals(vars));
  } else if (opt.kind == "multinomial" || opt.kind == "symmetric") {
    std::vector<Complex> vars;
    if (!opt.vars.empty()) {
      vars = parse_complex_list(opt.vars);
    } else if (opt.kind == "multinomial" && !opt.thetas.empty()) {
      vars = chain_from_phases(opt.thetas);
    } else {
      throw CLI::ValidationError("verify " + opt.kind + " needs --vars" +
                                 (opt.kind == "multinomial" ? " or --thetas" : ""));
    }
    const double default_anchor = opt.kind == "multinomial" ? 0.5 : 0.0;
    std::vector<double> anchors =
        opt.anchors.empty() ? std::vector<double>(vars.size(), default_anchor) : opt.anchors;
    const int window = opt.window.value_or(32);
    Complex base{0.0, 0.0};
    MultiTruncationReport r;
    std::vector<Complex> chain_vars;
    if (opt.kind == "multinomial") {
      base = 1.0;
      for (Complex v : vars) base += v;
      r = evaluate_multinomial(TheoremInstance(opt.n, vars, anchors), window, opt.tolerance);
      chain_vars = vars;
    } else {
      for (Complex v : vars) base += v;
      r = symmetric_form(opt.n, vars, anchors, window, opt.tolerance);
      chain_vars = symmetric_substitution(vars);
    }
    report = compare(principal_power(base, opt.n), r.value, opt.tolerance);
    settle(report, r.verdict, r.terminated(), r.decay_exponent_estimate);
    j["verification"] = to_json(report);
    j["series"] = to_json(r);
    j["modulus_chain"] = to_json(modulus_chain_residuals(chain_vars));
  } else {
    throw CLI::ValidationError("unknown verify kind '" + opt.kind + "'");
  }

  emit(output, dump_json(j) + "\n", out);
  return report.verdict == Outcome::Pass ? kSuccess : kNumericFail;
}

}  // namespace

std::complex<double> parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ') text += c;
  }
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i' && text.back() != 'j') return {parse_real(text), 0.0};

  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string real_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string imag_part = split == std::string::npos ? body : body.substr(split);
  if (imag_part.empty() || imag_part == "+") imag_part = "1";
  if (imag_part == "-") imag_part = "-1";
  const double re = real_part.empty() ? 0.0 : parse_real(real_part);
  return {re, parse_real(imag_part)};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regularized multinomial coefficients and bilateral multinomial theorems"};
  app.name("hyperpascal");
  app.require_subcommand(1);

  // coeff
  auto* coeff = app.add_subcommand("coeff", "Regularized multinomial value at a lattice point");
  std::vector<double> coords;
  Output coeff_out;
  coeff->add_option("coords", coords, "Coordinates x_1 ... x_dim (dim >= 2)")->required()->expected(2, -1);
  add_output_options(coeff, coeff_out);

  // layer
  auto* layer = app.add_subcommand("layer", "One layer of the Pascal hyper-pyramid");
  int layer_dim = 3;
  int layer_n = 0;
  std::size_t layer_cap = kDefaultLayerCap;
  Output layer_out;
  layer->add_option("--dim", layer_dim, "Dimension")->required()->check(CLI::Range(2, 1 << 20));
  layer->add_option("--n", layer_n, "Layer index")->required()->check(CLI::NonNegativeNumber);
  layer->add_option("--cap", layer_cap, "Maximum number of compositions");
  add_output_options(layer, layer_out);

  // region-map
  auto* regions = app.add_subcommand("region-map", "Region tags and hyper-pyramid components");
  int region_dim = 2;
  int region_window = 6;
  bool no_points = false;
  Output region_out;
  regions->add_option("--dim", region_dim, "Dimension (2..5)")->required()->check(CLI::Range(2, 5));
  regions->add_option("--window", region_window, "Half-width W of [-W, W]^dim")->required();
  regions->add_flag("--no-points", no_points, "Only print the summary");
  add_output_options(regions, region_out);

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a bilateral theorem numerically");
  VerifyOptions vopt;
  Output verify_out;
  verify->add_option("kind", vopt.kind, "binomial | trinomial | multinomial | symmetric")
      ->required()
      ->check(CLI::IsMember({"binomial", "trinomial", "multinomial", "symmetric"}));
  verify->add_option("--x", vopt.x, "Binomial exponent x");
  verify->add_option("--y", vopt.y, "Binomial summation anchor y");
  verify->add_option("--z", vopt.z, "Binomial variable, e.g. 1+0i");
  verify->add_option("--n", vopt.n, "Exponent n");
  verify->add_option("--theta1", vopt.theta1, "Phase of x_1 (trinomial)");
  verify->add_option("--theta2", vopt.theta2, "Phase of x_2 (trinomial)");
  verify->add_option("--thetas", vopt.thetas, "Phases building a modulus-chain instance");
  verify->add_option("--vars", vopt.vars, "Explicit complex variables");
  verify->add_option("--anchors", vopt.anchors, "Summation anchors");
  verify->add_option("--tol", vopt.tolerance, "Relative tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--K", vopt.window, "Truncation window")->check(CLI::Range(4, 1 << 20));
  verify->add_option("--method", vopt.method, "trinomial route: nested | direct")
      ->check(CLI::IsMember({"nested", "direct"}));
  add_output_options(verify, verify_out);

  // probe
  auto* probe = app.add_subcommand("probe", "Partial sums of the unit-point bilateral sum");
  double probe_n = 0.0;
  int probe_dim = 2;
  std::vector<double> probe_anchors;
  std::vector<int> schedule{64, 128, 256, 512};
  Output probe_out;
  probe->add_option("--n", probe_n, "Exponent n")->required();
  probe->add_option("--dim", probe_dim, "Number of summation indices")->required()->check(CLI::Range(1, 4));
  probe->add_option("--anchors", probe_anchors, "One anchor per index")->required();
  probe->add_option("--schedule", schedule, "Increasing windows");
  add_output_options(probe, probe_out);

  std::vector<std::string> argv_store{"hyperpascal"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (coeff->parsed()) {
      const LatticePoint p(coords);
      const RegularizedValue v = point_value(p);
      if (coeff_out.format == Format::Csv) {
        std::string row = "kind,value\n" + std::string(to_string(v.kind)) + ",";
        if (v.kind == ValueKind::Finite) row += format_real(v.value);
        emit(coeff_out, row + "\n", out);
      } else {
        Json j;
        j["coords"] = coords;
        j["kind"] = to_string(v.kind);
        j["value"] = v.kind == ValueKind::Finite ? Json(v.value) : Json(nullptr);
        const RegionTag tag = classify_region(p);
        j["region"] = to_string(tag.kind);
        j["axis"] = tag.kind == RegionTag::Kind::NegativePyramid ? Json(tag.axis) : Json(nullptr);
        emit(coeff_out, dump_json(j) + "\n", out);
      }
      return kSuccess;
    }
    if (layer->parsed()) {
      const LayerTable table = generate_layer(layer_dim, layer_n, layer_cap);
      if (layer_out.format == Format::Csv) {
        emit(layer_out, layer_csv(table), out);
      } else {
        emit(layer_out, dump_json(to_json(table)) + "\n", out);
      }
      return kSuccess;
    }
    if (regions->parsed()) {
      const RegionMap map = region_map(region_dim, region_window);
      if (region_out.format == Format::Csv) {
        emit(region_out, region_csv(map), out);
        err << "components: " << map.components << "\n";
      } else {
        emit(region_out, dump_json(to_json(map, !no_points)) + "\n", out);
      }
      return kSuccess;
    }
    if (verify->parsed()) return verify_command(vopt, verify_out, out);
    if (probe->parsed()) {
      require_json(probe_out, "probe");
      if (probe_anchors.size() != static_cast<std::size_t>(probe_dim)) {
        throw CLI::ValidationError("--anchors needs exactly --dim values");
      }
      const ProbeReport r = unit_sum_probe(probe_n, probe_dim, probe_anchors, schedule);
      Json j;
      j["n"] = probe_n;
      j["dim"] = probe_dim;
      j["anchors"] = probe_anchors;
      j["probe"] = to_json(r);
      emit(probe_out, dump_json(j) + "\n", out);
      return r.verdict == Verdict::Converged ? kSuccess : kNumericFail;
    }
    return kUsageError;
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace hyperpascal::cli
