// pspin: classify, verify, and explore zero-temperature Parisi measures of
// spherical mixed p-spin models from the command line.
//
// Exit codes: 0 success, 2 validation error, 3 no phase found / verification
// failed, 4 ambiguous phase (uniqueness violation).

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pspin/classifier.hpp"
#include "pspin/hset.hpp"
#include "pspin/json_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNoPhase = 3;
constexpr int kExitAmbiguous = 4;

pspin::Mixture make_mixture(const std::vector<int>& exponents, const std::vector<double>& weights,
                            bool derive_last) {
  const bool diagnostic =
      std::any_of(exponents.begin(), exponents.end(), [](int p) { return p < 3; });
  return diagnostic ? pspin::Mixture::make_diagnostic(exponents, weights, derive_last)
                    : pspin::Mixture::make(exponents, weights, derive_last);
}

// Axis grammar: "v" (fixed) or "lo:hi:step" (range).
pspin::ScanAxis parse_axis(const std::string& text) {
  pspin::ScanAxis axis;
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
  if (parts.size() == 1) {
    axis.lo = axis.hi = parts[0];
    axis.step = 0.0;
  } else if (parts.size() == 3) {
    axis.lo = parts[0];
    axis.hi = parts[1];
    axis.step = parts[2];
  } else {
    throw CLI::ValidationError("--axis", "expected 'value' or 'lo:hi:step'");
  }
  return axis;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("--output", "cannot open " + path);
  out << content;
}

int cmd_classify(const std::vector<int>& exponents, const std::vector<double>& weights,
                 bool derive_last, bool no_oracle) {
  const pspin::Mixture mix = make_mixture(exponents, weights, derive_last);
  pspin::ClassifyOptions opts;
  opts.oracle_check = !no_oracle;
  const pspin::ClassifyOutcome out = pspin::classify(mix, opts);
  if (!out.ok()) {
    std::cerr << (out.error == pspin::ClassifyOutcome::Error::AmbiguousPhase ? "AmbiguousPhase"
                                                                             : "NoPhaseFound")
              << ": " << out.detail << "\n";
    return out.error == pspin::ClassifyOutcome::Error::AmbiguousPhase ? kExitAmbiguous
                                                                      : kExitNoPhase;
  }
  std::cout << pspin::jsonio::classification_json(*out.result, !no_oracle) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& measure_path) {
  const pspin::ParisiMeasure nu = pspin::jsonio::measure_from_file(measure_path);
  pspin::validate_measure(nu);
  const pspin::VerificationReport report = pspin::verify_parisi(nu);
  std::cout << pspin::jsonio::verification_json(report) << "\n";
  return report.passed ? kExitOk : kExitNoPhase;
}

int cmd_scan(std::vector<int> exponents, std::vector<std::string> axis_specs,
             const std::string& job_path, bool no_oracle, const std::string& output) {
  std::string out_path = output;
  if (!job_path.empty()) {
    // ScanJob file: flat key=value lines. Keys: exponents (comma list),
    // axis (repeatable; value or lo:hi:step), oracle (on/off), output (path).
    std::ifstream in(job_path);
    if (!in) throw CLI::ValidationError("--job", "cannot open " + job_path);
    std::string line;
    while (std::getline(in, line)) {
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "exponents") {
        exponents.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) exponents.push_back(std::stoi(tok));
      } else if (key == "axis") {
        axis_specs.push_back(value);
      } else if (key == "oracle") {
        no_oracle = (value == "off" || value == "false" || value == "0");
      } else if (key == "output") {
        out_path = value;
      } else {
        throw CLI::ValidationError("--job", "unknown key '" + key + "'");
      }
    }
  }
  if (exponents.empty()) throw CLI::ValidationError("--exponents", "required");
  if (axis_specs.empty()) throw CLI::ValidationError("--axis", "at least one axis required");
  int ranges = 0;
  std::vector<pspin::ScanAxis> axes;
  for (const std::string& spec : axis_specs) {
    axes.push_back(parse_axis(spec));
    if (axes.back().step > 0.0) ++ranges;
  }
  if (ranges > 2) throw CLI::ValidationError("--axis", "at most 2 range axes");
  pspin::ClassifyOptions opts;
  opts.oracle_check = !no_oracle;
  const std::vector<pspin::ScanRow> rows = pspin::phase_scan(exponents, axes, opts);
  write_output(out_path, pspin::jsonio::scan_csv(rows));
  return kExitOk;
}

int cmd_oracle(const std::vector<int>& exponents, const std::vector<double>& weights,
               bool derive_last, int n, const std::string& phi_csv) {
  const pspin::Mixture mix = make_mixture(exponents, weights, derive_last);
  pspin::OracleOptions opts;
  if (n > 0) opts.N = n;
  const pspin::OracleSolution sol = pspin::minimize_cs(mix, opts);
  std::cout << pspin::jsonio::oracle_json(sol) << "\n";
  if (!phi_csv.empty()) write_output(phi_csv, pspin::jsonio::oracle_phi_csv(sol));
  return kExitOk;
}

int cmd_hset(const std::vector<int>& exponents, const std::vector<double>& weights,
             bool derive_last, const std::vector<double>& chain_points) {
  const pspin::Mixture mix = make_mixture(exponents, weights, derive_last);
  const pspin::Chain chain{std::vector<double>(chain_points)};
  const pspin::KappaReport report = pspin::condition_kappa(mix, chain);
  using pspin::jsonio::format_number;
  std::ostringstream os;
  os << "{\"satisfied\":" << (report.satisfied ? "true" : "false")
     << ",\"strict\":" << (report.strict ? "true" : "false") << ",\"Z\":"
     << format_number(report.profile.Z) << ",\"Y\":" << format_number(report.profile.Y)
     << ",\"intervals\":[";
  for (std::size_t l = 0; l < report.margin_z.size(); ++l) {
    if (l) os << ",";
    os << "{\"l\":" << l + 1 << ",\"margin_z\":" << format_number(report.margin_z[l])
       << ",\"margin_y\":" << format_number(report.margin_y[l])
       << ",\"scale\":" << format_number(report.scale[l]) << "}";
  }
  os << "]}";
  std::cout << os.str() << "\n";
  return kExitOk;
}

int cmd_boundaries(int p, int s) {
  const pspin::BoundaryTable table = pspin::two_component_boundaries(p, s);
  std::cout << pspin::jsonio::boundary_json(table) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-temperature Parisi measures of spherical mixed p-spin models"};
  app.require_subcommand(1);

  std::vector<int> exponents;
  std::vector<double> weights;
  bool derive_last = false;
  bool no_oracle = false;

  auto add_mixture_flags = [&](CLI::App* cmd, bool weights_required = true) {
    cmd->add_option("--exponents", exponents, "comma-separated integer exponents")
        ->required()
        ->delimiter(',');
    auto* w = cmd->add_option("--weights", weights, "comma-separated weights")->delimiter(',');
    if (weights_required) w->required();
    cmd->add_flag("--derive-last", derive_last, "derive the last weight as 1 - sum");
  };

  CLI::App* classify = app.add_subcommand("classify", "classify the Parisi measure");
  add_mixture_flags(classify);
  classify->add_flag("--no-oracle", no_oracle, "skip the oracle cross-check");
  bool json_flag = false;
  classify->add_flag("--json", json_flag, "emit JSON (always on; accepted for compatibility)");

  CLI::App* verify = app.add_subcommand("verify", "verify optimality of a measure JSON");
  std::string measure_path;
  verify->add_option("--measure", measure_path, "path to a measure JSON file")->required();

  CLI::App* scan = app.add_subcommand("scan", "classify over a weight grid, emit CSV");
  std::vector<std::string> axis_specs;
  std::string job_path, output;
  scan->add_option("--exponents", exponents, "comma-separated integer exponents")->delimiter(',');
  scan->add_option("--axis", axis_specs, "weight axis: fixed value or lo:hi:step (repeatable)");
  scan->add_option("--job", job_path, "ScanJob file (key=value lines)");
  scan->add_flag("--no-oracle", no_oracle, "skip the oracle cross-check");
  scan->add_option("--output", output, "CSV output path (default: stdout)");

  CLI::App* oracle = app.add_subcommand("oracle", "run the convex-minimization oracle");
  add_mixture_flags(oracle);
  int oracle_n = 0;
  std::string phi_csv;
  oracle->add_option("--n", oracle_n, "grid intervals (default 2000)");
  oracle->add_option("--phi-csv", phi_csv, "write the phi profile as CSV to this path");

  CLI::App* hset = app.add_subcommand("hset", "evaluate the chain membership condition");
  add_mixture_flags(hset);
  std::vector<double> chain_points;
  hset->add_option("--chain", chain_points, "comma-separated chain 0,...,1")
      ->required()
      ->delimiter(',');

  CLI::App* boundaries =
      app.add_subcommand("boundaries", "phase boundaries of a two-component family");
  int bp = 0, bs = 0;
  boundaries->add_option("--p", bp, "smaller exponent (>= 3)")->required();
  boundaries->add_option("--s", bs, "larger exponent (> p)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (classify->parsed()) return cmd_classify(exponents, weights, derive_last, no_oracle);
    if (verify->parsed()) return cmd_verify(measure_path);
    if (scan->parsed()) return cmd_scan(exponents, axis_specs, job_path, no_oracle, output);
    if (oracle->parsed()) return cmd_oracle(exponents, weights, derive_last, oracle_n, phi_csv);
    if (hset->parsed()) return cmd_hset(exponents, weights, derive_last, chain_points);
    if (boundaries->parsed()) return cmd_boundaries(bp, bs);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const pspin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
