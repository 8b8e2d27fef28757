#include "pspin/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pspin::jsonio {

namespace {

using nlohmann::json;

template <class T>
std::string join_numbers(const std::vector<T>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    if constexpr (std::is_floating_point_v<T>)
      os << format_number(v[i]);
    else
      os << v[i];
  }
  os << "]";
  return os.str();
}

// Minimal CSV quoting: wrap in quotes when the cell contains a comma, quote,
// or newline.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string int_list(const std::vector<int>& v, const char* sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

const char* phase_kind_name(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::RS: return "RS";
    case PhaseKind::RSB: return "RSB";
    case PhaseKind::FRSB: return "FRSB";
  }
  return "?";
}

std::string measure_json(const ParisiMeasure& nu) {
  std::ostringstream os;
  os << "{\"exponents\":" << join_numbers(nu.mixture.exponents())
     << ",\"weights\":" << join_numbers(nu.mixture.weights())
     << ",\"delta\":" << format_number(nu.delta) << ",\"blocks\":[";
  for (std::size_t i = 0; i < nu.blocks.size(); ++i) {
    if (i) os << ",";
    os << "{\"a\":" << format_number(nu.blocks[i].a) << ",\"b\":" << format_number(nu.blocks[i].b)
       << ",\"m\":" << format_number(nu.blocks[i].m) << "}";
  }
  os << "],\"segments\":[";
  for (std::size_t i = 0; i < nu.segments.size(); ++i) {
    if (i) os << ",";
    os << "{\"a\":" << format_number(nu.segments[i].a)
       << ",\"b\":" << format_number(nu.segments[i].b) << "}";
  }
  os << "]}";
  return os.str();
}

ParisiMeasure measure_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::InvalidMeasure, std::string("measure JSON parse error: ") + e.what());
  }
  ParisiMeasure nu;
  try {
    const std::vector<int> exponents = j.at("exponents").get<std::vector<int>>();
    const std::vector<double> weights = j.at("weights").get<std::vector<double>>();
    const bool diagnostic =
        std::any_of(exponents.begin(), exponents.end(), [](int p) { return p < 3; });
    nu.mixture = diagnostic ? Mixture::make_diagnostic(exponents, weights)
                            : Mixture::make(exponents, weights);
    nu.delta = j.at("delta").get<double>();
    for (const json& b : j.at("blocks"))
      nu.blocks.push_back(
          {b.at("a").get<double>(), b.at("b").get<double>(), b.at("m").get<double>()});
    for (const json& s : j.at("segments"))
      nu.segments.push_back({s.at("a").get<double>(), s.at("b").get<double>()});
  } catch (const json::exception& e) {
    fail(Errc::InvalidMeasure, std::string("measure JSON schema error: ") + e.what());
  }
  return nu;
}

ParisiMeasure measure_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::InvalidMeasure, "cannot open measure file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return measure_from_json(buf.str());
}

std::string verification_json(const VerificationReport& report) {
  std::ostringstream os;
  os << "{\"passed\":" << (report.passed ? "true" : "false")
     << ",\"cond_i_residual\":" << format_number(report.cond_i_residual)
     << ",\"min_g\":" << format_number(report.min_g)
     << ",\"min_g_at\":" << format_number(report.min_g_at)
     << ",\"g_at_support\":" << format_number(report.g_at_support)
     << ",\"grid_size\":" << report.grid_size << "}";
  return os.str();
}

std::string classification_json(const ClassificationResult& result, bool with_oracle) {
  std::ostringstream os;
  os << "{\"phase\":{\"kind\":\"" << phase_kind_name(result.label.kind)
     << "\",\"k\":" << result.label.k << ",\"composition\":" << join_numbers(result.label.composition)
     << ",\"f_set\":" << join_numbers(result.label.f_set) << "}"
     << ",\"energy\":" << format_number(result.energy)
     << ",\"measure\":" << measure_json(result.measure)
     << ",\"verification\":" << verification_json(result.verification)
     << ",\"criterion_agrees\":" << (result.criterion_agrees ? "true" : "false")
     << ",\"near_boundary\":" << (result.near_boundary ? "true" : "false");
  if (with_oracle)
    os << ",\"oracle_gap\":" << format_number(result.oracle_gap)
       << ",\"oracle_ok\":" << (result.oracle_ok ? "true" : "false");
  os << "}";
  return os.str();
}

std::string oracle_json(const OracleSolution& sol) {
  std::ostringstream os;
  os << "{\"energy\":" << format_number(sol.energy) << ",\"delta\":" << format_number(sol.delta)
     << ",\"iterations\":" << sol.iterations
     << ",\"kkt_residual\":" << format_number(sol.kkt_residual)
     << ",\"converged\":" << (sol.converged ? "true" : "false") << "}";
  return os.str();
}

std::string oracle_phi_csv(const OracleSolution& sol) {
  std::ostringstream os;
  os << "x,phi\n";
  for (std::size_t i = 0; i < sol.grid.size(); ++i)
    os << format_number(sol.grid[i]) << "," << format_number(sol.phi[i]) << "\n";
  return os.str();
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "lambda1,lambda2,phase_kind,k,composition,f_set,energy,oracle_gap,flags\n";
  for (const ScanRow& row : rows) {
    os << (row.weights.size() > 0 ? format_number(row.weights[0]) : "") << ","
       << (row.weights.size() > 1 ? format_number(row.weights[1]) : "") << ",";
    if (row.ok) {
      os << phase_kind_name(row.label.kind) << "," << row.label.k << ","
         << csv_cell(int_list(row.label.composition, ","))
         << "," << csv_cell(int_list(row.label.f_set, ",")) << ","
         << format_number(row.energy) << "," << format_number(row.oracle_gap) << ","
         << csv_cell(row.flags);
    } else {
      os << ",,,,,," << csv_cell(row.flags);
    }
    os << "\n";
  }
  return os.str();
}

std::string boundary_json(const BoundaryTable& table) {
  std::ostringstream os;
  auto pair = [&](const char* name, bool found, double x, double lambda, bool with_x) {
    os << "\"" << name << "\":{\"found\":" << (found ? "true" : "false");
    if (found) {
      if (with_x) os << ",\"x\":" << format_number(x);
      os << ",\"lambda\":" << format_number(lambda);
    }
    os << "}";
  };
  os << "{";
  pair("rsb1_to_rsb2", table.found_1to2, table.x_1to2, table.lambda_1to2, true);
  os << ",";
  pair("rsb2_to_frsb2", table.found_2to2f, table.x_2to2f, table.lambda_2to2f, true);
  os << ",";
  pair("frsb2_to_frsb1", table.found_2fto1f, 0.0, table.lambda_2fto1f, false);
  os << ",";
  pair("frsb1_to_rsb1", table.found_1fto1, 0.0, table.lambda_1fto1, false);
  os << "}";
  return os.str();
}

}  // namespace pspin::jsonio
