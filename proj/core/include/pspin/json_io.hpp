#pragma once

#include <string>
#include <vector>

#include "pspin/classifier.hpp"
#include "pspin/measure.hpp"
#include "pspin/oracle.hpp"

namespace pspin::jsonio {

// All numeric output uses 12 significant digits, so identical inputs produce
// byte-identical files.
std::string format_number(double v);

const char* phase_kind_name(PhaseKind kind);

// Measure schema (field names are part of the contract):
// {"exponents":[...], "weights":[...], "delta":..., "blocks":[{"a","b","m"}],
//  "segments":[{"a","b"}]}
std::string measure_json(const ParisiMeasure& nu);
ParisiMeasure measure_from_json(const std::string& text);
ParisiMeasure measure_from_file(const std::string& path);

std::string verification_json(const VerificationReport& report);

// {"phase":{"kind","k","composition","f_set"}, "energy", "measure",
//  "verification", "oracle_gap"} plus informative flags.
std::string classification_json(const ClassificationResult& result, bool with_oracle);

// {"energy","delta","iterations","kkt_residual","converged"}
std::string oracle_json(const OracleSolution& sol);
// Two-column CSV (x, phi).
std::string oracle_phi_csv(const OracleSolution& sol);

// Fixed header: lambda1,lambda2,phase_kind,k,composition,f_set,energy,oracle_gap,flags
std::string scan_csv(const std::vector<ScanRow>& rows);

std::string boundary_json(const BoundaryTable& table);

}  // namespace pspin::jsonio
