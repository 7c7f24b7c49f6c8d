#pragma once

// Instance files (JSON with expression strings) and machine-readable reports.
//
// Instance schema (all keys optional except "coordinates"):
//   name, description            strings
//   coordinates                  ["x1", "y1", ...]
//   A, P                         square matrices of expression strings, A[i][j] = A^i_j
//   pi                           [["x1", "x2", "expr"], ...]: expr * d/dx1 /\ d/dx2
//   contact                      [{"Z": [...], "xi": [...]}, ...]
//   frame                        {"h": [[...]], "q": [[...]], "kappa": [[...]]}
//   base_point                   ["0", "1/2", ...]
//   vectors, forms               {"X1": [...], ...}
//   expect                       {"level": "pass" | "fail", ...}

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qcrf/report.hpp"
#include "qcrf/structures.hpp"

namespace qcrf {

inline constexpr const char* kToolVersion = "qcrf 0.1.0";

struct InstanceDocument {
  StructureInstance instance;
  std::string description;
  bool has_A = false;
  bool has_pi = false;
  std::map<std::string, std::string> expect;
};

/// Throws ParseError; JSON syntax errors carry the byte offset, expression errors
/// the offset inside the expression and the JSON path in the message.
InstanceDocument parse_instance(std::string_view text);
InstanceDocument load_instance(const std::filesystem::path& file);

/// Canonical form: fixed key order, canonically printed expressions, 2-space indent.
std::string format_instance(const InstanceDocument& doc);

/// 64-bit FNV-1a of `text`, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);
/// Digest of the canonical form.
std::string instance_digest(const InstanceDocument& doc);

nlohmann::ordered_json report_json(const CheckReport& report);

}  // namespace qcrf
