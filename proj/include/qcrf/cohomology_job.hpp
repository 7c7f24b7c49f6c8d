#pragma once

// `qcrf cohomology`: truncated Poisson cohomology of an instance, optionally with
// the grading checks and the spectral sequence tables.

#include <string>

#include <nlohmann/json.hpp>

#include "qcrf/io.hpp"

namespace qcrf {

struct CohomologyOptions {
  int degree_bound = 2;  // D
  int kmax = 3;
  bool bigrading = false;
  bool triple = false;
  bool spectral = false;
};

struct CohomologyOutput {
  std::string text;
  nlohmann::ordered_json json;
  bool pass = true;  // every reported condition passed
};

/// The splitting TM = Q + P comes from A (Q = ker A, P = im A) or, without A, from the
/// file's P (or P = TM). Throws PreconditionError when pi is not Poisson or has
/// coefficients of degree >= 2, UsageError when a flag needs data the file lacks.
CohomologyOutput run_cohomology(const InstanceDocument& doc, const CohomologyOptions& options);

}  // namespace qcrf
