#pragma once

// Named check levels, as used by `qcrf check --level` and the corpus runner.

#include <string>
#include <vector>

#include "qcrf/io.hpp"

namespace qcrf {

/// f, cr, crf, quasi, integrable, involutive, contact, normality, contact_poisson,
/// normal_contact_poisson, submanifold.
const std::vector<std::string>& check_levels();

/// Runs every checker of `level`. Throws UsageError for an unknown level or when the
/// instance lacks the data the level needs. A failed prerequisite (e.g. A not F) ends
/// the report early with that failure rather than throwing.
CheckReport run_level(const InstanceDocument& doc, const std::string& level);

}  // namespace qcrf
