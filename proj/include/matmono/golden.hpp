#pragma once

// The golden table: every closed-form value the library reproduces.

#include <string>
#include <vector>

#include "matmono/monocheck.hpp"

namespace matmono {

/// counterexample_catalog() followed by the path, derivative, potential and
/// elastic-domain rows. Deterministic.
std::vector<CatalogEntry> golden_table();

/// One line per row: name, expected, computed, |err|, PASS/FAIL.
std::string golden_text(const std::vector<CatalogEntry>& rows);

bool all_passed(const std::vector<CatalogEntry>& rows);

}  // namespace matmono
