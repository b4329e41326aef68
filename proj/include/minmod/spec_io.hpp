#pragma once

#include "minmod/entire_fn.hpp"

#include <iosfwd>
#include <string>

namespace minmod {

// Plain-text key-value spec format, one field per line:
//
//   origin_power 1
//   poly 0.6931471805599453          (coefficients low to high; omitted when Q = 0)
//   factor_index 0
//   closed_form two-z-cos-sqrt       (optional)
//   generator power-law|list|recursive
//   ... generator parameters, or one "zero <location> <multiplicity>" line
//       per entry ("logzero <log_abs> <sign> <mult> <log_mult>" for entries
//       beyond double range)
//
// Doubles are printed in shortest round-trip form, so decimal input survives
// write/read/write byte-identically.
std::string write_spec(const EntireFunctionSpec& spec);
EntireFunctionSpec read_spec(const std::string& text);

void save_spec_file(const EntireFunctionSpec& spec, const std::string& path);
EntireFunctionSpec load_spec_file(const std::string& path);

std::string format_double(double v);

} // namespace minmod
