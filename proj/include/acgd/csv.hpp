#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "acgd/optimizers.hpp"

namespace acgd {

inline constexpr const char* kTraceHeader = "iter,evals,f_avg,f_last,eta,S";

/// Shortest round-trip representation at 17 significant digits, '.' decimal
/// separator regardless of the global locale.
std::string format_double(double v);

void write_trace_csv(std::ostream& out, const Trace& trace);

/// Reads a trace in the schema written by write_trace_csv. A header that
/// differs raises ParseError naming the offending column.
Trace read_trace_csv(std::istream& in);

struct NamedTrace {
  std::string name;
  Trace trace;
};

/// Wide table aligned on evals: "evals,<name>.f_avg,<name>.f_last,...".
/// Cells for evals values a series did not record are left empty.
void write_comparison_csv(std::ostream& out, std::span<const NamedTrace> series);

}  // namespace acgd
