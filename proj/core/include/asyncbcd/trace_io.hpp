#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "asyncbcd/simulator.hpp"

namespace asyncbcd {

inline constexpr const char* kTraceHeader =
    "t,f_true,gap,grad_norm_sq,s_norm_sq,max_staleness,lemma1_lhs,lemma1_rhs,lemma2_lhs,lemma2_rhs,lemma3_lhs,lemma3_rhs";

/// One row per record, reals printed with %.17g, missing values left blank.
std::string format_trace_csv(const std::vector<TraceRecord>& records);
void write_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path);

/// Parses a trace CSV as written by write_trace_csv. Columns beyond the standard header
/// (for example a leading run_id) are ignored. Throws std::invalid_argument naming the line on malformed input.
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path);
std::vector<TraceRecord> parse_trace_csv(std::istream& in, const std::string& source = "<stream>");

/// %.17g rendering shared by every numeric writer.
std::string format_real(double v);

}  // namespace asyncbcd
