#pragma once

#include <string>
#include <string_view>

#include "qcf/bench.hpp"
#include "qcf/protocols.hpp"
#include "qcf/qft.hpp"

namespace qcf {

enum class Format { Json, Csv, Text };

/// Throws UsageError for anything but "json", "csv" or "text".
Format parse_format(std::string_view name);

/// Rounds to 12 significant digits; every emitted probability passes
/// through here so output bytes do not depend on roundoff below that.
double round_sig12(double value);

inline constexpr std::string_view kBenchCsvHeader = "n,k,method,complex_mults,wall_nanos,reps";
inline constexpr std::string_view kProtocolCsvHeader = "labels,probability,count,class,computation_ran,discarded";
inline constexpr std::string_view kQftCsvHeader = "n,qft_gates,fft_complex_mults";

// Serialization is deterministic: fixed key order, fixed number formatting.
// Every string ends with a newline.
std::string emit_report(const ProtocolReport& report, Format format);
std::string emit_report(const BenchReport& report, Format format);
std::string emit_report(const QftReport& report, Format format);

}  // namespace qcf
