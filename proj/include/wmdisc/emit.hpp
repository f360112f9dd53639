#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wmdisc/error_analysis.hpp"
#include "wmdisc/rng.hpp"
#include "wmdisc/sweep.hpp"

namespace wmdisc {

inline constexpr const char* kArtifactVersion = "wmdisc 0.1.0";

enum class EmitFormat { csv, jsonl };

struct EmitMetadata {
    std::uint64_t seed;
    std::string rng_algorithm = kRngAlgorithm;
    std::string version = kArtifactVersion;
    std::string delta_f_sampling = delta_f_sampling_name(false);
};

// Full-precision, locale-independent rendering: 17 significant digits for
// finite values, "inf"/"-inf"/"nan" sentinels otherwise. Round-trips to the
// same bits through parse_double.
std::string format_double(double value);
double parse_double(const std::string& text);

// CSV: '#'-prefixed metadata comment lines, then a header row, then data.
// JSONL: a {"meta": ...} preamble object, then one object per row; non-finite
// values are emitted as the strings "inf"/"-inf"/"nan".
void emit_rows(const std::vector<ResultRow>& rows, EmitFormat format,
               const EmitMetadata& meta, std::ostream& out);

void emit_mc_summary(const McParams& params, const McSummary& summary,
                     EmitFormat format, const EmitMetadata& meta,
                     std::ostream& out);

// Writes to `destination`, or standard output when destination is "-".
// Throws std::ios_base::failure on an unwritable destination.
void emit_rows_to(const std::vector<ResultRow>& rows, EmitFormat format,
                  const EmitMetadata& meta, const std::string& destination);
void emit_mc_summary_to(const McParams& params, const McSummary& summary,
                        EmitFormat format, const EmitMetadata& meta,
                        const std::string& destination);

} // namespace wmdisc
