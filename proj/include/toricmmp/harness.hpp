#pragma once

// Database ingestion, batch verification and report output.
//
// Record format: blocks separated by blank lines, `#` starts a comment.
//
//   id=<string> dim=<n> rays=<m> [mode=polytope|fan]
//   <m lines of n integers>
//   cones                      (fan mode only)
//   <one line per maximal cone: n 1-based ray indices>
//
// Polytope-mode rays are the vertices of a smooth Fano polytope; the fan is
// its face fan.

#include "toricmmp/verify.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricmmp {

/// Unreadable input, duplicate ids or unwritable output.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VarietyRecord {
    std::string id;
    std::size_t dim = 0;
    std::string mode;  ///< "polytope" or "fan"
    std::vector<IntVector> rays;
    std::vector<Cone> cones;  ///< 0-based, fan mode only
    std::string source;
    std::size_t first_line = 0, last_line = 0;
    std::optional<Fan> fan;  ///< set iff the record is valid
    std::string diagnostic;  ///< "<file>:<line>: message" for quarantined records

    bool valid() const { return fan.has_value(); }
};

std::vector<VarietyRecord> ingest(const std::string& path);
/// Parses text already in memory; `source` is used in diagnostics.
std::vector<VarietyRecord> ingest_text(const std::string& text, const std::string& source);

/// Verifies every valid record; reports are ordered by id. A record whose
/// verification throws gets a failing "harness.error" entry.
std::vector<VerificationReport> run_suite(const std::vector<VarietyRecord>& records,
                                          const std::vector<std::string>& claim_ids, const VerifyOptions& opt = {});
/// OpenMP variant: records are distributed over `workers` threads
/// (0 = OpenMP default). Output is identical to run_suite.
std::vector<VerificationReport> run_suite_parallel(const std::vector<VarietyRecord>& records,
                                                   const std::vector<std::string>& claim_ids, int workers,
                                                   const VerifyOptions& opt = {});

enum class ReportFormat { json_lines, text_summary };

/// Writes to `path`, or to stdout when `path` is empty. Throws IoError when
/// the path cannot be written.
void emit_report(const std::vector<VerificationReport>& reports, ReportFormat format, const std::string& path);
std::string format_report(const std::vector<VerificationReport>& reports, ReportFormat format);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const Fan& f);
nlohmann::json to_json(const MmpRun& run);
nlohmann::json to_json(const TypeBReport& r);
nlohmann::json to_json(const TypeAReport& r);

}  // namespace toricmmp
