#pragma once

#include <string>

#include "peculiar/classify.hpp"
#include "peculiar/intpoly.hpp"

namespace peculiar {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Assembled data for one emitted report, either a full census or a single
/// reduced-system run. Numbers are emitted with 17 significant digits so
/// identical runs serialize byte-identically.
struct ReportDoc {
    int degree = 0;
    std::string variant;
    TrackOptions options;
    PathAccounting accounting;
    std::vector<SolutionPoint> solutions;
    bool has_counts = false;
    EnumerationCounts counts;
    bool has_audit = false;
    BoundsAudit audit;
    bool has_reverify = false;
    bool reverified_ok = true;
};

ReportDoc make_doc(const EnumerationReport& report, const BoundsAudit* audit);
ReportDoc make_doc(const AlgebraicSystem& system, const SolveResult& result,
                   const TrackOptions& opts);

std::string to_json(const ReportDoc& doc);
std::string to_csv(const ReportDoc& doc);
std::string to_table(const ReportDoc& doc);

} // namespace peculiar
