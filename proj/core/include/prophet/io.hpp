#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "prophet/cases.hpp"
#include "prophet/classic.hpp"
#include "prophet/suites.hpp"

namespace prophet {

enum class ReportFormat { Table, Csv, Json };

/// Parses "table", "csv" or "json"; throws on anything else.
ReportFormat parse_format(const std::string& name);

/// Distribution schema:
///   {"type":"uniform","a":..,"b":..}
///   {"type":"pointmass","v":..}
///   {"type":"discrete","points":[[value,mass],..]}
///   {"type":"mixture","weights":[..],"components":[..]}
///   {"type":"linear","lo":..,"hi":..,"f_lo":..,"f_hi":..}
/// Mixtures flatten at load time. Errors carry the offending field path.
Dist dist_from_json_text(const std::string& text);

/// An instance file: a top-level array of distributions, or an object
/// with a "boxes" array.
Instance instance_from_json_text(const std::string& text);
Instance instance_from_file(const std::string& path);

/// One line of machine-readable output; the column order is fixed:
/// case_id, quantity, value, reference, verdict.
struct ReportRow {
    std::string case_id;
    std::string quantity;
    double value = 0.0;
    std::string reference;
    std::string verdict;
};

std::vector<ReportRow> rows_from_case(const CaseReport& rep);
std::vector<ReportRow> rows_from_suite(const SuiteResult& s);

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, std::ostream& out);

}  // namespace prophet
