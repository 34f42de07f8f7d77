#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "xicor/inference.hpp"
#include "xicor/ranks.hpp"
#include "xicor/simulation.hpp"

namespace xicor::io {

/// Two numeric columns (x, y). Comma or tab delimited (detected from the
/// first data line), '.' decimal point, optional non-numeric header row,
/// blank lines ignored. Rows stay in file order. Throws ParseError with the
/// 1-based line and column of the first bad cell.
Sample parse_sample(std::string_view text);
Sample load_sample(const std::filesystem::path& path);

std::string to_json(const TestResult& result);
TestResult test_result_from_json(std::string_view text);

/// Nested JSON with schema_version. Parsing restores the report exactly.
std::string to_json(const StudyReport& report);
StudyReport report_from_json(std::string_view text);

/// Flat CSV: study, schema_version, master_seed, method, n, M, rho,
/// replicates, seed, then one column per metric. Reals are written with 17
/// significant digits; an empty M cell means no neighbor count.
std::string to_csv(const StudyReport& report);
StudyReport report_from_csv(std::string_view text);

/// Real formatted with 17 significant digits.
std::string format_real(double value);

} // namespace xicor::io
