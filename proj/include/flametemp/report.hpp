#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "flametemp/cases.hpp"

namespace flametemp {

enum class OutputFormat { Table, Csv, Json, Markdown };

std::optional<OutputFormat> parse_format(std::string_view name);

nlohmann::json to_json(const CaseSpec& spec);
nlohmann::json to_json(const CaseResult& result);
CaseSpec case_spec_from_json(const nlohmann::json& j);
CaseResult case_result_from_json(const nlohmann::json& j);

/// Single case report. The table format lists at most `top` product species.
std::string format_case(const CaseResult& result, OutputFormat format, std::size_t top = 10);
std::string format_table(const std::vector<TableRow>& rows, OutputFormat format);

/// CSV with header `database,species,T_K,h_over_RT,h_J_per_mol,extrapolated`.
std::string format_curves_csv(const std::vector<CurveRow>& rows);

std::string format_validation(const ValidationReport& report, OutputFormat format);

} // namespace flametemp
