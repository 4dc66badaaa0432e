#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rac/calibration.hpp"
#include "rac/classify.hpp"

namespace rac {

enum class InvestorType { Equity, RiskFree };

/// Whether next year's consumption is the realized observation or a
/// projection.
enum class ConsumptionTag { Realized, Projected };

/// One investor/variant line pair of a risk-attitude table: the certain
/// year with its utility and CRRA, and the uncertain year with its
/// utility, allocation and investor type.
struct ReportRow {
    InvestorType investor = InvestorType::Equity;
    int year_certain = 0;
    int year_uncertain = 0;
    ConsumptionTag tag = ConsumptionTag::Realized;
    double consumption_certain = 0.0;
    double consumption_uncertain = 0.0;
    double certain_utility = 0.0;
    double uncertain_utility = 0.0;
    std::string allocation_text;
    std::string label_text;
    double rho = 0.0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

enum class ReportFormat { Text, Csv, Json };

/// Builds a row from a pipeline outcome. Allocation text reads
/// "<Investors> allocate extra <negative|positive> utility".
ReportRow make_row(InvestorType investor, const MarketDataset& d, ConsumptionTag tag, double rho,
                   const PipelineOutcome& outcome);

std::string allocation_text(InvestorType investor, AllocationSign sign);
std::string_view to_string(InvestorType investor) noexcept;
std::string_view to_string(ConsumptionTag tag) noexcept;

/// Renders rows as a table (Text), CSV with a header, or a JSON array.
/// Numbers shown to six decimals; CSV and JSON also carry the exact values
/// in `*_exact` columns/keys. Throws EmptyReport for no rows.
std::string render_table(std::span<const ReportRow> rows, ReportFormat format,
                         std::string_view title = {});

/// Full report document. JSON schema:
///   { "calibration": {zeta, xi, rho, residuals[3], consistency_gap},
///     "classifications": [row...] }
std::string render_report(const CalibrationResult& calibration, std::span<const ReportRow> rows,
                          ReportFormat format);

/// Inverses of render_table for CSV and JSON (arrays or report documents).
/// Exact columns take precedence over the six-decimal ones.
std::vector<ReportRow> parse_csv_rows(std::string_view csv);
std::vector<ReportRow> parse_json_rows(std::string_view json);

}  // namespace rac
