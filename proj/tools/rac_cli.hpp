#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "rac/classify.hpp"
#include "rac/report.hpp"

namespace rac::cli {

enum class Variant { Realized, Projected, Both };

/// Exogenous parameters for one dataset variant.
struct VariantOverrides {
    std::optional<double> rho;
    std::optional<double> eta_equity;
    std::optional<double> eta_riskfree;
};

struct RunConfig {
    std::optional<std::filesystem::path> dataset_path;
    std::optional<std::filesystem::path> projection_path;
    double beta = 0.99;
    DefinitionGroup group = DefinitionGroup::GroupTwo;
    double tolerance = kDefaultEqualityTol;
    Variant variant = Variant::Both;
    ReportFormat format = ReportFormat::Text;
    std::optional<double> eta;  ///< applies to every investor and variant
    std::optional<double> rho;  ///< applies to every variant
    VariantOverrides realized;
    VariantOverrides projected;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitNumericalError = 2,
};

/// Applies a JSON config file on top of `config`. Relative paths inside the
/// file resolve against the file's directory.
void apply_config_file(const std::filesystem::path& path, RunConfig& config);

/// Throws InvalidArgument when beta or tolerance is out of range.
void validate(const RunConfig& config);

int run_ingest(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_calibrate(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_classify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: `rac <ingest|calibrate|classify> [flags]`.
/// Precedence is flags > --config file > defaults; RAC_DATASET supplies the
/// dataset path when neither names one.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rac::cli
