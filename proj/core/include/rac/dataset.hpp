#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace rac {

/// Annual observations for a contiguous run of calendar years; value i
/// belongs to start_year + i.
class AnnualSeries {
public:
    AnnualSeries(int start_year, std::vector<double> values);

    int start_year() const noexcept { return start_year_; }
    int end_year() const noexcept { return start_year_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }

    double at_year(int year) const;
    double front() const noexcept { return values_.front(); }
    double back() const noexcept { return values_.back(); }

    friend bool operator==(const AnnualSeries&, const AnnualSeries&) = default;

private:
    int start_year_;
    std::vector<double> values_;
};

/// Aligned annual market data.
///
/// Year alignment: the return columns of row t hold the gross real return
/// realized from t to t+1, i.e. R_e = (p_{t+1} + y_{t+1}) / p_t and
/// R_f = 1 / q_t are indexed at the year the position is opened.
class MarketDataset {
public:
    MarketDataset(AnnualSeries consumption, AnnualSeries equity_return,
                  AnnualSeries riskfree_return);

    const AnnualSeries& consumption() const noexcept { return consumption_; }
    const AnnualSeries& equity_return() const noexcept { return equity_return_; }
    const AnnualSeries& riskfree_return() const noexcept { return riskfree_return_; }

    int first_year() const noexcept { return consumption_.start_year(); }
    int last_year() const noexcept { return consumption_.end_year(); }
    std::size_t years() const noexcept { return consumption_.size(); }

    friend bool operator==(const MarketDataset&, const MarketDataset&) = default;

private:
    AnnualSeries consumption_;
    AnnualSeries equity_return_;
    AnnualSeries riskfree_return_;
};

/// Inputs for the projected-consumption computation (nominal spending in
/// billions of dollars, deflator with 1972 = 100, mid-year population).
struct ProjectionInputs {
    double nondurables_bn = 0.0;
    double services_bn = 0.0;
    double gnp_deflator = 0.0;
    double population = 0.0;
};

/// Parses `year,consumption_per_capita,equity_gross_return,riskfree_gross_return`.
/// Throws rac::Error with SchemaError, MissingYear or NonPositiveValue.
MarketDataset load_dataset(std::istream& in);
MarketDataset load_dataset_file(const std::filesystem::path& path);

/// Writes the dataset in the same CSV schema, using the shortest decimal
/// representation that reproduces every value bit-exactly.
void write_dataset(std::ostream& out, const MarketDataset& d);

/// Parses the single-row `nondurables_bn,services_bn,gnp_deflator,population` CSV.
ProjectionInputs load_projection(std::istream& in);
ProjectionInputs load_projection_file(const std::filesystem::path& path);

/// Real per-capita consumption in dollars:
/// 1e9 * (nondurables + services) / (deflator / 100) / population.
/// Not rounded.
double projected_consumption(const ProjectionInputs& p);

/// Copy of `d` with the last consumption entry replaced by `value`.
MarketDataset with_final_consumption(const MarketDataset& d, double value);

}  // namespace rac
