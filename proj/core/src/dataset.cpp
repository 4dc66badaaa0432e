#include "rac/dataset.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "rac/error.hpp"

namespace rac {

namespace {

constexpr std::string_view kDatasetHeader =
    "year,consumption_per_capita,equity_gross_return,riskfree_gross_return";
constexpr std::string_view kProjectionHeader =
    "nondurables_bn,services_bn,gnp_deflator,population";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no); }

double parse_number(std::string_view field, std::size_t line_no, std::string_view column) {
    if (field.empty()) {
        throw Error(ErrorCode::SchemaError,
                    where(line_no) + ": empty cell in column '" + std::string(column) + "'");
    }
    if (field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::SchemaError, where(line_no) + ": '" + std::string(field) +
                                                "' is not a decimal number in column '" +
                                                std::string(column) + "'");
    }
    return value;
}

int parse_year(std::string_view field, std::size_t line_no) {
    int year = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), year);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(ErrorCode::SchemaError,
                    where(line_no) + ": '" + std::string(field) + "' is not an integer year");
    }
    return year;
}

// Reads non-blank lines; strips a UTF-8 BOM from the first one.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_no_;
            if (line_no_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
            if (!trim(line).empty()) return true;
        }
        return false;
    }
    std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

void expect_header(LineReader& reader, std::string_view expected) {
    std::string line;
    if (!reader.next(line)) {
        throw Error(ErrorCode::SchemaError, "empty input, expected header '" + std::string(expected) + "'");
    }
    auto fields = split_fields(line);
    auto want = split_fields(expected);
    if (fields != want) {
        throw Error(ErrorCode::SchemaError, where(reader.line_no()) + ": header '" +
                                                std::string(trim(line)) + "' does not match '" +
                                                std::string(expected) + "'");
    }
}

std::ifstream open_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot open '" + path.string() + "'");
    }
    return in;
}

void write_shortest(std::ostream& out, double value) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    out.write(buf.data(), ptr - buf.data());
}

void require_positive(const AnnualSeries& s, std::string_view name) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s.values()[i] > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue,
                        std::string(name) + " for " + std::to_string(s.start_year() + static_cast<int>(i)) +
                            " must be strictly positive");
        }
    }
}

}  // namespace

AnnualSeries::AnnualSeries(int start_year, std::vector<double> values)
    : start_year_(start_year), values_(std::move(values)) {
    if (values_.size() < 2) {
        throw Error(ErrorCode::SeriesTooShort, "an annual series needs at least two years");
    }
}

double AnnualSeries::at_year(int year) const {
    if (year < start_year_ || year > end_year()) {
        throw Error(ErrorCode::InvalidArgument, "year " + std::to_string(year) + " outside " +
                                                    std::to_string(start_year_) + "-" +
                                                    std::to_string(end_year()));
    }
    return values_[static_cast<std::size_t>(year - start_year_)];
}

MarketDataset::MarketDataset(AnnualSeries consumption, AnnualSeries equity_return,
                             AnnualSeries riskfree_return)
    : consumption_(std::move(consumption)),
      equity_return_(std::move(equity_return)),
      riskfree_return_(std::move(riskfree_return)) {
    auto same_span = [&](const AnnualSeries& s) {
        return s.start_year() == consumption_.start_year() && s.size() == consumption_.size();
    };
    if (!same_span(equity_return_) || !same_span(riskfree_return_)) {
        throw Error(ErrorCode::SchemaError, "consumption and return series cover different years");
    }
    require_positive(consumption_, "consumption");
    require_positive(equity_return_, "equity gross return");
    require_positive(riskfree_return_, "risk-free gross return");
}

MarketDataset load_dataset(std::istream& in) {
    LineReader reader(in);
    expect_header(reader, kDatasetHeader);

    std::vector<double> consumption, equity, riskfree;
    int first_year = 0;
    int prev_year = 0;
    std::string line;
    while (reader.next(line)) {
        auto fields = split_fields(line);
        if (fields.size() != 4) {
            throw Error(ErrorCode::SchemaError, where(reader.line_no()) + ": expected 4 columns, found " +
                                                    std::to_string(fields.size()));
        }
        int year = parse_year(fields[0], reader.line_no());
        if (consumption.empty()) {
            first_year = year;
        } else if (year > prev_year + 1) {
            throw Error(ErrorCode::MissingYear, "no row for year " + std::to_string(prev_year + 1) +
                                                    " (next row is " + std::to_string(year) + ")");
        } else if (year != prev_year + 1) {
            throw Error(ErrorCode::SchemaError, where(reader.line_no()) + ": year " + std::to_string(year) +
                                                    " is out of order or duplicated");
        }
        prev_year = year;

        double c = parse_number(fields[1], reader.line_no(), "consumption_per_capita");
        double re = parse_number(fields[2], reader.line_no(), "equity_gross_return");
        double rf = parse_number(fields[3], reader.line_no(), "riskfree_gross_return");
        if (!(c > 0.0) || !(re > 0.0) || !(rf > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue,
                        "year " + std::to_string(year) + ": consumption and returns must be strictly positive");
        }
        consumption.push_back(c);
        equity.push_back(re);
        riskfree.push_back(rf);
    }
    if (consumption.size() < 2) {
        throw Error(ErrorCode::SeriesTooShort, "dataset needs at least two years of data");
    }
    return MarketDataset(AnnualSeries(first_year, std::move(consumption)),
                         AnnualSeries(first_year, std::move(equity)),
                         AnnualSeries(first_year, std::move(riskfree)));
}

MarketDataset load_dataset_file(const std::filesystem::path& path) {
    auto in = open_file(path);
    return load_dataset(in);
}

void write_dataset(std::ostream& out, const MarketDataset& d) {
    out << kDatasetHeader << '\n';
    for (std::size_t i = 0; i < d.years(); ++i) {
        out << d.first_year() + static_cast<int>(i) << ',';
        write_shortest(out, d.consumption().values()[i]);
        out << ',';
        write_shortest(out, d.equity_return().values()[i]);
        out << ',';
        write_shortest(out, d.riskfree_return().values()[i]);
        out << '\n';
    }
}

ProjectionInputs load_projection(std::istream& in) {
    LineReader reader(in);
    expect_header(reader, kProjectionHeader);
    std::string line;
    if (!reader.next(line)) {
        throw Error(ErrorCode::SchemaError, "projection file has a header but no data row");
    }
    auto fields = split_fields(line);
    if (fields.size() != 4) {
        throw Error(ErrorCode::SchemaError, where(reader.line_no()) + ": expected 4 columns, found " +
                                                std::to_string(fields.size()));
    }
    ProjectionInputs p{parse_number(fields[0], reader.line_no(), "nondurables_bn"),
                       parse_number(fields[1], reader.line_no(), "services_bn"),
                       parse_number(fields[2], reader.line_no(), "gnp_deflator"),
                       parse_number(fields[3], reader.line_no(), "population")};
    if (reader.next(line)) {
        throw Error(ErrorCode::SchemaError, where(reader.line_no()) + ": projection file must have a single data row");
    }
    return p;
}

ProjectionInputs load_projection_file(const std::filesystem::path& path) {
    auto in = open_file(path);
    return load_projection(in);
}

double projected_consumption(const ProjectionInputs& p) {
    // services may legitimately be zero in synthetic inputs; the total may not
    if (!(p.nondurables_bn >= 0.0) || !(p.services_bn >= 0.0) ||
        !(p.nondurables_bn + p.services_bn > 0.0) || !(p.gnp_deflator > 0.0) || !(p.population > 0.0)) {
        throw Error(ErrorCode::NonPositiveValue, "projection inputs must be strictly positive");
    }
    double nominal = 1e9 * (p.nondurables_bn + p.services_bn);
    return nominal / (p.gnp_deflator / 100.0) / p.population;
}

MarketDataset with_final_consumption(const MarketDataset& d, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::NonPositiveValue, "final consumption must be strictly positive");
    }
    auto values = std::vector<double>(d.consumption().values().begin(), d.consumption().values().end());
    values.back() = value;
    return MarketDataset(AnnualSeries(d.first_year(), std::move(values)), d.equity_return(),
                         d.riskfree_return());
}

}  // namespace rac
