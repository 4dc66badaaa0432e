#include "rac/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "rac/error.hpp"

namespace rac {

namespace {

using nlohmann::json;

std::string fixed6(double v) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6f", v);
    return buf.data();
}

std::string exact(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

double rounded6(double v) { return std::round(v * 1e6) / 1e6; }

std::string year_text(int year, ConsumptionTag tag) {
    return std::to_string(year) + " (" + std::string(to_string(tag)) + ")";
}

void require_rows(std::span<const ReportRow> rows) {
    if (rows.empty()) throw Error(ErrorCode::EmptyReport, "nothing to render");
}

InvestorType parse_investor(std::string_view s) {
    if (s == "equity") return InvestorType::Equity;
    if (s == "riskfree") return InvestorType::RiskFree;
    throw Error(ErrorCode::SchemaError, "unknown investor '" + std::string(s) + "'");
}

ConsumptionTag parse_tag(std::string_view s) {
    if (s == "realized") return ConsumptionTag::Realized;
    if (s == "projected") return ConsumptionTag::Projected;
    throw Error(ErrorCode::SchemaError, "unknown consumption tag '" + std::string(s) + "'");
}

double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::SchemaError, "'" + std::string(s) + "' is not a number");
    }
    return v;
}

int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::SchemaError, "'" + std::string(s) + "' is not an integer");
    }
    return v;
}

// ---- text ------------------------------------------------------------------

const std::array<std::string, 7> kTextColumns = {
    "Year", "Per Capita Real Consumption", "Certain Utility", "Uncertain Utility",
    "Utility Allocation", "Type of Investor", "CRRA"};

std::string render_text(std::span<const ReportRow> rows, std::string_view title) {
    using Line = std::array<std::string, 7>;
    std::vector<Line> lines;
    lines.push_back(kTextColumns);
    for (const auto& r : rows) {
        lines.push_back({year_text(r.year_certain, ConsumptionTag::Realized), fixed6(r.consumption_certain),
                         fixed6(r.certain_utility), "", "", "", fixed6(r.rho)});
        lines.push_back({year_text(r.year_uncertain, r.tag), fixed6(r.consumption_uncertain), "",
                         fixed6(r.uncertain_utility), r.allocation_text, r.label_text, ""});
    }
    std::array<std::size_t, 7> width{};
    for (const auto& line : lines)
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());

    std::ostringstream out;
    if (!title.empty()) out << title << '\n';
    auto emit = [&](const Line& line) {
        std::string text;
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (c) text += "  ";
            text += line[c];
            text.append(width[c] - line[c].size(), ' ');
        }
        while (!text.empty() && text.back() == ' ') text.pop_back();
        out << text << '\n';
    };
    emit(lines.front());
    std::size_t total = 0;
    for (auto w : width) total += w;
    out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (std::size_t i = 1; i < lines.size(); ++i) emit(lines[i]);
    return out.str();
}

// ---- csv -------------------------------------------------------------------

const std::array<std::string_view, 16> kCsvColumns = {
    "investor", "year_certain", "year_uncertain", "consumption_tag",
    "consumption_certain", "consumption_uncertain", "certain_utility", "uncertain_utility",
    "utility_allocation", "type_of_investor", "rho",
    "consumption_certain_exact", "consumption_uncertain_exact", "certain_utility_exact",
    "uncertain_utility_exact", "rho_exact"};

std::string csv_quote(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

std::vector<std::string> csv_split(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

std::string render_csv(std::span<const ReportRow> rows) {
    std::ostringstream out;
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) out << (c ? "," : "") << kCsvColumns[c];
    out << '\n';
    for (const auto& r : rows) {
        out << to_string(r.investor) << ',' << r.year_certain << ',' << r.year_uncertain << ','
            << to_string(r.tag) << ',' << fixed6(r.consumption_certain) << ','
            << fixed6(r.consumption_uncertain) << ',' << fixed6(r.certain_utility) << ','
            << fixed6(r.uncertain_utility) << ',' << csv_quote(r.allocation_text) << ','
            << csv_quote(r.label_text) << ',' << fixed6(r.rho) << ',' << exact(r.consumption_certain) << ','
            << exact(r.consumption_uncertain) << ',' << exact(r.certain_utility) << ','
            << exact(r.uncertain_utility) << ',' << exact(r.rho) << '\n';
    }
    return out.str();
}

// ---- json ------------------------------------------------------------------

json row_json(const ReportRow& r) {
    return json{
        {"investor", to_string(r.investor)},
        {"year_certain", r.year_certain},
        {"year_uncertain", r.year_uncertain},
        {"consumption_tag", to_string(r.tag)},
        {"consumption_certain", rounded6(r.consumption_certain)},
        {"consumption_uncertain", rounded6(r.consumption_uncertain)},
        {"certain_utility", rounded6(r.certain_utility)},
        {"uncertain_utility", rounded6(r.uncertain_utility)},
        {"utility_allocation", r.allocation_text},
        {"type_of_investor", r.label_text},
        {"rho", rounded6(r.rho)},
        {"consumption_certain_exact", r.consumption_certain},
        {"consumption_uncertain_exact", r.consumption_uncertain},
        {"certain_utility_exact", r.certain_utility},
        {"uncertain_utility_exact", r.uncertain_utility},
        {"rho_exact", r.rho},
    };
}

ReportRow row_from_json(const json& j) {
    try {
        ReportRow r;
        r.investor = parse_investor(j.at("investor").get<std::string>());
        r.year_certain = j.at("year_certain").get<int>();
        r.year_uncertain = j.at("year_uncertain").get<int>();
        r.tag = parse_tag(j.at("consumption_tag").get<std::string>());
        auto num = [&](const char* key) {
            std::string exact_key = std::string(key) + "_exact";
            return j.contains(exact_key) ? j.at(exact_key).get<double>() : j.at(key).get<double>();
        };
        r.consumption_certain = num("consumption_certain");
        r.consumption_uncertain = num("consumption_uncertain");
        r.certain_utility = num("certain_utility");
        r.uncertain_utility = num("uncertain_utility");
        r.allocation_text = j.at("utility_allocation").get<std::string>();
        r.label_text = j.at("type_of_investor").get<std::string>();
        r.rho = num("rho");
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, std::string("malformed report row: ") + e.what());
    }
}

json calibration_json(const CalibrationResult& c) {
    return json{
        {"zeta", c.factors.zeta},
        {"xi", c.factors.xi},
        {"rho", c.rho},
        {"residuals", {c.residuals[0], c.residuals[1], c.residuals[2]}},
        {"consistency_gap", c.consistency_gap},
        {"condition_diagnostic", c.condition_diagnostic},
    };
}

std::string render_calibration_text(const CalibrationResult& c) {
    std::ostringstream out;
    out << "zeta (equity sufficiency factor)    " << fixed6(c.factors.zeta) << '\n'
        << "xi (risk-free sufficiency factor)   " << fixed6(c.factors.xi) << '\n'
        << "rho (relative risk aversion)        " << fixed6(c.rho) << '\n'
        << "residuals                           " << exact(c.residuals[0]) << ' '
        << exact(c.residuals[1]) << ' ' << exact(c.residuals[2]) << '\n'
        << "consistency gap                     " << exact(c.consistency_gap) << '\n'
        << "condition diagnostic                " << exact(c.condition_diagnostic) << '\n';
    return out.str();
}

}  // namespace

std::string_view to_string(InvestorType investor) noexcept {
    return investor == InvestorType::Equity ? "equity" : "riskfree";
}

std::string_view to_string(ConsumptionTag tag) noexcept {
    return tag == ConsumptionTag::Realized ? "realized" : "projected";
}

std::string allocation_text(InvestorType investor, AllocationSign sign) {
    std::string who = investor == InvestorType::Equity ? "Equity investors" : "Risk-free asset investors";
    if (sign == AllocationSign::Zero) return who + " allocate no extra utility";
    return who + " allocate extra " + std::string(to_string(sign)) + " utility";
}

ReportRow make_row(InvestorType investor, const MarketDataset& d, ConsumptionTag tag, double rho,
                   const PipelineOutcome& outcome) {
    ReportRow r;
    r.investor = investor;
    r.year_certain = d.last_year() - 1;
    r.year_uncertain = d.last_year();
    r.tag = tag;
    r.consumption_certain = d.consumption().at_year(r.year_certain);
    r.consumption_uncertain = d.consumption().at_year(r.year_uncertain);
    r.certain_utility = outcome.comparison.certain;
    r.uncertain_utility = outcome.comparison.uncertain;
    r.allocation_text = allocation_text(investor, outcome.attitude.allocation);
    r.label_text = std::string(label_text(outcome.attitude.label));
    r.rho = rho;
    return r;
}

std::string render_table(std::span<const ReportRow> rows, ReportFormat format, std::string_view title) {
    require_rows(rows);
    switch (format) {
        case ReportFormat::Text: return render_text(rows, title);
        case ReportFormat::Csv: return render_csv(rows);
        case ReportFormat::Json: {
            json arr = json::array();
            for (const auto& r : rows) arr.push_back(row_json(r));
            return arr.dump(2) + "\n";
        }
    }
    return {};
}

std::string render_report(const CalibrationResult& calibration, std::span<const ReportRow> rows,
                          ReportFormat format) {
    require_rows(rows);
    switch (format) {
        case ReportFormat::Text:
            return render_calibration_text(calibration) + "\n" + render_text(rows, {});
        case ReportFormat::Csv: {
            // calibration as leading comment lines keeps the row block parseable
            std::ostringstream out;
            out << "# zeta=" << exact(calibration.factors.zeta) << " xi=" << exact(calibration.factors.xi)
                << " rho=" << exact(calibration.rho) << " consistency_gap=" << exact(calibration.consistency_gap)
                << '\n';
            out << render_csv(rows);
            return out.str();
        }
        case ReportFormat::Json: {
            json doc{{"calibration", calibration_json(calibration)}, {"classifications", json::array()}};
            for (const auto& r : rows) doc["classifications"].push_back(row_json(r));
            return doc.dump(2) + "\n";
        }
    }
    return {};
}

std::vector<ReportRow> parse_csv_rows(std::string_view csv) {
    std::vector<ReportRow> rows;
    std::istringstream in{std::string(csv)};
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = csv_split(line);
        if (header.empty()) {
            header = fields;
            continue;
        }
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::SchemaError, "report CSV row has " + std::to_string(fields.size()) +
                                                    " fields, header has " + std::to_string(header.size()));
        }
        auto col = [&](std::string_view name) -> const std::string& {
            auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) throw Error(ErrorCode::SchemaError, "missing column " + std::string(name));
            return fields[static_cast<std::size_t>(it - header.begin())];
        };
        auto num = [&](std::string_view name) {
            std::string exact_name = std::string(name) + "_exact";
            bool has_exact = std::find(header.begin(), header.end(), exact_name) != header.end();
            return parse_double(has_exact ? col(exact_name) : col(name));
        };
        ReportRow r;
        r.investor = parse_investor(col("investor"));
        r.year_certain = parse_int(col("year_certain"));
        r.year_uncertain = parse_int(col("year_uncertain"));
        r.tag = parse_tag(col("consumption_tag"));
        r.consumption_certain = num("consumption_certain");
        r.consumption_uncertain = num("consumption_uncertain");
        r.certain_utility = num("certain_utility");
        r.uncertain_utility = num("uncertain_utility");
        r.allocation_text = col("utility_allocation");
        r.label_text = col("type_of_investor");
        r.rho = num("rho");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ReportRow> parse_json_rows(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
    }
    const json* arr = &doc;
    if (doc.is_object() && doc.contains("classifications")) arr = &doc["classifications"];
    if (!arr->is_array()) throw Error(ErrorCode::SchemaError, "expected an array of report rows");
    std::vector<ReportRow> rows;
    for (const auto& j : *arr) rows.push_back(row_from_json(j));
    return rows;
}

}  // namespace rac
