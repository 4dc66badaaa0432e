#include "rac_cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rac/calibration.hpp"
#include "rac/dataset.hpp"
#include "rac/error.hpp"
#include "rac/moments.hpp"

namespace rac::cli {

namespace {

using nlohmann::json;

struct VariantData {
    ConsumptionTag tag;
    MarketDataset dataset;
    SampleMoments moments;
};

struct VariantCalibration {
    CalibrationResult result;
    bool rho_supplied;
};

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

const VariantOverrides& overrides_for(const RunConfig& c, ConsumptionTag tag) {
    return tag == ConsumptionTag::Realized ? c.realized : c.projected;
}

MarketDataset load_base(const RunConfig& c) {
    if (!c.dataset_path) {
        throw Error(ErrorCode::InvalidArgument, "no dataset given (use --dataset PATH or set RAC_DATASET)");
    }
    return load_dataset_file(*c.dataset_path);
}

std::vector<VariantData> load_variants(const RunConfig& c) {
    MarketDataset base = load_base(c);
    std::vector<VariantData> out;
    if (c.variant != Variant::Projected) {
        out.push_back({ConsumptionTag::Realized, base, compute_moments(base)});
    }
    if (c.variant != Variant::Realized) {
        if (!c.projection_path) {
            throw Error(ErrorCode::InvalidArgument,
                        "the projected variant needs --projection PATH (or use --variant realized)");
        }
        auto projected = with_final_consumption(base, projected_consumption(load_projection_file(*c.projection_path)));
        out.push_back({ConsumptionTag::Projected, projected, compute_moments(projected)});
    }
    return out;
}

VariantCalibration calibrate_variant(const RunConfig& c, const VariantData& v) {
    std::optional<double> rho = c.rho ? c.rho : overrides_for(c, v.tag).rho;
    if (rho) return {calibrate_at_rho(*rho, c.beta, v.moments), true};
    return {solve_system(c.beta, v.moments), false};
}

double eta_for(const RunConfig& c, ConsumptionTag tag, InvestorType investor, const CalibrationResult& cal) {
    if (c.eta) return *c.eta;
    const auto& o = overrides_for(c, tag);
    if (investor == InvestorType::Equity) return o.eta_equity.value_or(cal.factors.zeta);
    return o.eta_riskfree.value_or(cal.factors.xi);
}

std::string_view variant_name(ConsumptionTag tag) { return to_string(tag); }

json calibration_json(const VariantCalibration& vc) {
    const auto& r = vc.result;
    return json{
        {"zeta", r.factors.zeta},
        {"xi", r.factors.xi},
        {"rho", r.rho},
        {"residuals", {r.residuals[0], r.residuals[1], r.residuals[2]}},
        {"consistency_gap", r.consistency_gap},
        {"condition_diagnostic", r.condition_diagnostic},
        {"rho_source", vc.rho_supplied ? "supplied" : "solved"},
    };
}

std::string calibration_text(ConsumptionTag tag, const VariantData& v, const VariantCalibration& vc) {
    const auto& r = vc.result;
    std::ostringstream out;
    out << "Calibration, " << variant_name(tag) << " " << v.dataset.last_year() << " consumption ("
        << fixed6(v.dataset.consumption().back()) << ")\n"
        << "  rho   " << fixed6(r.rho) << (vc.rho_supplied ? "  (supplied)" : "  (solved)") << '\n'
        << "  zeta  " << fixed6(r.factors.zeta) << '\n'
        << "  xi    " << fixed6(r.factors.xi) << '\n'
        << "  residuals        " << fmt_g(r.residuals[0]) << "  " << fmt_g(r.residuals[1]) << "  "
        << fmt_g(r.residuals[2]) << '\n'
        << "  consistency gap  " << fmt_g(r.consistency_gap) << '\n'
        << "  condition        " << fmt_g(r.condition_diagnostic) << '\n';
    return out.str();
}

int report_error(const Error& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::DegenerateSystem) {
        err << "hint: the three pricing equations do not pin down rho on their own; supply one with "
               "--rho F or a config file (see data/published_parameters.json)\n";
    }
    return is_input_error(e.code()) ? kExitInputError : kExitNumericalError;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return report_error(e, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

DefinitionGroup parse_group(const std::string& s) {
    if (s == "one" || s == "1") return DefinitionGroup::GroupOne;
    if (s == "two" || s == "2") return DefinitionGroup::GroupTwo;
    throw Error(ErrorCode::InvalidArgument, "group must be 'one' or 'two', got '" + s + "'");
}

Variant parse_variant(const std::string& s) {
    if (s == "realized") return Variant::Realized;
    if (s == "projected") return Variant::Projected;
    if (s == "both") return Variant::Both;
    throw Error(ErrorCode::InvalidArgument, "variant must be realized, projected or both, got '" + s + "'");
}

ReportFormat parse_format(const std::string& s) {
    if (s == "text") return ReportFormat::Text;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    throw Error(ErrorCode::InvalidArgument, "format must be text, csv or json, got '" + s + "'");
}

void read_overrides(const json& j, VariantOverrides& o) {
    if (j.contains("rho")) o.rho = j.at("rho").get<double>();
    if (j.contains("eta_equity")) o.eta_equity = j.at("eta_equity").get<double>();
    if (j.contains("eta_riskfree")) o.eta_riskfree = j.at("eta_riskfree").get<double>();
}

}  // namespace

void apply_config_file(const std::filesystem::path& path, RunConfig& c) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
        const auto base = path.parent_path();
        auto resolve = [&](const std::string& p) {
            std::filesystem::path fp(p);
            return fp.is_absolute() ? fp : base / fp;
        };
        if (j.contains("dataset")) c.dataset_path = resolve(j.at("dataset").get<std::string>());
        if (j.contains("projection")) c.projection_path = resolve(j.at("projection").get<std::string>());
        if (j.contains("beta")) c.beta = j.at("beta").get<double>();
        if (j.contains("group")) c.group = parse_group(j.at("group").get<std::string>());
        if (j.contains("tol")) c.tolerance = j.at("tol").get<double>();
        if (j.contains("variant")) c.variant = parse_variant(j.at("variant").get<std::string>());
        if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
        if (j.contains("eta")) c.eta = j.at("eta").get<double>();
        if (j.contains("rho")) c.rho = j.at("rho").get<double>();
        if (j.contains("variants")) {
            const auto& v = j.at("variants");
            if (v.contains("realized")) read_overrides(v.at("realized"), c.realized);
            if (v.contains("projected")) read_overrides(v.at("projected"), c.projected);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, "config '" + path.string() + "': " + e.what());
    }
}

void validate(const RunConfig& c) {
    if (!(c.beta > 0.0 && c.beta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "beta must lie in (0, 1]");
    if (!(c.tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be non-negative");
}

int run_ingest(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(c);
        const auto d = load_base(c);
        const auto m = compute_moments(d);
        std::optional<double> projected;
        if (c.projection_path) projected = projected_consumption(load_projection_file(*c.projection_path));

        if (c.format == ReportFormat::Json) {
            json j{{"years", d.years()},
                   {"first_year", d.first_year()},
                   {"last_year", d.last_year()},
                   {"moments",
                    {{"mu_x", m.mu_x},
                     {"sigma2_x", m.sigma2_x},
                     {"mean_x", m.mean_x},
                     {"mean_Re", m.mean_Re},
                     {"mean_Rf", m.mean_Rf},
                     {"mu_z", m.mu_z},
                     {"sigma2_z", m.sigma2_z}}},
                   {"consistency_gap", consistency_gap(m)}};
            if (projected) j["projected_consumption"] = *projected;
            out << j.dump(2) << '\n';
        } else if (c.format == ReportFormat::Csv) {
            out << "years,first_year,last_year,mu_x,sigma2_x,mean_x,mean_Re,mean_Rf,mu_z,sigma2_z,consistency_gap\n"
                << d.years() << ',' << d.first_year() << ',' << d.last_year() << ',' << fmt_g(m.mu_x) << ','
                << fmt_g(m.sigma2_x) << ',' << fmt_g(m.mean_x) << ',' << fmt_g(m.mean_Re) << ','
                << fmt_g(m.mean_Rf) << ',' << fmt_g(m.mu_z) << ',' << fmt_g(m.sigma2_z) << ','
                << fmt_g(consistency_gap(m)) << '\n';
        } else {
            out << d.years() << " years, " << d.first_year() << "–" << d.last_year() << '\n'
                << "  mean gross consumption growth  " << fixed6(m.mean_x) << '\n'
                << "  std. dev. of gross growth      " << fixed6(std::sqrt(m.sigma2_x) * m.mean_x)
                << " (approx.)\n"
                << "  mean log growth (mu_x)         " << fixed6(m.mu_x) << '\n'
                << "  var. of log growth (sigma2_x)  " << fmt_g(m.sigma2_x) << '\n'
                << "  mean gross equity return       " << fixed6(m.mean_Re) << '\n'
                << "  mean gross risk-free return    " << fixed6(m.mean_Rf) << '\n'
                << "  mean log level (mu_z)          " << fixed6(m.mu_z) << '\n'
                << "  var. of log level (sigma2_z)   " << fixed6(m.sigma2_z) << '\n'
                << "  consistency gap                " << fmt_g(consistency_gap(m)) << '\n';
            if (projected) out << "  projected final consumption    " << fixed6(*projected) << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

int run_calibrate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(c);
        const auto variants = load_variants(c);
        std::vector<VariantCalibration> cals;
        for (const auto& v : variants) cals.push_back(calibrate_variant(c, v));

        if (c.format == ReportFormat::Json) {
            json j{{"reports", json::array()}};
            for (std::size_t i = 0; i < variants.size(); ++i) {
                j["reports"].push_back(
                    {{"variant", variant_name(variants[i].tag)}, {"calibration", calibration_json(cals[i])}});
            }
            out << j.dump(2) << '\n';
        } else if (c.format == ReportFormat::Csv) {
            out << "variant,rho_source,zeta,xi,rho,residual_1,residual_2,residual_3,consistency_gap,"
                   "condition_diagnostic\n";
            for (std::size_t i = 0; i < variants.size(); ++i) {
                const auto& r = cals[i].result;
                out << variant_name(variants[i].tag) << ',' << (cals[i].rho_supplied ? "supplied" : "solved")
                    << ',' << fmt_g(r.factors.zeta) << ',' << fmt_g(r.factors.xi) << ',' << fmt_g(r.rho) << ','
                    << fmt_g(r.residuals[0]) << ',' << fmt_g(r.residuals[1]) << ',' << fmt_g(r.residuals[2])
                    << ',' << fmt_g(r.consistency_gap) << ',' << fmt_g(r.condition_diagnostic) << '\n';
            }
        } else {
            for (std::size_t i = 0; i < variants.size(); ++i) {
                if (i) out << '\n';
                out << calibration_text(variants[i].tag, variants[i], cals[i]);
            }
        }
        return static_cast<int>(kExitOk);
    });
}

int run_classify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(c);
        const auto variants = load_variants(c);
        std::vector<VariantCalibration> cals;
        std::vector<ReportRow> equity_rows, riskfree_rows;
        for (const auto& v : variants) {
            cals.push_back(calibrate_variant(c, v));
            const auto& cal = cals.back().result;
            for (auto investor : {InvestorType::Equity, InvestorType::RiskFree}) {
                const double eta = eta_for(c, v.tag, investor, cal);
                auto outcome = classify_pipeline(v.dataset, eta, cal.rho, c.beta, c.group, c.tolerance);
                auto row = make_row(investor, v.dataset, v.tag, cal.rho, outcome);
                (investor == InvestorType::Equity ? equity_rows : riskfree_rows).push_back(std::move(row));
            }
        }

        if (c.format == ReportFormat::Json) {
            json j{{"reports", json::array()}};
            for (std::size_t i = 0; i < variants.size(); ++i) {
                std::vector<ReportRow> rows{equity_rows[i], riskfree_rows[i]};
                json doc = json::parse(render_report(cals[i].result, rows, ReportFormat::Json));
                doc["calibration"]["rho_source"] = cals[i].rho_supplied ? "supplied" : "solved";
                j["reports"].push_back({{"variant", variant_name(variants[i].tag)},
                                        {"calibration", doc["calibration"]},
                                        {"classifications", doc["classifications"]}});
            }
            out << j.dump(2) << '\n';
        } else if (c.format == ReportFormat::Csv) {
            for (std::size_t i = 0; i < variants.size(); ++i) {
                const auto& r = cals[i].result;
                out << "# " << variant_name(variants[i].tag) << ": zeta=" << fmt_g(r.factors.zeta)
                    << " xi=" << fmt_g(r.factors.xi) << " rho=" << fmt_g(r.rho)
                    << " consistency_gap=" << fmt_g(r.consistency_gap) << '\n';
            }
            std::vector<ReportRow> all = equity_rows;
            all.insert(all.end(), riskfree_rows.begin(), riskfree_rows.end());
            out << render_table(all, ReportFormat::Csv);
        } else {
            for (std::size_t i = 0; i < variants.size(); ++i) {
                out << calibration_text(variants[i].tag, variants[i], cals[i])
                    << "  eta used         equity " << fixed6(eta_for(c, variants[i].tag, InvestorType::Equity, cals[i].result))
                    << ", risk-free " << fixed6(eta_for(c, variants[i].tag, InvestorType::RiskFree, cals[i].result))
                    << "\n\n";
            }
            const std::string suffix = " (beta = " + fixed6(c.beta) + ", " + std::string(to_string(c.group)) + ")";
            out << render_table(equity_rows, ReportFormat::Text, "Type of equity investors" + suffix) << '\n';
            out << render_table(riskfree_rows, ReportFormat::Text, "Type of risk-free asset investors" + suffix);
        }
        return static_cast<int>(kExitOk);
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sufficiency-factor calibration and investor risk-attitude classification", "rac"};
    app.require_subcommand(1);

    std::optional<std::string> dataset, projection, config_path, group, variant, format;
    std::optional<double> beta, tol, eta, rho;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--dataset", dataset, "annual market dataset CSV");
        sub->add_option("--projection", projection, "single-row projection inputs CSV");
        sub->add_option("--config", config_path, "JSON config file (flags take precedence)");
        sub->add_option("--beta", beta, "subjective discount factor in (0, 1] (default 0.99)");
        sub->add_option("--group", group, "definition group: one|two (default two)");
        sub->add_option("--tol", tol, "utility equality tolerance (default 1e-9)");
        sub->add_option("--variant", variant, "realized|projected|both (default both)");
        sub->add_option("--eta", eta, "sufficiency factor override for every investor");
        sub->add_option("--rho", rho, "relative risk aversion override");
        sub->add_option("--format", format, "text|csv|json (default text)");
    };
    auto* ingest = app.add_subcommand("ingest", "validate a dataset and print its sample moments");
    auto* calibrate = app.add_subcommand("calibrate", "solve for the sufficiency factors and rho");
    auto* classify = app.add_subcommand("classify", "classify equity and risk-free asset investors");
    for (auto* sub : {ingest, calibrate, classify}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitInputError;
    }

    RunConfig config;
    try {
        if (config_path) apply_config_file(*config_path, config);
        if (dataset) config.dataset_path = *dataset;
        if (!config.dataset_path) {
            if (const char* env = std::getenv("RAC_DATASET"); env && *env) config.dataset_path = env;
        }
        if (projection) config.projection_path = *projection;
        if (beta) config.beta = *beta;
        if (group) config.group = parse_group(*group);
        if (tol) config.tolerance = *tol;
        if (variant) config.variant = parse_variant(*variant);
        if (format) config.format = parse_format(*format);
        if (eta) config.eta = *eta;
        if (rho) config.rho = *rho;
    } catch (const Error& e) {
        return report_error(e, err);
    }

    if (ingest->parsed()) return run_ingest(config, out, err);
    if (calibrate->parsed()) return run_calibrate(config, out, err);
    return run_classify(config, out, err);
}

}  // namespace rac::cli
