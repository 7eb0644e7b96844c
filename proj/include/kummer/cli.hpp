#pragma once

// Command implementations behind the kummer CLI. Kept header-side so the
// output formats (CSV column set, JSON shape) can be tested directly;
// tools/kummer.cpp only does flag parsing and exit-code mapping.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kummer/error.hpp"
#include "kummer/expansion.hpp"
#include "kummer/oracle.hpp"
#include "kummer/regimes.hpp"

namespace kummer::cli {

/// Output and numeric knobs shared by all commands. Config-file values
/// are applied first, explicit flags override them.
struct RunConfig {
    std::string format = "plain"; // csv | json | plain
    unsigned precision = 60;
    int terms = 3;
    double safety = 10.0;
};

/// Flat key=value file ('#' comments); keys: precision, terms, safety,
/// format. Unknown keys are rejected rather than silently ignored.
inline void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in)
        throw domain_error("config: cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        if (eq == std::string::npos)
            throw domain_error("config: expected key=value, got '" + line + "'");
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string val = strip(line.substr(eq + 1));
        try {
            if (key == "precision")
                cfg.precision = static_cast<unsigned>(std::stoul(val));
            else if (key == "terms")
                cfg.terms = std::stoi(val);
            else if (key == "safety")
                cfg.safety = std::stod(val);
            else if (key == "format")
                cfg.format = val;
            else
                throw domain_error("config: unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw domain_error("config: bad value for '" + key + "'");
        }
    }
}

/// 17 significant digits: enough for a lossless double round-trip.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string func_name(Func fn) { return fn == Func::M ? "M" : "U"; }

inline std::string regime_name(Regime r) {
    return func_name(r.function) +
           (r.order == Order::b_ge_a ? "/b_ge_a" : "/b_le_a");
}

inline Func parse_func(const std::string& s) {
    if (s == "M")
        return Func::M;
    if (s == "U")
        return Func::U;
    throw domain_error("--fn must be M or U");
}

inline Order parse_order(const std::string& s) {
    if (s == "b_ge_a")
        return Order::b_ge_a;
    if (s == "b_le_a")
        return Order::b_le_a;
    throw domain_error("--order must be b_ge_a or b_le_a");
}

namespace detail {

inline void emit_csv_row(std::ostream& os,
                         const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i)
        os << (i ? "," : "") << fields[i];
    os << "\n";
}

} // namespace detail

inline void cmd_eval(std::ostream& os, Func fn, double a, double b, double z,
                     const RunConfig& cfg) {
    const ParameterSet p(a, b, z);
    EvalOptions opt;
    opt.terms = cfg.terms;
    opt.safety = cfg.safety;
    const EvalResult r =
        (fn == Func::M) ? evaluate_M(p, opt) : evaluate_U(p, opt);

    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["fn"] = func_name(fn);
        j["a"] = a;
        j["b"] = b;
        j["z"] = z;
        j["terms"] = cfg.terms;
        j["value"] = r.value;
        j["log_value"] = r.log_value;
        j["terms_used"] = r.terms_used;
        j["term_magnitudes"] = r.term_magnitudes;
        j["error_estimate"] = r.error_estimate;
        j["regime"] = regime_name(r.regime);
        os << j.dump() << "\n";
        return;
    }
    if (cfg.format == "csv") {
        detail::emit_csv_row(os, {"fn", "a", "b", "z", "terms", "value",
                                  "log_value", "terms_used", "error_estimate",
                                  "regime"});
        detail::emit_csv_row(
            os, {func_name(fn), format_double(a), format_double(b),
                 format_double(z), std::to_string(cfg.terms),
                 format_double(r.value), format_double(r.log_value),
                 std::to_string(r.terms_used), format_double(r.error_estimate),
                 regime_name(r.regime)});
        return;
    }
    os << "fn = " << func_name(fn) << "\n"
       << "regime = " << regime_name(r.regime) << "\n"
       << "value = " << format_double(r.value) << "\n"
       << "log_value = " << format_double(r.log_value) << "\n"
       << "terms_used = " << r.terms_used << "\n"
       << "error_estimate = " << format_double(r.error_estimate) << "\n";
}

/// Grid verification against the oracle; one row per (a, mu). Oracle or
/// expansion failures land in the error column and the run continues.
inline void cmd_verify(std::ostream& os, Func fn, Order order,
                       const std::vector<double>& a_list,
                       const std::vector<double>& mu_list, double z,
                       const RunConfig& cfg) {
    const std::vector<std::string> header = {
        "a", "b", "z", "N", "expansion_log", "oracle_log",
        "rel_error", "estimate", "error"};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (cfg.format != "json")
        detail::emit_csv_row(os, header);

    for (double a : a_list) {
        for (double mu : mu_list) {
            const double b =
                (order == Order::b_ge_a) ? a * (1.0 + mu) : a * (1.0 - mu);
            std::vector<std::string> row = {
                format_double(a), format_double(b), format_double(z),
                std::to_string(cfg.terms)};
            std::string err;
            double elog = 0.0, olog = 0.0, rel = 0.0, est = 0.0;
            try {
                const ParameterSet p(a, b, z);
                EvalOptions opt;
                opt.terms = cfg.terms;
                opt.safety = cfg.safety;
                const EvalResult r = (fn == Func::M) ? evaluate_M(p, opt)
                                                     : evaluate_U(p, opt);
                const OracleResult o = (fn == Func::M)
                                           ? oracle_M(a, b, z, cfg.precision)
                                           : oracle_U(a, b, z, cfg.precision);
                elog = r.log_value;
                olog = o.log_value;
                rel = std::fabs(std::expm1(elog - olog));
                est = r.error_estimate;
            } catch (const std::exception& e) {
                err = e.what();
            }
            if (cfg.format == "json") {
                nlohmann::ordered_json j;
                j["a"] = a;
                j["b"] = b;
                j["z"] = z;
                j["N"] = cfg.terms;
                j["expansion_log"] = elog;
                j["oracle_log"] = olog;
                j["rel_error"] = rel;
                j["estimate"] = est;
                j["error"] = err;
                rows.push_back(j);
            } else {
                row.push_back(format_double(elog));
                row.push_back(format_double(olog));
                row.push_back(format_double(rel));
                row.push_back(format_double(est));
                row.push_back(err);
                detail::emit_csv_row(os, row);
            }
        }
    }
    if (cfg.format == "json")
        os << rows.dump() << "\n";
}

/// Normalized coefficients from the printed closed forms and the numeric
/// pipeline side by side, n = 0..N.
inline void cmd_coeffs(std::ostream& os, Func fn, Order order, double mu,
                       double z, int N, const RunConfig& cfg) {
    if (!(mu > 0.0))
        throw domain_error("coeffs: requires mu > 0");
    if (N < 0 || 2 * N > max_taylor_order)
        throw domain_error("coeffs: N must be between 0 and 6");
    const Regime regime{fn, order};
    const SaddleContext ctx = kummer::detail::make_context(regime, mu);
    const CoefficientTable tab = make_coefficient_table(ctx, z, 2 * N, N);

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (cfg.format != "json")
        detail::emit_csv_row(os, {"n", "closed_form", "pipeline", "delta"});
    for (int n = 0; n <= N; ++n) {
        const bool printed = n <= 2;
        const double cf = printed ? closed_form(regime, n, mu, z) : 0.0;
        const double pipe = tab.normalized[static_cast<std::size_t>(n)];
        if (cfg.format == "json") {
            nlohmann::ordered_json j;
            j["n"] = n;
            if (printed) {
                j["closed_form"] = cf;
                j["delta"] = pipe - cf;
            } else {
                j["closed_form"] = nullptr;
                j["delta"] = nullptr;
            }
            j["pipeline"] = pipe;
            rows.push_back(j);
        } else {
            detail::emit_csv_row(
                os, {std::to_string(n), printed ? format_double(cf) : "",
                     format_double(pipe),
                     printed ? format_double(pipe - cf) : ""});
        }
    }
    if (cfg.format == "json")
        os << rows.dump() << "\n";
}

inline void cmd_oracle(std::ostream& os, Func fn, double a, double b, double z,
                       const RunConfig& cfg) {
    const OracleResult r = (fn == Func::M) ? oracle_M(a, b, z, cfg.precision)
                                           : oracle_U(a, b, z, cfg.precision);
    const std::string value =
        r.value.to_string(static_cast<int>(cfg.precision));
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["fn"] = func_name(fn);
        j["a"] = a;
        j["b"] = b;
        j["z"] = z;
        j["precision"] = r.precision;
        j["value"] = value;
        j["log_value"] = r.log_value;
        j["route"] = r.route;
        j["error_bound_log10"] = r.error_bound_log10;
        j["b_perturbation"] = r.b_perturbation;
        os << j.dump() << "\n";
        return;
    }
    if (cfg.format == "csv") {
        detail::emit_csv_row(os, {"fn", "a", "b", "z", "precision", "value",
                                  "log_value", "route", "error_bound_log10",
                                  "b_perturbation"});
        detail::emit_csv_row(
            os, {func_name(fn), format_double(a), format_double(b),
                 format_double(z), std::to_string(r.precision), value,
                 format_double(r.log_value), r.route,
                 format_double(r.error_bound_log10),
                 format_double(r.b_perturbation)});
        return;
    }
    os << "value = " << value << "\n"
       << "log_value = " << format_double(r.log_value) << "\n"
       << "route = " << r.route << "\n"
       << "error_bound_log10 = " << format_double(r.error_bound_log10) << "\n"
       << "b_perturbation = " << format_double(r.b_perturbation) << "\n";
}

/// Sample the steepest-descent loop r(theta) = sin(theta/mu) /
/// sin((1-mu) theta/mu) over theta in [-mu pi, mu pi] for external
/// plotting.
inline void cmd_path(std::ostream& os, double mu, int samples,
                     const RunConfig& cfg) {
    if (samples < 2)
        throw domain_error("path: needs at least 2 samples");
    if (!(mu > 0.0 && mu < 1.0))
        throw domain_error("path: requires 0 < mu < 1");
    constexpr double pi = 3.14159265358979323846;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (cfg.format != "json")
        detail::emit_csv_row(os, {"theta", "r"});
    for (int i = 0; i < samples; ++i) {
        const double theta =
            -mu * pi + 2.0 * mu * pi * static_cast<double>(i) /
                           static_cast<double>(samples - 1);
        const double r = descent_path_radius(mu, theta);
        if (cfg.format == "json") {
            nlohmann::ordered_json j;
            j["theta"] = theta;
            j["r"] = r;
            rows.push_back(j);
        } else {
            detail::emit_csv_row(os, {format_double(theta), format_double(r)});
        }
    }
    if (cfg.format == "json")
        os << rows.dump() << "\n";
}

} // namespace kummer::cli
