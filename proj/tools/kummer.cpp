// kummer — evaluate the Kummer functions M(a,b,z) and U(a,b+1,z) for large
// positive parameters by uniform asymptotic expansions, inspect expansion
// coefficients, query the high-precision oracle, run verification grids,
// and sample the steepest-descent contour.
//
// Exit codes: 0 success, 2 domain/usage error, 3 convergence or oracle
// failure. Errors are emitted as a JSON record on stderr.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kummer/cli.hpp"
#include "kummer/kummer.hpp"

namespace {

int fail(int code, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"]["code"] = code;
    j["error"]["message"] = message;
    std::cerr << j.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kummer function evaluation by uniform asymptotic expansions"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string config_path;
    std::string format = "plain";
    unsigned precision = 60;
    int terms = 3;
    double safety = 10.0;
    app.add_option("--config", config_path,
                   "flat key=value file for precision/terms/safety/format");
    app.add_option("--format", format, "output format: csv, json or plain");
    app.add_option("--precision", precision, "oracle decimal digits");
    app.add_option("--terms", terms, "number of expansion terms N");
    app.add_option("--safety", safety, "error-estimate safety factor");

    std::string fn_name = "M", order_name = "b_ge_a";
    double a = 0.0, b = 0.0, z = 0.0, mu = 0.0;
    std::vector<double> a_list, mu_list;
    int samples = 65;

    CLI::App* c_eval = app.add_subcommand(
        "eval", "evaluate M(a,b,z) or U(a,b+1,z) (note the b+1 convention)");
    c_eval->add_option("--fn", fn_name, "M or U")->required();
    c_eval->add_option("--a", a)->required();
    c_eval->add_option("--b", b)->required();
    c_eval->add_option("--z", z)->required();

    CLI::App* c_verify =
        app.add_subcommand("verify", "grid comparison against the oracle");
    c_verify->add_option("--fn", fn_name, "M or U")->required();
    c_verify->add_option("--order", order_name, "b_ge_a or b_le_a");
    c_verify->add_option("--a", a_list, "a values")->required()->delimiter(',');
    c_verify->add_option("--mu", mu_list, "mu values")
        ->required()
        ->delimiter(',');
    c_verify->add_option("--z", z)->required();

    CLI::App* c_coeffs = app.add_subcommand(
        "coeffs", "closed-form vs pipeline expansion coefficients");
    c_coeffs->add_option("--fn", fn_name, "M or U")->required();
    c_coeffs->add_option("--order", order_name, "b_ge_a or b_le_a");
    c_coeffs->add_option("--mu", mu)->required();
    c_coeffs->add_option("--z", z)->required();

    CLI::App* c_oracle =
        app.add_subcommand("oracle", "high-precision reference value");
    c_oracle->add_option("--fn", fn_name, "M or U")->required();
    c_oracle->add_option("--a", a)->required();
    c_oracle->add_option("--b", b)->required();
    c_oracle->add_option("--z", z)->required();

    CLI::App* c_path =
        app.add_subcommand("path", "steepest-descent contour samples");
    c_path->add_option("--mu", mu)->required();
    c_path->add_option("--samples", samples);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::stringstream ss;
        ss << e.what();
        return fail(2, "usage: " + ss.str());
    }

    try {
        kummer::cli::RunConfig cfg;
        if (!config_path.empty())
            kummer::cli::load_config_file(config_path, cfg);
        // explicit flags override the config file
        if (app.count("--format"))
            cfg.format = format;
        else if (config_path.empty())
            cfg.format = format;
        if (app.count("--precision"))
            cfg.precision = precision;
        if (app.count("--terms"))
            cfg.terms = terms;
        if (app.count("--safety"))
            cfg.safety = safety;
        if (cfg.format != "csv" && cfg.format != "json" &&
            cfg.format != "plain")
            throw kummer::domain_error("--format must be csv, json or plain");

        const kummer::Func fn = kummer::cli::parse_func(fn_name);
        if (*c_eval)
            kummer::cli::cmd_eval(std::cout, fn, a, b, z, cfg);
        else if (*c_verify)
            kummer::cli::cmd_verify(std::cout, fn,
                                    kummer::cli::parse_order(order_name),
                                    a_list, mu_list, z, cfg);
        else if (*c_coeffs)
            kummer::cli::cmd_coeffs(std::cout, fn,
                                    kummer::cli::parse_order(order_name), mu,
                                    z, cfg.terms, cfg);
        else if (*c_oracle)
            kummer::cli::cmd_oracle(std::cout, fn, a, b, z, cfg);
        else if (*c_path)
            kummer::cli::cmd_path(std::cout, mu, samples, cfg);
        return 0;
    } catch (const kummer::domain_error& e) {
        return fail(2, e.what());
    } catch (const kummer::convergence_error& e) {
        return fail(3, e.what());
    } catch (const std::exception& e) {
        return fail(3, e.what());
    }
}
