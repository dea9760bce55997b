#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "decoh/run.hpp"
#include "decoh/trajectories.hpp"

namespace {

struct Cli {
    std::string config_path;
    std::string cases = "abcd";
    std::string output;
    double horizon = 3.0;
    std::size_t points = 4096;
    double epsilon = 0.01;
    std::string method = "closed_form";
    std::string scope = "both";

    double omega = 1.0, omega_B = 1.0, lambda = 0.1, gamma0 = 0.0, kT = 0.0;
    double sigma = 0.01;

    int figure_id = 1;
    std::string out_dir = ".";
    double target = 7.7;
};

decoh::RunConfig build_config(const Cli& cli, const CLI::App& app) {
    decoh::RunConfig cfg;
    if (!cli.config_path.empty()) cfg = decoh::load_config_file(cli.config_path, cfg);

    const auto supplied = [&](const std::string& name) {
        const CLI::Option* opt = app.get_option(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (supplied("--horizon")) cfg.horizon = cli.horizon;
    if (supplied("--points")) cfg.points = cli.points;
    if (supplied("--epsilon")) cfg.epsilon = cli.epsilon;
    if (supplied("--case")) {
        cfg.cases.clear();
        for (char ch : cli.cases)
            cfg.cases.push_back(decoh::case_from_string(std::string(1, ch)));
    } else if (cfg.cases.empty()) {
        cfg.cases = {decoh::CaseId::a, decoh::CaseId::b, decoh::CaseId::c, decoh::CaseId::d};
    }
    if (supplied("--omega")) cfg.params.omega = cli.omega;
    if (supplied("--omega-B")) cfg.params.omega_B = cli.omega_B;
    if (supplied("--lambda")) cfg.params.lambda_c = cli.lambda;
    if (supplied("--gamma0")) cfg.params.gamma0 = cli.gamma0;
    if (supplied("--kT")) cfg.params.kT = cli.kT;
    if (supplied("--sigma")) cfg.params.sigma = cli.sigma;

    if (cli.method == "closed_form") cfg.method = decoh::RunMethod::closed_form;
    else if (cli.method == "quadrature") cfg.method = decoh::RunMethod::quadrature;
    else if (cli.method == "both") cfg.method = decoh::RunMethod::both;
    else throw CLI::ValidationError("--method must be closed_form, quadrature or both");

    if (cli.scope == "both") cfg.scope = decoh::PrefactorScope::both;
    else if (cli.scope == "first_only") cfg.scope = decoh::PrefactorScope::first_only;
    else throw CLI::ValidationError("--prefactor-scope must be both or first_only");

    cfg.output_path = cli.output;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoherence dynamics of a subsystem coupled through an intermediate "
                 "oscillator to a hot Ohmic bath: diffusion coefficients, decoherence "
                 "factor and decoherence-time estimates for the four harmonic/inverted "
                 "combinations"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("--config", cli.config_path, "JSON parameter file (flags override)");
    app.add_option("--case", cli.cases, "case tags, e.g. 'abcd' or 'bd'");
    app.add_option("--horizon", cli.horizon, "time horizon");
    app.add_option("--points", cli.points, "grid points");
    app.add_option("--epsilon", cli.epsilon, "decoherence threshold on Gamma");
    app.add_option("--method", cli.method, "closed_form | quadrature | both");
    app.add_option("--prefactor-scope", cli.scope, "both | first_only");
    app.add_option("--omega", cli.omega, "subsystem A frequency");
    app.add_option("--omega-B", cli.omega_B, "subsystem B frequency");
    app.add_option("--lambda", cli.lambda, "A-B coupling");
    app.add_option("--gamma0", cli.gamma0, "bath damping constant");
    app.add_option("--kT", cli.kT, "bath temperature energy");
    app.add_option("--sigma", cli.sigma, "B packet squared-width parameter");

    CLI::App* diffusion = app.add_subcommand("diffusion", "sample D(t) to CSV");
    diffusion->add_option("--out", cli.output, "output CSV path")->required();

    CLI::App* gamma = app.add_subcommand("gamma", "sample Gamma(t) to CSV + JSON sidecar");
    gamma->add_option("--out", cli.output, "output CSV path")->required();

    CLI::App* figure = app.add_subcommand("reproduce-figure", "emit figure panel datasets");
    figure->add_option("--id", cli.figure_id, "figure id 1..4")->required();
    figure->add_option("--out", cli.out_dir, "output directory")->required();

    CLI::App* calibrate =
        app.add_subcommand("calibrate-lambda", "find lambda matching a target t_D");
    calibrate->add_option("--target", cli.target, "target threshold decoherence time")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const decoh::RunConfig cfg = build_config(cli, app);
        if (diffusion->parsed()) {
            decoh::cmd_diffusion(cfg);
        } else if (gamma->parsed()) {
            decoh::cmd_gamma(cfg);
        } else if (figure->parsed()) {
            for (const std::string& f :
                 decoh::cmd_reproduce_figure(cli.figure_id, cli.out_dir, cfg))
                std::cout << f << "\n";
        } else if (calibrate->parsed()) {
            const decoh::CalibrationResult r = decoh::cmd_calibrate_lambda(cfg, cli.target);
            std::printf("lambda = %.12g\n", r.lambda);
            std::printf("t_D(%s) = %.12g (target %.12g)\n",
                        decoh::case_to_string(cfg.cases.front()).c_str(), r.t_D_achieved,
                        cli.target);
            const char* tags = "abcd";
            for (int i = 0; i < 4; ++i)
                std::printf("t_D(%c) = %.12g\n", tags[i], r.t_D_cases[i]);
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
