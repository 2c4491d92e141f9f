#include "certify/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact certificates for the positivity of the angular average"};
    certify::RunConfig cfg;
    std::string stage, sweep_step = "1/100", denom_budget = "1000000", pi_width = "1e-20", out;

    app.add_option("stage", stage, "profile, weights, pq, longtime, shorttime, oracle or all")->required();
    app.set_config("--config", "", "flat key = value file (TOML subset)");
    app.add_option("--out", out, "output directory (CERTIFY_OUT overrides)");
    app.add_option("--jobs", cfg.jobs, "OpenMP worker cap, 0 = default")->check(CLI::NonNegativeNumber);
    app.add_option("--K_max", cfg.K_max, "profile series truncation");
    app.add_option("--M_weights", cfg.M_weights, "weight recursion depth");
    app.add_option("--N1", cfg.N1, "Laplace first-row cutoff");
    app.add_option("--N2", cfg.N2, "Laplace second cutoff");
    app.add_option("--N3", cfg.N3, "H terms kept exactly");
    app.add_option("--N4", cfg.N4, "kernel truncation (equals M_weights)");
    app.add_option("--sweep_step", sweep_step, "sweep step, exact rational");
    app.add_option("--denom_budget", denom_budget, "Picard coefficient grid, 0 = exact");
    app.add_option("--pi_width", pi_width, "width of the pi enclosure");
    CLI11_PARSE(app, argc, argv);

    try {
        const certify::Stage s = certify::parse_stage(stage);
        cfg.sweep_step = certify::parse_rational(sweep_step);
        cfg.pi_width = certify::parse_rational(pi_width);
        const certify::Rational budget = certify::parse_rational(denom_budget);
        if (budget.get_den() != 1) throw std::invalid_argument("denom_budget must be an integer");
        cfg.denom_budget = budget.get_num();
        if (!out.empty()) cfg.out_dir = out;
        if (const char* env = std::getenv("CERTIFY_OUT"); env && *env) cfg.out_dir = env;
        return certify::run(s, cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 64;
    }
}
