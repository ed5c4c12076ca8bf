#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "amfield/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Angular-momentum conservation checks for EM and Dirac "
                 "field configurations"};
    app.require_subcommand(0, 1);

    bool list_scenarios = false;
    app.add_flag("--list-scenarios", list_scenarios,
                 "List bundled scenario names and exit");

    std::string config_arg, out_dir, derivatives;
    int fd_order = 0;
    double tolerance = 0.0;
    CLI::App* run = app.add_subcommand("run", "Run a scenario config");
    run->add_option("config", config_arg,
                    "Config file path or bundled scenario name")
        ->required();
    run->add_option("--out", out_dir, "Output directory for CSV/JSON");
    run->add_option("--fd-order", fd_order, "FD stencil order override")
        ->check(CLI::IsMember({2, 4}));
    run->add_option("--derivatives", derivatives,
                    "Derivative mode override")
        ->check(CLI::IsMember({"analytic", "fd"}));
    run->add_option("--tolerance", tolerance,
                    "Relative residual tolerance override");

    CLI11_PARSE(app, argc, argv);

    if (list_scenarios) {
        for (const auto& name : amfield::bundled_scenario_names())
            std::cout << name << "\n";
        return 0;
    }
    if (!run->parsed()) {
        std::cout << app.help();
        return 0;
    }

    try {
        amfield::ScenarioConfig config;
        const auto bundled = amfield::bundled_scenario_names();
        if (std::find(bundled.begin(), bundled.end(), config_arg) !=
            bundled.end())
            config = amfield::bundled_scenario(config_arg);
        else
            config = amfield::load_config(config_arg);

        amfield::RunOptions opts;
        opts.out_dir = out_dir;
        opts.derivatives = derivatives;
        opts.fd_order = fd_order;
        opts.tolerance = tolerance;
        if (!out_dir.empty())
            std::filesystem::create_directories(out_dir);

        const amfield::RunResult result =
            amfield::run_scenario(config, opts);
        for (const auto& line : result.summary_lines)
            std::cout << line << "\n";
        return result.all_pass ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
