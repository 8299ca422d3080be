// zenolab - command-line front end for the measurement/decay datasets.
//
//   zenolab <command> [flags] [--config file.json] [--out file.csv]
//
// Flags override values from the JSON config, which override the command's
// preset defaults. Exit codes: 0 ok, 2 invalid config, 3 tolerance failure,
// 4 truncation inadequate.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "zeno/master_equation.hpp"
#include "zeno/model.hpp"
#include "zeno/rk4.hpp"
#include "zeno/sweep.hpp"

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<double> gamma, lambda_band, e_r, e_0, tau, x_min, x_max, current_occupied, current_empty, gamma_d,
        t, t_factor, hop, t_max;
    std::optional<std::size_t> x_steps, n_sites, n_max, t_steps;
    std::vector<double> x, c;
    bool n_resolved = false;
    std::optional<std::string> out;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON config file (keys = long flag names)");
    sub->add_option("--gamma", f.gamma, "decay rate (sets the unit scale)");
    sub->add_option("--lambda-band", f.lambda_band, "Lorentzian half-width");
    sub->add_option("--e-r", f.e_r, "Lorentzian centre");
    sub->add_option("--e-0", f.e_0, "dot level");
    sub->add_option("--tau", f.tau, "measurement interval");
    sub->add_option("--x", f.x, "x = lambda * tau (repeatable)");
    sub->add_option("--c", f.c, "gamma_d = c * lambda / x coefficients (repeatable)");
    sub->add_option("--x-min", f.x_min, "lower end of the logarithmic x grid");
    sub->add_option("--x-max", f.x_max, "upper end of the logarithmic x grid");
    sub->add_option("--x-steps", f.x_steps, "intervals of the x grid");
    sub->add_option("--current-occupied", f.current_occupied, "point-contact current I (dot occupied)");
    sub->add_option("--current-empty", f.current_empty, "point-contact current I' (dot empty)");
    sub->add_option("--gamma-d", f.gamma_d, "dephasing rate (overrides the currents)");
    sub->add_option("--t", f.t, "counting time");
    sub->add_option("--t-factor", f.t_factor, "counting time in units of 1/gamma_d when --t is absent");
    sub->add_option("--n-sites", f.n_sites, "chain length");
    sub->add_option("--hop", f.hop, "chain hopping");
    sub->add_flag("--n-resolved", f.n_resolved, "integrate the n-resolved ladder");
    sub->add_option("--n-max", f.n_max, "ladder truncation");
    sub->add_option("--t-max", f.t_max, "end of the output time grid");
    sub->add_option("--t-steps", f.t_steps, "intervals of the output time grid");
    sub->add_option("--out", f.out, "output CSV path (stdout when absent)");
}

template <class T>
void overlay(const std::optional<T>& v, T& dst) {
    if (v) dst = *v;
}

template <class T>
void overlay(const std::optional<T>& v, std::optional<T>& dst) {
    if (v) dst = v;
}

zeno::RunConfig resolve(const std::string& command, const Flags& f) {
    auto cfg = zeno::preset(command);
    if (f.config) {
        std::ifstream in(*f.config);
        if (!in) throw zeno::ConfigError("cannot open config file " + *f.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw zeno::ConfigError(std::string("malformed config file: ") + e.what());
        }
        zeno::apply_json(j, cfg);
        cfg.command = command;
    }
    overlay(f.gamma, cfg.gamma);
    overlay(f.lambda_band, cfg.lambda_band);
    overlay(f.e_r, cfg.e_r);
    overlay(f.e_0, cfg.e_0);
    overlay(f.tau, cfg.tau);
    if (!f.x.empty()) cfg.x_values = f.x;
    if (!f.c.empty()) cfg.c_values = f.c;
    overlay(f.x_min, cfg.x_min);
    overlay(f.x_max, cfg.x_max);
    overlay(f.x_steps, cfg.x_steps);
    overlay(f.current_occupied, cfg.current_occupied);
    overlay(f.current_empty, cfg.current_empty);
    overlay(f.gamma_d, cfg.gamma_d);
    overlay(f.t, cfg.t);
    overlay(f.t_factor, cfg.t_factor);
    overlay(f.n_sites, cfg.n_sites);
    overlay(f.hop, cfg.hop);
    if (f.n_resolved) cfg.n_resolved = true;
    overlay(f.n_max, cfg.n_max);
    overlay(f.t_max, cfg.t_max);
    overlay(f.t_steps, cfg.t_steps);
    overlay(f.out, cfg.output_path);
    // A tau given on the command line wins over x values from the preset.
    if (f.tau && f.x.empty()) cfg.x_values.clear();
    return cfg;
}

int emit(const zeno::RunConfig& cfg, const zeno::RunResult& result) {
    if (cfg.output_path.empty()) {
        result.table.write(std::cout);
        if (result.blocks) {
            std::cout << '\n';
            result.blocks->write(std::cout);
        }
    } else {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) throw zeno::ConfigError("cannot write " + cfg.output_path);
        result.table.write(out);
        if (result.blocks) {
            std::ofstream blocks(cfg.output_path + ".blocks.csv", std::ios::binary);
            if (!blocks) throw zeno::ConfigError("cannot write " + cfg.output_path + ".blocks.csv");
            result.blocks->write(blocks);
        }
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    return static_cast<int>(result.status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decay into a finite-bandwidth reservoir under repeated measurement or point-contact monitoring"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("zenolab ") + zeno::version());

    std::map<std::string, Flags> flags;
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : zeno::command_names()) {
        auto* sub = app.add_subcommand(name, zeno::schema_help(name));
        sub->footer(zeno::schema_help(name));
        add_flags(sub, flags[name]);
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(zeno::ExitCode::InvalidConfig);
    }

    for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        try {
            const auto cfg = resolve(name, flags[name]);
            return emit(cfg, zeno::run(cfg));
        } catch (const std::invalid_argument& e) {
            std::cerr << "invalid config: " << e.what() << '\n';
            return static_cast<int>(zeno::ExitCode::InvalidConfig);
        } catch (const std::domain_error& e) {
            std::cerr << "invalid config: " << e.what() << '\n';
            return static_cast<int>(zeno::ExitCode::InvalidConfig);
        } catch (const zeno::StepUnderflow& e) {
            std::cerr << "numerical failure: " << e.what() << '\n';
            return static_cast<int>(zeno::ExitCode::ToleranceFailure);
        }
    }
    return static_cast<int>(zeno::ExitCode::InvalidConfig);
}
