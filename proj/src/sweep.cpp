#include "zeno/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <sstream>

#include "zeno/chain.hpp"
#include "zeno/counting.hpp"
#include "zeno/lorentzian.hpp"
#include "zeno/master_equation.hpp"
#include "zeno/model.hpp"
#include "zeno/rk4.hpp"
#include "zeno/trajectory.hpp"

namespace zeno {

namespace {

constexpr double kNormTolerance = 1e-10;

// Evaluates fn(i) for i in [0, n) concurrently; results come back in index order.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) {
    using R = decltype(fn(std::size_t{}));
    std::vector<std::future<R>> futures;
    futures.reserve(n);
    for (std::size_t i = 0; i < n; ++i) futures.push_back(std::async(std::launch::async, fn, i));
    std::vector<R> out;
    out.reserve(n);
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
    return s;
}

std::string label(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

ModelParams model_of(const RunConfig& cfg) { return ModelParams(cfg.gamma, cfg.lambda_band, cfg.e_r, cfg.e_0); }

void stamp_model(CsvTable& t, const RunConfig& cfg) {
    t.add_metadata("command", cfg.command);
    t.add_metadata("gamma", cfg.gamma);
    t.add_metadata("lambda_band", cfg.lambda_band);
    t.add_metadata("e_r", cfg.e_r);
    t.add_metadata("e_0", cfg.e_0);
    t.add_metadata("t_max", cfg.t_max);
    t.add_metadata("t_steps", static_cast<double>(cfg.t_steps));
}

std::vector<double> log_grid(double lo, double hi, std::size_t steps) {
    std::vector<double> g(steps + 1);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i <= steps; ++i) {
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(steps));
    }
    g.back() = hi;
    return g;
}

double resolved_gamma_d(const RunConfig& cfg) {
    if (cfg.gamma_d) return *cfg.gamma_d;
    return gamma_d(DetectorParams(cfg.current_occupied, cfg.current_empty));
}

// Rows of the discrete-vs-continuous comparison at one value of x.
std::vector<std::vector<double>> trajectory_rows(const ModelParams& params, double tau, std::span<const double> grid,
                                                 bool with_x) {
    const auto sp = step_probabilities(params, tau);
    const double x = params.lambda_band() * tau;
    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (double t : grid) {
        const auto m = snap_to_intervals(t, tau);
        const double t_snapped = static_cast<double>(m) * tau;
        const auto occ = survival_matrix_power(sp, m);
        const double discrete = survival_closed_form(sp, m);
        const double continuous = continuous_survival(params.gamma(), x, t);
        if (with_x) {
            rows.push_back({x, t, t_snapped, static_cast<double>(m), continuous, discrete,
                            std::exp(-params.gamma() * t)});
        } else {
            rows.push_back({t, t_snapped, static_cast<double>(m), discrete, occ.p_fict, continuous});
        }
    }
    return rows;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"decay",   "trajectory", "alpha-compare", "master", "counting",
                                                "chain-compare", "fig4", "fig6",          "fig7",   "fig8"};
    return names;
}

RunConfig preset(const std::string& command) {
    RunConfig cfg;
    cfg.command = command;
    if (command == "fig4") {
        cfg.lambda_band = 5.0;
        cfg.e_r = 2.0;
        cfg.x_values = {0.1, 1.0, 10.0};
        cfg.t_max = 5.0;
        cfg.t_steps = 100;
    } else if (command == "fig6" || command == "alpha-compare") {
        cfg.c_values = {1.0, 2.0, 4.0};
    } else if (command == "fig7" || command == "counting") {
        cfg.current_occupied = 3.0;
        cfg.current_empty = 6.0;
        cfg.t_factor = 2.0;
    } else if (command == "fig8" || command == "chain-compare") {
        cfg.n_sites = 250;
        cfg.hop = 3.0;
        cfg.e_0 = 1.0;
        cfg.t_max = 8.0;
        cfg.t_steps = 400;
    } else if (command == "trajectory") {
        cfg.x_values = {1.0};
    }
    return cfg;
}

void apply_json(const nlohmann::json& j, RunConfig& cfg) {
    require(j.is_object(), "config file must hold a JSON object");
    for (const auto& [raw_key, value] : j.items()) {
        std::string key = raw_key;
        std::replace(key.begin(), key.end(), '-', '_');
        try {
            if (key == "command") cfg.command = value.get<std::string>();
            else if (key == "gamma") cfg.gamma = value.get<double>();
            else if (key == "lambda_band") cfg.lambda_band = value.get<double>();
            else if (key == "e_r") cfg.e_r = value.get<double>();
            else if (key == "e_0") cfg.e_0 = value.get<double>();
            else if (key == "tau") cfg.tau = value.get<double>();
            else if (key == "x") cfg.x_values = value.is_array() ? value.get<std::vector<double>>()
                                                                  : std::vector<double>{value.get<double>()};
            else if (key == "c") cfg.c_values = value.is_array() ? value.get<std::vector<double>>()
                                                                  : std::vector<double>{value.get<double>()};
            else if (key == "x_min") cfg.x_min = value.get<double>();
            else if (key == "x_max") cfg.x_max = value.get<double>();
            else if (key == "x_steps") cfg.x_steps = value.get<std::size_t>();
            else if (key == "current_occupied") cfg.current_occupied = value.get<double>();
            else if (key == "current_empty") cfg.current_empty = value.get<double>();
            else if (key == "gamma_d") cfg.gamma_d = value.get<double>();
            else if (key == "t") cfg.t = value.get<double>();
            else if (key == "t_factor") cfg.t_factor = value.get<double>();
            else if (key == "n_sites") cfg.n_sites = value.get<std::size_t>();
            else if (key == "hop") cfg.hop = value.get<double>();
            else if (key == "n_resolved") cfg.n_resolved = value.get<bool>();
            else if (key == "n_max") cfg.n_max = value.get<std::size_t>();
            else if (key == "t_max") cfg.t_max = value.get<double>();
            else if (key == "t_steps") cfg.t_steps = value.get<std::size_t>();
            else if (key == "out") cfg.output_path = value.get<std::string>();
            else throw ConfigError("unknown config key: " + raw_key);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("bad value for config key " + raw_key + ": " + e.what());
        }
    }
}

void validate(const RunConfig& cfg) {
    const auto& names = command_names();
    require(std::find(names.begin(), names.end(), cfg.command) != names.end(), "unknown command: " + cfg.command);
    model_of(cfg);
    require(std::isfinite(cfg.t_max) && cfg.t_max > 0.0, "t_max must be positive");
    require(cfg.t_steps > 0, "t_steps must be positive");
    if (cfg.tau) require(std::isfinite(*cfg.tau) && *cfg.tau > 0.0, "tau must be positive");
    for (double x : cfg.x_values) require(std::isfinite(x) && x > 0.0, "x values must be positive");
    for (double c : cfg.c_values) require(std::isfinite(c) && c > 0.0, "c values must be positive");
    require(cfg.x_min > 0.0 && cfg.x_max > cfg.x_min, "need 0 < x_min < x_max");
    require(cfg.x_steps > 0, "x_steps must be positive");
    DetectorParams(cfg.current_occupied, cfg.current_empty);
    if (cfg.gamma_d) require(std::isfinite(*cfg.gamma_d) && *cfg.gamma_d >= 0.0, "gamma_d must be non-negative");
    if (cfg.t) require(std::isfinite(*cfg.t) && *cfg.t > 0.0, "t must be positive");
    require(std::isfinite(cfg.t_factor) && cfg.t_factor > 0.0, "t_factor must be positive");
    require(cfg.n_sites > 0, "n_sites must be positive");
    require(std::isfinite(cfg.hop) && cfg.hop > 0.0, "hop must be positive");

    const std::string& c = cfg.command;
    if (c == "fig4" || c == "trajectory") {
        require(!cfg.x_values.empty() || cfg.tau.has_value(), c + " needs --x or --tau");
    }
    if (c == "fig6" || c == "alpha-compare") require(!cfg.c_values.empty(), c + " needs at least one --c");
    if (c == "fig7" || (c == "counting" && !cfg.t)) {
        require(cfg.current_occupied != cfg.current_empty,
                "equal currents give no finite discrimination time (I == I')");
    }
}

RunResult run_decay(const RunConfig& cfg) {
    validate(cfg);
    const auto params = model_of(cfg);
    const auto grid = uniform_grid(cfg.t_max, cfg.t_steps);
    RunResult r;
    stamp_model(r.table, cfg);
    r.table.columns = {"t", "re_b0", "im_b0", "p0_lorentzian", "p0_markovian"};
    for (double t : grid) {
        const cplx b0 = shifted_propagator(params, t).b00;
        r.table.add_row({t, b0.real(), b0.imag(), std::norm(b0), std::norm(markovian_survival(cfg.gamma, cfg.e_0, t))});
    }
    return r;
}

RunResult run_trajectory(const RunConfig& cfg) {
    validate(cfg);
    const auto params = model_of(cfg);
    const double tau = cfg.tau ? *cfg.tau : cfg.x_values.front() / cfg.lambda_band;
    const auto grid = uniform_grid(cfg.t_max, cfg.t_steps);
    RunResult r;
    stamp_model(r.table, cfg);
    r.table.add_metadata("tau", tau);
    r.table.add_metadata("x", cfg.lambda_band * tau);
    const auto sp = step_probabilities(params, tau);
    r.table.add_metadata("p0", sp.p0);
    r.table.add_metadata("p1", sp.p1);
    r.table.add_metadata("p2", sp.p2);
    r.table.add_metadata("kappa", sp.kappa ? format_double(*sp.kappa) : std::string("degenerate"));
    r.table.columns = {"t", "t_snapped", "m", "p_dot", "p_fict", "sigma00_continuous"};
    for (auto& row : trajectory_rows(params, tau, grid, false)) r.table.add_row(std::move(row));
    return r;
}

RunResult run_fig4(const RunConfig& cfg) {
    validate(cfg);
    const auto params = model_of(cfg);
    const auto grid = uniform_grid(cfg.t_max, cfg.t_steps);
    std::vector<double> xs = cfg.x_values;
    if (xs.empty()) xs.push_back(*cfg.tau * cfg.lambda_band);
    RunResult r;
    stamp_model(r.table, cfg);
    r.table.add_metadata("x", join(xs));
    r.table.columns = {"x",          "t", "t_snapped", "m", "sigma00_continuous", "sigma00_discrete",
                       "sigma00_bare"};
    const auto blocks = parallel_map(xs.size(), [&](std::size_t i) {
        return trajectory_rows(params, xs[i] / cfg.lambda_band, grid, true);
    });
    for (const auto& block : blocks) {
        for (const auto& row : block) r.table.add_row(row);
    }
    return r;
}

RunResult run_alpha_compare(const RunConfig& cfg) {
    validate(cfg);
    RunResult r;
    r.table.add_metadata("command", cfg.command);
    r.table.add_metadata("lambda_band", cfg.lambda_band);
    r.table.add_metadata("c", join(cfg.c_values));
    r.table.add_metadata("x_min", cfg.x_min);
    r.table.add_metadata("x_max", cfg.x_max);
    r.table.add_metadata("x_steps", static_cast<double>(cfg.x_steps));
    r.table.add_metadata("gamma_d", "c * lambda_band / x");
    r.table.columns = {"x", "alpha"};
    for (double c : cfg.c_values) r.table.columns.push_back("alpha_prime_c" + label(c));
    const auto xs = cfg.x_values.empty() ? log_grid(cfg.x_min, cfg.x_max, cfg.x_steps) : cfg.x_values;
    for (double x : xs) {
        std::vector<double> row{x, alpha(x)};
        for (double c : cfg.c_values) row.push_back(alpha_prime(cfg.lambda_band, c * cfg.lambda_band / x));
        r.table.add_row(std::move(row));
    }
    return r;
}

RunResult run_fig6(const RunConfig& cfg) { return run_alpha_compare(cfg); }

RunResult run_master(const RunConfig& cfg) {
    validate(cfg);
    const auto params = model_of(cfg);
    const auto grid = uniform_grid(cfg.t_max, cfg.t_steps);
    RunResult r;
    stamp_model(r.table, cfg);
    r.table.columns = {"t", "sigma00", "sigmaRR", "re_sigma0R", "im_sigma0R"};

    if (!cfg.n_resolved) {
        const double gd = resolved_gamma_d(cfg);
        r.table.add_metadata("gamma_d", gd);
        const auto series = integrate_reduced(params, gd, grid);
        r.table.add_metadata("step", series.step);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& s = series.states[i];
            r.table.add_row({grid[i], s.sigma00, s.sigmaRR, s.sigma0R.real(), s.sigma0R.imag()});
        }
        r.warnings = series.warnings;
        if (series.invariant_breach) r.status = ExitCode::ToleranceFailure;
        return r;
    }

    require(!cfg.gamma_d.has_value(), "the n-resolved ladder needs detector currents, not --gamma-d");
    const DetectorParams det(cfg.current_occupied, cfg.current_empty);
    const std::size_t n_max = cfg.n_max.value_or(default_n_max(det, cfg.t_max));
    r.table.add_metadata("current_occupied", cfg.current_occupied);
    r.table.add_metadata("current_empty", cfg.current_empty);
    r.table.add_metadata("gamma_d", gamma_d(det));
    r.table.add_metadata("n_max", static_cast<double>(n_max));
    const auto series = integrate_n_resolved(params, det, n_max, grid);
    r.table.add_metadata("step", series.step);
    CsvTable blocks;
    blocks.metadata = r.table.metadata;
    blocks.columns = {"t", "n", "sigma00_n", "sigmaRR_n", "re_sigma0R_n", "im_sigma0R_n"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto traced = series.states[i].traced();
        r.table.add_row({grid[i], traced.sigma00, traced.sigmaRR, traced.sigma0R.real(), traced.sigma0R.imag()});
        const auto& st = series.states[i];
        for (std::size_t n = 0; n < st.blocks.size(); ++n) {
            const auto& b = st.blocks[n];
            blocks.add_row({grid[i], static_cast<double>(n), b.sigma00, b.sigmaRR, b.sigma0R.real(), b.sigma0R.imag()});
        }
    }
    r.blocks = std::move(blocks);
    r.warnings = series.warnings;
    if (series.invariant_breach) r.status = ExitCode::ToleranceFailure;
    if (series.truncation_inadequate) r.status = ExitCode::TruncationInadequate;
    return r;
}

RunResult run_counting(const RunConfig& cfg) {
    validate(cfg);
    const DetectorParams det(cfg.current_occupied, cfg.current_empty);
    const auto t_min = min_discrimination_time(det, Discrimination::Width);
    const auto t_min_snr = min_discrimination_time(det, Discrimination::SignalToNoise);
    const double t = cfg.t ? *cfg.t : cfg.t_factor / gamma_d(det);

    RunResult r;
    r.table.add_metadata("command", cfg.command);
    r.table.add_metadata("current_occupied", cfg.current_occupied);
    r.table.add_metadata("current_empty", cfg.current_empty);
    r.table.add_metadata("gamma_d", gamma_d(det));
    r.table.add_metadata("t_min", t_min ? format_double(*t_min) : std::string("none"));
    r.table.add_metadata("t_min_signal_to_noise", t_min_snr ? format_double(*t_min_snr) : std::string("none"));
    r.table.add_metadata("t", t);
    r.table.add_metadata("separation_metric", separation_metric(det, t));

    const auto occupied = count_distribution(det.current_occupied(), t);
    const auto empty = count_distribution(det.current_empty(), t);
    r.table.columns = {"n", "Pn_occupied", "Pn_empty", "gaussian_occupied", "gaussian_empty"};
    const std::size_t n_end = std::max(occupied.pmf.size(), empty.pmf.size());
    auto gauss = [t](double current, double n) { return current * t > 0.0 ? gaussian_approx_pn(current, t, n) : 0.0; };
    for (std::size_t n = 0; n < n_end; ++n) {
        const auto k = static_cast<double>(n);
        r.table.add_row({k, poisson_pn(det.current_occupied(), t, n), poisson_pn(det.current_empty(), t, n),
                         gauss(det.current_occupied(), k), gauss(det.current_empty(), k)});
    }
    return r;
}

RunResult run_fig7(const RunConfig& cfg) { return run_counting(cfg); }

RunResult run_chain_compare(const RunConfig& cfg) {
    validate(cfg);
    const auto model = ChainModel::for_decay_rate(cfg.n_sites, cfg.hop, cfg.gamma, cfg.e_0);
    const ModelParams lorentz(cfg.gamma, bandwidth_map(cfg.hop), 0.0, cfg.e_0);
    const auto grid = uniform_grid(cfg.t_max, cfg.t_steps);
    const auto evo = evolve_chain(model, grid);

    RunResult r;
    r.table.add_metadata("command", cfg.command);
    r.table.add_metadata("gamma", cfg.gamma);
    r.table.add_metadata("n_sites", static_cast<double>(cfg.n_sites));
    r.table.add_metadata("hop", cfg.hop);
    r.table.add_metadata("dot_coupling", model.dot_coupling());
    r.table.add_metadata("e_0", cfg.e_0);
    r.table.add_metadata("lambda_band", lorentz.lambda_band());
    r.table.add_metadata("recurrence_time", model.recurrence_time());
    r.table.add_metadata("t_max", cfg.t_max);
    r.table.add_metadata("t_steps", static_cast<double>(cfg.t_steps));
    r.table.add_metadata("max_norm_drift", evo.max_norm_drift);
    r.table.columns = {"t", "p0_chain", "p0_lorentzian", "past_recurrence"};
    double sup = 0.0;
    for (const auto& s : evo.samples) {
        const double lor = lorentzian_survival_probability(lorentz, s.t);
        if (!s.past_recurrence) sup = std::max(sup, std::abs(s.p0 - lor));
        r.table.add_row({s.t, s.p0, lor, s.past_recurrence ? 1.0 : 0.0});
    }
    r.table.add_metadata("sup_abs_diff_before_recurrence", sup);
    if (evo.max_norm_drift > kNormTolerance) {
        r.warnings.push_back("chain norm drift " + format_double(evo.max_norm_drift) + " exceeds 1e-10");
        r.status = ExitCode::ToleranceFailure;
    }
    return r;
}

RunResult run_fig8(const RunConfig& cfg) { return run_chain_compare(cfg); }

RunResult run(const RunConfig& cfg) {
    static const std::map<std::string, RunResult (*)(const RunConfig&)> dispatch{
        {"decay", run_decay},       {"trajectory", run_trajectory}, {"alpha-compare", run_alpha_compare},
        {"master", run_master},     {"counting", run_counting},     {"chain-compare", run_chain_compare},
        {"fig4", run_fig4},         {"fig6", run_fig6},             {"fig7", run_fig7},
        {"fig8", run_fig8},
    };
    const auto it = dispatch.find(cfg.command);
    if (it == dispatch.end()) throw ConfigError("unknown command: " + cfg.command);
    return it->second(cfg);
}

std::string schema_help(const std::string& command) {
    if (command == "decay") return "columns: t, re_b0, im_b0, p0_lorentzian, p0_markovian";
    if (command == "trajectory") return "columns: t, t_snapped, m, p_dot, p_fict, sigma00_continuous";
    if (command == "fig4") {
        return "columns: x, t, t_snapped, m, sigma00_continuous, sigma00_discrete, sigma00_bare";
    }
    if (command == "alpha-compare" || command == "fig6") return "columns: x, alpha, alpha_prime_c<c> per --c";
    if (command == "master") {
        return "columns: t, sigma00, sigmaRR, re_sigma0R, im_sigma0R; with --n-resolved, per-n blocks go to "
               "<out>.blocks.csv (t, n, sigma00_n, sigmaRR_n, re_sigma0R_n, im_sigma0R_n)";
    }
    if (command == "counting" || command == "fig7") {
        return "columns: n, Pn_occupied, Pn_empty, gaussian_occupied, gaussian_empty; header carries t_min";
    }
    if (command == "chain-compare" || command == "fig8") return "columns: t, p0_chain, p0_lorentzian, past_recurrence";
    return {};
}

}  // namespace zeno
