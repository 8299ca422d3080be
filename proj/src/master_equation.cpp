#include "zeno/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zeno {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPositivityTolerance = 1e-8;
constexpr double kMonotoneSlack = 1e-10;
constexpr double kTruncationWeight = 1e-10;

double base_step(double rate_sum, std::span<const double> grid) {
    return std::min(1.0 / rate_sum, min_spacing(grid)) / 20.0;
}

StepControl control_for(double rate_sum, std::span<const double> grid) {
    StepControl c;
    c.initial_step = base_step(rate_sum, grid);
    c.min_step = c.initial_step * 1e-6;
    return c;
}

// Reduced equations on y = (s00, sRR, s0R); s00, sRR are stored as complex
// numbers whose imaginary parts stay zero.
void reduced_rhs(double omega, double eps, double lambda, double gd, const Eigen::VectorXcd& y,
                 Eigen::VectorXcd& dy) {
    const cplx s0r = y[2];
    const cplx flow = kI * omega * (s0r - std::conj(s0r));
    dy[0] = flow;
    dy[1] = -flow - 2.0 * lambda * y[1];
    dy[2] = kI * eps * s0r + kI * omega * (y[0] - y[1]) - (gd / 2.0 + lambda) * s0r;
}

void ladder_rhs(double omega, double eps, double lambda, double i_occ, double i_emp, const Eigen::VectorXcd& y,
                Eigen::VectorXcd& dy) {
    const auto blocks = y.size() / 3;
    const double coherent_damping = (i_occ + i_emp) / 2.0 + lambda;
    const double feed = std::sqrt(i_occ * i_emp);
    for (Eigen::Index n = 0; n < blocks; ++n) {
        const Eigen::Index k = 3 * n;
        const cplx s00 = y[k];
        const cplx srr = y[k + 1];
        const cplx s0r = y[k + 2];
        const cplx prev00 = n > 0 ? y[k - 3] : cplx{};
        const cplx prevrr = n > 0 ? y[k - 2] : cplx{};
        const cplx prev0r = n > 0 ? y[k - 1] : cplx{};
        const cplx flow = kI * omega * (s0r - std::conj(s0r));
        dy[k] = -i_occ * s00 + i_occ * prev00 + flow;
        dy[k + 1] = -(i_emp + 2.0 * lambda) * srr + i_emp * prevrr - flow;
        dy[k + 2] = kI * eps * s0r + kI * omega * (s00 - srr) - coherent_damping * s0r + feed * prev0r;
    }
}

ReducedState to_reduced(const Eigen::VectorXcd& y) { return {y[0].real(), y[1].real(), y[2]}; }

NResolvedState to_ladder(const Eigen::VectorXcd& y) {
    NResolvedState s;
    s.blocks.resize(static_cast<std::size_t>(y.size() / 3));
    for (std::size_t n = 0; n < s.blocks.size(); ++n) {
        const auto k = static_cast<Eigen::Index>(3 * n);
        s.blocks[n] = {y[k].real(), y[k + 1].real(), y[k + 2]};
    }
    return s;
}

Eigen::VectorXcd from_ladder(const NResolvedState& s) {
    Eigen::VectorXcd y(static_cast<Eigen::Index>(3 * s.blocks.size()));
    for (std::size_t n = 0; n < s.blocks.size(); ++n) {
        const auto k = static_cast<Eigen::Index>(3 * n);
        y[k] = s.blocks[n].sigma00;
        y[k + 1] = s.blocks[n].sigmaRR;
        y[k + 2] = s.blocks[n].sigma0R;
    }
    return y;
}

// Positivity and non-increasing population along a reduced trajectory.
template <class Series>
void check_reduced_invariants(Series& series, const std::vector<ReducedState>& reduced) {
    double last_population = reduced.empty() ? 1.0 : reduced.front().population();
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        const auto& r = reduced[i];
        if (r.min_eigenvalue() < -kPositivityTolerance) {
            std::ostringstream os;
            os << "positivity violated at t = " << series.times[i] << " (min eigenvalue " << r.min_eigenvalue() << ")";
            series.warnings.push_back(os.str());
            series.invariant_breach = true;
            break;
        }
        if (r.population() > last_population + kMonotoneSlack) {
            std::ostringstream os;
            os << "population increased at t = " << series.times[i];
            series.warnings.push_back(os.str());
            series.invariant_breach = true;
            break;
        }
        last_population = r.population();
    }
}

}  // namespace

double ReducedState::min_eigenvalue() const noexcept {
    const double mean = (sigma00 + sigmaRR) / 2.0;
    const double half_gap = (sigma00 - sigmaRR) / 2.0;
    return mean - std::sqrt(half_gap * half_gap + std::norm(sigma0R));
}

ReducedState NResolvedState::traced() const {
    ReducedState r{0.0, 0.0, {}};
    for (const auto& b : blocks) {
        r.sigma00 += b.sigma00;
        r.sigmaRR += b.sigmaRR;
        r.sigma0R += b.sigma0R;
    }
    return r;
}

double NResolvedState::tail_weight() const {
    if (blocks.empty()) return 0.0;
    return std::abs(blocks.back().sigma00) + std::abs(blocks.back().sigmaRR);
}

double NResolvedState::mean_count() const {
    double m = 0.0;
    for (std::size_t n = 0; n < blocks.size(); ++n) {
        m += static_cast<double>(n) * (blocks[n].sigma00 + blocks[n].sigmaRR);
    }
    return m;
}

double gamma_d(const DetectorParams& det) {
    const double d = std::sqrt(det.current_occupied()) - std::sqrt(det.current_empty());
    return d * d;
}

double alpha_prime(double lambda_band, double gamma_d) {
    if (gamma_d == 0.0) return 1.0;
    if (std::isinf(gamma_d)) return 0.0;
    // (2L/gd) / (1 + 2L/gd) == 2L / (gd + 2L), finite for every gd >= 0.
    return 2.0 * lambda_band / (gamma_d + 2.0 * lambda_band);
}

double wide_band_survival(double gamma, double lambda_band, double gamma_d, double t) {
    return std::exp(-alpha_prime(lambda_band, gamma_d) * gamma * t);
}

ReducedState reduced_derivative(const ModelParams& params, double gamma_d, const ReducedState& state) {
    Eigen::VectorXcd y(3), dy(3);
    y << state.sigma00, state.sigmaRR, state.sigma0R;
    reduced_rhs(params.omega_bar(), params.detuning(), params.lambda_band(), gamma_d, y, dy);
    return to_reduced(dy);
}

ReducedSeries integrate_reduced(const ModelParams& params, double gd, std::span<const double> t_grid) {
    check_time_grid(t_grid);
    if (!(gd >= 0.0) || !std::isfinite(gd)) throw ConfigError("gamma_d must be finite and non-negative");
    const double omega = params.omega_bar();
    const double eps = params.detuning();
    const double lambda = params.lambda_band();
    const Derivative f = [=](const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        reduced_rhs(omega, eps, lambda, gd, y, dy);
    };
    Eigen::VectorXcd y0(3);
    y0 << 1.0, 0.0, 0.0;
    const double rates = 2.0 * lambda + gd + std::abs(eps) + omega;
    const auto sol = integrate_on_grid(f, y0, t_grid, control_for(rates, t_grid));

    ReducedSeries series;
    series.times.assign(t_grid.begin(), t_grid.end());
    series.step = sol.step;
    series.states.reserve(sol.samples.size());
    for (const auto& s : sol.samples) series.states.push_back(to_reduced(s));
    check_reduced_invariants(series, series.states);
    return series;
}

std::size_t default_n_max(const DetectorParams& det, double t_end) {
    const double mean = std::max(det.current_occupied(), det.current_empty()) * std::max(t_end, 0.0);
    return static_cast<std::size_t>(std::ceil(mean + 12.0 * std::sqrt(mean) + 20.0));
}

NResolvedState n_resolved_derivative(const ModelParams& params, const DetectorParams& det,
                                     const NResolvedState& state) {
    const Eigen::VectorXcd y = from_ladder(state);
    Eigen::VectorXcd dy(y.size());
    ladder_rhs(params.omega_bar(), params.detuning(), params.lambda_band(), det.current_occupied(),
               det.current_empty(), y, dy);
    return to_ladder(dy);
}

NResolvedSeries integrate_n_resolved(const ModelParams& params, const DetectorParams& det, std::size_t n_max,
                                     std::span<const double> t_grid) {
    check_time_grid(t_grid);
    const double omega = params.omega_bar();
    const double eps = params.detuning();
    const double lambda = params.lambda_band();
    const double i_occ = det.current_occupied();
    const double i_emp = det.current_empty();
    const Derivative f = [=](const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        ladder_rhs(omega, eps, lambda, i_occ, i_emp, y, dy);
    };
    Eigen::VectorXcd y0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(3 * (n_max + 1)));
    y0[0] = 1.0;
    const double rates = 2.0 * lambda + gamma_d(det) + i_occ + i_emp + std::abs(eps) + omega;
    const auto sol = integrate_on_grid(f, y0, t_grid, control_for(rates, t_grid));

    NResolvedSeries series;
    series.times.assign(t_grid.begin(), t_grid.end());
    series.step = sol.step;
    series.suggested_n_max = std::max(n_max, default_n_max(det, t_grid.back()));
    series.states.reserve(sol.samples.size());
    std::vector<ReducedState> traced;
    traced.reserve(sol.samples.size());
    for (const auto& s : sol.samples) {
        series.states.push_back(to_ladder(s));
        traced.push_back(series.states.back().traced());
    }
    for (std::size_t i = 0; i < series.states.size(); ++i) {
        if (series.states[i].tail_weight() > kTruncationWeight) {
            std::ostringstream os;
            series.suggested_n_max = std::max(series.suggested_n_max, 2 * n_max);
            os << "truncation inadequate: weight " << series.states[i].tail_weight() << " in block n_max = " << n_max
               << " at t = " << series.times[i] << "; try n_max >= " << series.suggested_n_max;
            series.warnings.push_back(os.str());
            series.truncation_inadequate = true;
            break;
        }
    }
    check_reduced_invariants(series, traced);
    return series;
}

}  // namespace zeno
