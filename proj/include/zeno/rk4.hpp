// rk4.hpp - deterministic fixed-step integration onto an output grid
//
// Classical 4th-order Runge-Kutta with a uniform substep inside each grid
// interval. The substep starts from a caller-supplied estimate and is halved
// until two successive refinements agree to within tolerance * t_end.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace zeno {

class StepUnderflow : public std::runtime_error {
public:
    StepUnderflow(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

struct StepControl {
    double initial_step = 1e-3;
    double tolerance_per_unit_time = 1e-10;
    double min_step = 1e-9;
};

struct GridSolution {
    std::vector<Eigen::VectorXcd> samples;  // one per grid point
    double step = 0.0;                      // largest substep used in the accepted run
    int refinements = 0;
};

/// Right-hand side of an autonomous system dy/dt = f(y).
using Derivative = std::function<void(const Eigen::VectorXcd& y, Eigen::VectorXcd& dydt)>;

namespace detail {

inline std::vector<Eigen::VectorXcd> rk4_on_grid(const Derivative& f, const Eigen::VectorXcd& y0,
                                                 std::span<const double> grid, double h) {
    std::vector<Eigen::VectorXcd> out;
    out.reserve(grid.size());
    Eigen::VectorXcd y = y0;
    Eigen::VectorXcd k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
    out.push_back(y);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double span = grid[i] - grid[i - 1];
        const auto substeps = std::max<long>(1, static_cast<long>(std::ceil(span / h - 1e-9)));
        const double dt = span / static_cast<double>(substeps);
        for (long s = 0; s < substeps; ++s) {
            f(y, k1);
            tmp = y + (dt / 2.0) * k1;
            f(tmp, k2);
            tmp = y + (dt / 2.0) * k2;
            f(tmp, k3);
            tmp = y + dt * k3;
            f(tmp, k4);
            y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        out.push_back(y);
    }
    return out;
}

inline double max_deviation(const std::vector<Eigen::VectorXcd>& a, const std::vector<Eigen::VectorXcd>& b,
                            std::size_t& where) {
    double worst = 0.0;
    where = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = (a[i] - b[i]).cwiseAbs().maxCoeff();
        if (d > worst) {
            worst = d;
            where = i;
        }
    }
    return worst;
}

}  // namespace detail

/// Validates an output grid: non-empty, starts at 0, strictly ascending.
inline void check_time_grid(std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("time grid is empty");
    if (grid.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]) || !std::isfinite(grid[i])) {
            throw std::invalid_argument("time grid must be finite and strictly ascending");
        }
    }
}

inline GridSolution integrate_on_grid(const Derivative& f, const Eigen::VectorXcd& y0, std::span<const double> grid,
                                      const StepControl& control) {
    check_time_grid(grid);
    GridSolution sol;
    if (grid.size() == 1) {
        sol.samples.push_back(y0);
        sol.step = control.initial_step;
        return sol;
    }
    const double t_end = grid.back();
    double h = control.initial_step;
    auto coarse = detail::rk4_on_grid(f, y0, grid, h);
    for (;;) {
        const double finer = h / 2.0;
        if (finer < control.min_step) {
            std::size_t where = 0;
            detail::max_deviation(coarse, detail::rk4_on_grid(f, y0, grid, finer), where);
            std::ostringstream os;
            os << "step size underflow (h = " << finer << ") near t = " << grid[where];
            throw StepUnderflow(os.str(), grid[where]);
        }
        auto fine = detail::rk4_on_grid(f, y0, grid, finer);
        std::size_t where = 0;
        const double change = detail::max_deviation(coarse, fine, where);
        h = finer;
        ++sol.refinements;
        coarse = std::move(fine);
        if (change < control.tolerance_per_unit_time * t_end) break;
    }
    sol.samples = std::move(coarse);
    sol.step = h;
    return sol;
}

/// Smallest spacing of an ascending grid (infinity for a single point).
inline double min_spacing(std::span<const double> grid) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < grid.size(); ++i) best = std::min(best, grid[i] - grid[i - 1]);
    return best;
}

/// Uniform grid 0, t_max / steps, ..., t_max.
inline std::vector<double> uniform_grid(double t_max, std::size_t steps) {
    if (!(t_max > 0.0) || steps == 0) throw std::invalid_argument("grid needs t_max > 0 and steps > 0");
    std::vector<double> g(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) g[i] = t_max * static_cast<double>(i) / static_cast<double>(steps);
    return g;
}

}  // namespace zeno
