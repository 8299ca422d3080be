#include "zeno/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zeno {

namespace {

constexpr double kDegeneracyThreshold = 1e-12;
constexpr double kAlphaSeriesBound = 1e-4;

// Symmetric 2x2 [[a, b], [b, c]]. Powers of a symmetric matrix stay
// symmetric, so three entries suffice.
struct Sym2 {
    long double a, b, c;

    Sym2 operator*(const Sym2& o) const {
        return {a * o.a + b * o.b, a * o.b + b * o.c, b * o.b + c * o.c};
    }
};

}  // namespace

StepProbabilities step_probabilities(const MeasurementPropagator& prop) {
    StepProbabilities sp;
    sp.p0 = std::norm(prop.b00);
    sp.p1 = std::norm(prop.bR0);
    sp.p2 = std::norm(prop.bRR);
    const double gap = sp.p0 - sp.p2;
    if (std::abs(gap) >= kDegeneracyThreshold * std::max(sp.p0, sp.p2) && gap != 0.0) {
        const double ratio = 2.0 * sp.p1 / gap;
        sp.kappa = std::sqrt(1.0 + ratio * ratio);
    }
    return sp;
}

StepProbabilities step_probabilities(const ModelParams& params, double tau) {
    return step_probabilities(shifted_propagator(params, tau));
}

OccupationPair survival_matrix_power(const StepProbabilities& sp, std::uint64_t m) {
    Sym2 result{1.0L, 0.0L, 1.0L};
    Sym2 base{sp.p0, sp.p1, sp.p2};
    while (m > 0) {
        if (m & 1U) result = result * base;
        m >>= 1U;
        if (m > 0) base = base * base;
    }
    return {static_cast<double>(result.a), static_cast<double>(result.b)};
}

OccupationPair survival_iterated(const StepProbabilities& sp, std::uint64_t m) {
    long double dot = 1.0L;
    long double fict = 0.0L;
    for (std::uint64_t i = 0; i < m; ++i) {
        const long double next_dot = sp.p0 * dot + sp.p1 * fict;
        fict = sp.p1 * dot + sp.p2 * fict;
        dot = next_dot;
    }
    return {static_cast<double>(dot), static_cast<double>(fict)};
}

double survival_closed_form(const StepProbabilities& sp, std::uint64_t m) {
    if (sp.degenerate()) return survival_matrix_power(sp, m).p_dot;
    // kappa is recomputed in extended precision: the eigenvalues are raised
    // to powers up to ~1e4 and their rounding error grows linearly in m.
    const long double p0 = sp.p0;
    const long double p1 = sp.p1;
    const long double p2 = sp.p2;
    const long double ratio = 2.0L * p1 / (p0 - p2);
    const long double kappa = std::sqrt(1.0L + ratio * ratio);
    const long double upper = p0 / 2.0L * (1.0L + kappa) + p2 / 2.0L * (1.0L - kappa);
    const long double lower = p0 / 2.0L * (1.0L - kappa) + p2 / 2.0L * (1.0L + kappa);
    const auto mm = static_cast<long double>(m);
    const long double value = 0.5L * (1.0L + 1.0L / kappa) * std::pow(upper, mm) +
                              0.5L * (1.0L - 1.0L / kappa) * std::pow(lower, mm);
    return static_cast<double>(value);
}

double alpha(double x) {
    if (!(x > 0.0) || std::isnan(x)) throw std::domain_error("alpha(x) requires x > 0");
    if (std::isinf(x)) return 1.0;
    if (x < kAlphaSeriesBound) return x / 2.0 - x * x / 6.0 + x * x * x / 24.0;
    return 1.0 + std::expm1(-x) / x;
}

double continuous_survival(double gamma, double x, double t) {
    if (!(t >= 0.0)) throw std::domain_error("time must be non-negative");
    return std::exp(-alpha(x) * gamma * t);
}

std::uint64_t snap_to_intervals(double t, double tau) {
    if (!(t >= 0.0) || !(tau > 0.0)) throw std::domain_error("snap requires t >= 0 and tau > 0");
    return static_cast<std::uint64_t>(std::floor(t / tau + 0.5));
}

}  // namespace zeno
