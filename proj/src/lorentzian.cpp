#include "zeno/lorentzian.hpp"

#include <cmath>
#include <stdexcept>

namespace zeno {

namespace {

constexpr cplx kI{0.0, 1.0};

// |z| below which sinh(z)/z is taken from its Taylor series.
constexpr double kSinhcSeriesBound = 1e-4;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error("time must be finite and non-negative");
}

void require_zero_dot_level(const ModelParams& params) {
    if (params.e_0() != 0.0) {
        throw std::domain_error("closed-form Lorentzian amplitudes assume e_0 = 0; use shifted_propagator");
    }
}

}  // namespace

namespace detail {

HyperbolicPair hyperbolic_pair(cplx q, cplx s, double t) {
    const cplx z = s * (t / 2.0);
    const cplx decay = -q * (t / 2.0);
    if (std::abs(z) < kSinhcSeriesBound) {
        const cplx z2 = z * z;
        const cplx envelope = std::exp(decay);
        const cplx cosh_z = 1.0 + z2 / 2.0 + z2 * z2 / 24.0;
        const cplx sinhc_z = 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
        return {envelope * cosh_z, envelope * (t / 2.0) * sinhc_z};
    }
    // Combine the exponents before exponentiating: each of cosh(z) and
    // exp(decay) can overflow on its own while their product stays O(1).
    const cplx grow = std::exp(decay + z);
    const cplx shrink = std::exp(decay - z);
    return {(grow + shrink) / 2.0, (grow - shrink) / (2.0 * s)};
}

}  // namespace detail

Eigen::Matrix2cd MeasurementPropagator::as_matrix() const {
    Eigen::Matrix2cd m;
    m << b00, bR0, bR0, bRR;
    return m;
}

Eigen::Matrix2cd effective_hamiltonian(const ModelParams& params) {
    const double w = params.omega_bar();
    Eigen::Matrix2cd h;
    h << cplx(params.e_0(), 0.0), cplx(w, 0.0), cplx(w, 0.0), cplx(params.e_r(), -params.lambda_band());
    return h;
}

cplx survival_amplitude_b0(const ModelParams& params, double t) {
    return propagator(params, t).b00;
}

MeasurementPropagator propagator(const ModelParams& params, double tau) {
    require_time(tau);
    require_zero_dot_level(params);
    const auto d = derived_quantities(params);
    const auto hp = detail::hyperbolic_pair(d.q, d.s, tau);
    MeasurementPropagator p;
    p.b00 = hp.even + d.q * hp.odd;
    p.bR0 = -kI * (2.0 * d.omega_bar) * hp.odd;
    p.bRR = hp.even - d.q * hp.odd;
    return p;
}

MeasurementPropagator shifted_propagator(const ModelParams& params, double tau) {
    require_time(tau);
    const ModelParams centered(params.gamma(), params.lambda_band(), params.e_r() - params.e_0(), 0.0);
    auto p = propagator(centered, tau);
    const cplx phase = std::exp(-kI * params.e_0() * tau);
    p.b00 *= phase;
    p.bR0 *= phase;
    p.bRR *= phase;
    return p;
}

double lorentzian_survival_probability(const ModelParams& params, double t) {
    return std::norm(shifted_propagator(params, t).b00);
}

cplx markovian_survival(double gamma, double e_0, double t) {
    require_time(t);
    return std::exp(cplx(-gamma * t / 2.0, -e_0 * t));
}

cplx markovian_return_amplitude(double omega, double e_rbar, double e_0, double gamma, double t) {
    require_time(t);
    const cplx prefactor = omega / cplx(e_rbar - e_0, gamma / 2.0);
    return prefactor * (std::exp(cplx(0.0, -e_rbar * t)) - markovian_survival(gamma, e_0, t));
}

double short_time_loss(const ModelParams& params, double t) {
    require_time(t);
    return params.gamma() * params.lambda_band() * t * t / 2.0;
}

}  // namespace zeno
