// lorentzian.hpp - free decay into Markovian and Lorentzian reservoirs
//
// The Lorentzian reservoir is re-based as a single fictitious level |R>
// (energy e_r, width lambda) attached to a Markovian bath. The dot and |R>
// then evolve under a 2x2 non-Hermitian generator, whose propagator has a
// closed form in terms of Q = lambda + i e_r and S = sqrt(Q^2 - 2 lambda gamma).

#pragma once

#include <Eigen/Core>

#include "zeno/model.hpp"

namespace zeno {

/// Amplitudes of one free-evolution interval between measurements.
///
/// b00: dot -> dot, bR0: dot -> fictitious well (equal to the reverse
/// transfer), bRR: fictitious well -> fictitious well.
struct MeasurementPropagator {
    cplx b00{1.0, 0.0};
    cplx bR0{0.0, 0.0};
    cplx bRR{1.0, 0.0};

    /// Propagator as a 2x2 matrix acting on (b_dot, b_R).
    Eigen::Matrix2cd as_matrix() const;
};

/// H_eff = [[e_0, omega_bar], [omega_bar, e_r - i lambda]].
Eigen::Matrix2cd effective_hamiltonian(const ModelParams& params);

/// Dot survival amplitude for the Lorentzian reservoir with e_0 = 0.
/// Throws std::domain_error when params.e_0() != 0; use
/// shifted_propagator() for a nonzero dot level.
cplx survival_amplitude_b0(const ModelParams& params, double t);

/// Full interval propagator for e_0 = 0 (same restriction as above).
MeasurementPropagator propagator(const ModelParams& params, double tau);

/// Propagator for any dot level. A common shift of both diagonal entries of
/// H_eff only contributes the phase exp(-i e_0 tau), so this evaluates the
/// closed form at detuning e_r - e_0 and applies that phase.
MeasurementPropagator shifted_propagator(const ModelParams& params, double tau);

/// |b0(t)|^2 for any dot level (routes through shifted_propagator).
double lorentzian_survival_probability(const ModelParams& params, double t);

/// Wide-band decay b0(t) = exp(-i e_0 t - gamma t / 2).
cplx markovian_survival(double gamma, double e_0, double t);

/// Return amplitude to the dot of a particle started in a reservoir level
/// e_rbar of a Markovian reservoir (coupling omega to that level).
cplx markovian_return_amplitude(double omega, double e_rbar, double e_0, double gamma, double t);

/// Quadratic short-time loss gamma * lambda * t^2 / 2 of the dot population.
double short_time_loss(const ModelParams& params, double t);

namespace detail {

/// Even and odd parts of the two-exponential solution:
///   even = exp(-q t / 2) cosh(s t / 2)
///   odd  = exp(-q t / 2) sinh(s t / 2) / s
/// Both are even in s; the s -> 0 limit is taken analytically.
struct HyperbolicPair {
    cplx even;
    cplx odd;
};

HyperbolicPair hyperbolic_pair(cplx q, cplx s, double t);

}  // namespace detail

}  // namespace zeno
