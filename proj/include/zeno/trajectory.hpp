// trajectory.hpp - repeated non-selective measurements
//
// Between measurements the dot and fictitious well evolve coherently; each
// measurement projects onto {dot, fictitious well, Markovian bath}. Averaged
// over outcomes the occupations obey a linear recurrence with the symmetric
// transfer matrix [[p0, p1], [p1, p2]].

#pragma once

#include <cstdint>
#include <optional>

#include "zeno/lorentzian.hpp"

namespace zeno {

struct StepProbabilities {
    double p0 = 1.0;  // |b00|^2
    double p1 = 0.0;  // |bR0|^2
    double p2 = 1.0;  // |bRR|^2
    /// sqrt(1 + 4 p1^2 / (p0 - p2)^2); empty when p0 and p2 are degenerate.
    std::optional<double> kappa;

    bool degenerate() const noexcept { return !kappa.has_value(); }
};

struct OccupationPair {
    double p_dot = 1.0;
    double p_fict = 0.0;
};

StepProbabilities step_probabilities(const MeasurementPropagator& prop);

/// Step probabilities straight from physical parameters (any e_0).
StepProbabilities step_probabilities(const ModelParams& params, double tau);

/// (P0(m), PR(m)) = T^m (1, 0) by exponentiation by squaring.
OccupationPair survival_matrix_power(const StepProbabilities& sp, std::uint64_t m);

/// (P0(m), PR(m)) by m-fold application of the recurrence. Linear in m;
/// kept for cross-checks.
OccupationPair survival_iterated(const StepProbabilities& sp, std::uint64_t m);

/// P0(m) from the two-eigenvalue closed form. Falls back to the matrix power
/// when kappa is degenerate.
double survival_closed_form(const StepProbabilities& sp, std::uint64_t m);

/// Continuous-measurement reduction factor alpha(x) = 1 - (1 - e^-x) / x.
/// Throws std::domain_error for x <= 0.
double alpha(double x);

/// exp(-alpha(x) gamma t).
double continuous_survival(double gamma, double x, double t);

/// Nearest number of whole intervals to t (t / tau rounded half-up).
std::uint64_t snap_to_intervals(double t, double tau);

}  // namespace zeno
