// model.hpp - shared parameter types for the dot + reservoir system
//
// Units: hbar = 1, e = 1. Energies and rates are measured in units of the
// bare decay rate (gamma = 1 is the canonical scale), times in 1/gamma.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace zeno {

using cplx = std::complex<double>;

/// Thrown when a parameter set violates its invariants. The CLI maps this to
/// exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Rates and energies of the dot coupled to a Lorentzian reservoir.
///
/// gamma is the Markovian decay rate, lambda_band the Lorentzian half-width,
/// e_r the Lorentzian center and e_0 the dot level. Immutable once built.
class ModelParams {
public:
    ModelParams(double gamma, double lambda_band, double e_r = 0.0, double e_0 = 0.0);

    double gamma() const noexcept { return gamma_; }
    double lambda_band() const noexcept { return lambda_band_; }
    double e_r() const noexcept { return e_r_; }
    double e_0() const noexcept { return e_0_; }

    /// Dot <-> fictitious-well coupling sqrt(gamma * lambda / 2).
    double omega_bar() const noexcept;

    /// Detuning e_0 - e_r entering the coherence equation.
    double detuning() const noexcept { return e_0_ - e_r_; }

    /// Same physics with every energy multiplied by k (times divide by k).
    ModelParams rescaled(double k) const;

    std::string describe() const;

private:
    double gamma_;
    double lambda_band_;
    double e_r_;
    double e_0_;
};

/// Point-contact currents with the dot occupied (I) and empty (I').
class DetectorParams {
public:
    DetectorParams(double current_occupied, double current_empty);

    double current_occupied() const noexcept { return current_occupied_; }
    double current_empty() const noexcept { return current_empty_; }

    std::string describe() const;

private:
    double current_occupied_;
    double current_empty_;
};

/// Measurement schedule: interval tau repeated m times. x = lambda * tau.
class Schedule {
public:
    Schedule(const ModelParams& params, double tau, std::size_t m);

    /// Builds the interval from the dimensionless product x = lambda * tau.
    static Schedule from_x(const ModelParams& params, double x, std::size_t m);

    double tau() const noexcept { return tau_; }
    std::size_t m() const noexcept { return m_; }
    double x() const noexcept { return x_; }
    double total_time() const noexcept { return tau_ * static_cast<double>(m_); }

private:
    double tau_;
    std::size_t m_;
    double x_;
};

struct DerivedQuantities {
    double omega_bar;
    cplx q;  // lambda + i e_r
    cplx s;  // principal sqrt(q^2 - 2 lambda gamma)
};

DerivedQuantities derived_quantities(const ModelParams& params);

}  // namespace zeno
