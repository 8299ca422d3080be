// chain.hpp - finite tight-binding chain as an exact finite-bandwidth reservoir
//
// N sites with nearest-neighbour hopping -lambda; the dot couples to site 1
// with strength omega_tilde. The chain is diagonal in the sine basis, so the
// dot sees N levels E_r = -2 lambda cos(r pi / (N + 1)) with couplings
// omega_tilde sqrt(2 / (N + 1)) sin(r pi / (N + 1)).

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zeno/model.hpp"

namespace zeno {

class ChainModel {
public:
    ChainModel(std::size_t n_sites, double hop, double dot_coupling, double e_0 = 0.0);

    /// Chain whose band-centre decay rate is gamma: omega_tilde^2 = gamma * hop / 2,
    /// so that the dot's spectral density is (gamma / 2 pi) sqrt(1 - e^2 / 4 hop^2).
    static ChainModel for_decay_rate(std::size_t n_sites, double hop, double gamma, double e_0 = 0.0);

    std::size_t n_sites() const noexcept { return n_sites_; }
    double hop() const noexcept { return hop_; }
    double dot_coupling() const noexcept { return dot_coupling_; }
    double e_0() const noexcept { return e_0_; }
    /// Band-centre decay rate 2 omega_tilde^2 / hop.
    double decay_rate() const noexcept;
    /// Time after which finite-size echoes reach the dot: N / (2 lambda).
    double recurrence_time() const noexcept;

    std::string describe() const;

private:
    std::size_t n_sites_;
    double hop_;
    double dot_coupling_;
    double e_0_;
};

struct ChainSpectrum {
    std::vector<double> energies;   // E_r, r = 1..N stored at index r - 1
    std::vector<double> couplings;  // dot <-> level r

    /// Site amplitudes sqrt(2 / (N + 1)) sin(r pi n / (N + 1)), n = 1..N.
    std::vector<double> eigenvector(std::size_t r) const;
};

ChainSpectrum chain_spectrum(const ChainModel& model);

/// Dot spectral density of the chain, (gamma / 2 pi) sqrt(1 - e^2 / 4 hop^2);
/// zero outside the band.
double spectral_function_chain(double e, double gamma, double hop);

/// Lorentzian spectral density (gamma / 2 pi) lambda^2 / ((e - e_r)^2 + lambda^2).
double spectral_function_lorentzian(double e, const ModelParams& params);

/// Lorentzian width with the same band-centre curvature as the chain: 2 sqrt(2) hop.
double bandwidth_map(double hop);

/// Histogram of sum_r |coupling_r|^2 over equal-width energy bins spanning
/// the band, divided by the bin width.
struct BinnedDensity {
    std::vector<double> centers;
    std::vector<double> density;
    double bin_width = 0.0;
};

BinnedDensity binned_spectral_density(const ChainModel& model, std::size_t bins);

struct ChainSample {
    double t = 0.0;
    cplx b0{1.0, 0.0};
    double p0 = 1.0;
    bool past_recurrence = false;
};

struct ChainEvolution {
    std::vector<ChainSample> samples;
    double max_norm_drift = 0.0;
    double step = 0.0;
};

/// Exact evolution of the dot + chain. The particle starts on the dot, or on
/// chain level r (1-based) when start_level is given.
ChainEvolution evolve_chain(const ChainModel& model, std::span<const double> t_grid,
                            std::optional<std::size_t> start_level = std::nullopt);

}  // namespace zeno
