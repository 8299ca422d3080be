// master_equation.hpp - dot + fictitious well monitored by a point contact
//
// Two levels of description:
//   * the n-resolved ladder, which tracks the number n of electrons that have
//     passed the point contact;
//   * the reduced (Bloch-type) equations obtained by summing over n, in which
//     the detector enters only through the dephasing rate
//     gamma_d = (sqrt(I) - sqrt(I'))^2.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "zeno/model.hpp"
#include "zeno/rk4.hpp"

namespace zeno {

struct ReducedState {
    double sigma00 = 1.0;
    double sigmaRR = 0.0;
    cplx sigma0R{0.0, 0.0};

    double population() const noexcept { return sigma00 + sigmaRR; }
    /// Smaller eigenvalue of the Hermitian block [[s00, s0R], [s0R*, sRR]].
    double min_eigenvalue() const noexcept;
};

/// One n-sector of the ladder.
struct CountBlock {
    double sigma00 = 0.0;
    double sigmaRR = 0.0;
    cplx sigma0R{0.0, 0.0};
};

struct NResolvedState {
    std::vector<CountBlock> blocks;  // index n = 0 .. n_max

    std::size_t n_max() const noexcept { return blocks.empty() ? 0 : blocks.size() - 1; }
    /// Sum over n.
    ReducedState traced() const;
    /// Diagonal weight sitting in the last block.
    double tail_weight() const;
    /// sum_n n * (sigma00^(n) + sigmaRR^(n)).
    double mean_count() const;
};

struct ReducedSeries {
    std::vector<double> times;
    std::vector<ReducedState> states;
    double step = 0.0;
    std::vector<std::string> warnings;
    bool invariant_breach = false;
};

struct NResolvedSeries {
    std::vector<double> times;
    std::vector<NResolvedState> states;
    double step = 0.0;
    std::vector<std::string> warnings;
    bool invariant_breach = false;
    bool truncation_inadequate = false;
    std::size_t suggested_n_max = 0;
};

/// (sqrt(I) - sqrt(I'))^2.
double gamma_d(const DetectorParams& det);

/// Decay factor of the wide-band limit with detector dephasing:
/// (2 lambda / gamma_d) / (1 + 2 lambda / gamma_d); 1 at gamma_d = 0.
double alpha_prime(double lambda_band, double gamma_d);

/// exp(-alpha_prime * gamma * t).
double wide_band_survival(double gamma, double lambda_band, double gamma_d, double t);

/// Integrates the reduced equations from sigma00 = 1 on the given grid
/// (must start at 0). Throws StepUnderflow when no step meets tolerance.
ReducedSeries integrate_reduced(const ModelParams& params, double gamma_d, std::span<const double> t_grid);

/// Poisson-tail bound on the ladder length needed up to t_end.
std::size_t default_n_max(const DetectorParams& det, double t_end);

/// Integrates the n-resolved ladder from sigma00^(0) = 1.
NResolvedSeries integrate_n_resolved(const ModelParams& params, const DetectorParams& det, std::size_t n_max,
                                     std::span<const double> t_grid);

/// Time derivative of the ladder at a given state.
NResolvedState n_resolved_derivative(const ModelParams& params, const DetectorParams& det,
                                     const NResolvedState& state);

/// Time derivative of the reduced equations at a given state.
ReducedState reduced_derivative(const ModelParams& params, double gamma_d, const ReducedState& state);

}  // namespace zeno
