// counting.hpp - point-contact charge counting statistics

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zeno/model.hpp"

namespace zeno {

/// Poisson count distribution of a constant current over time t, truncated
/// where the remaining tail is negligible (< 1e-16 per term).
struct CountDistribution {
    double rate = 0.0;
    double t = 0.0;
    std::vector<double> pmf;  // pmf[n]

    double total() const;
    double mean() const;
    double variance() const;
};

/// (I t)^n e^{-I t} / n!, evaluated in log space.
double poisson_pn(double current, double t, std::size_t n);

/// Gaussian approximant (2 pi I t)^{-1/2} exp(-(I t - n)^2 / (2 I t)).
/// Requires I t > 0. Takes a real n so the symmetry about I t can be probed.
double gaussian_approx_pn(double current, double t, double n);

CountDistribution count_distribution(double current, double t);

/// Convention for the shortest time at which the two current distributions
/// can be told apart: Width requires the centre separation to equal the sum
/// of the widths (t = 2 / gamma_d), SignalToNoise uses t = 1 / gamma_d.
enum class Discrimination { Width, SignalToNoise };

/// c / gamma_d with c = 2 (Width) or 1 (SignalToNoise). Empty when I == I'.
std::optional<double> min_discrimination_time(const DetectorParams& det,
                                              Discrimination convention = Discrimination::Width);

/// |I' - I| t / (sqrt(2 I t) + sqrt(2 I' t)); equals 1 at the Width t_min.
double separation_metric(const DetectorParams& det, double t);

}  // namespace zeno
