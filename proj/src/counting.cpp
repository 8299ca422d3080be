#include "zeno/counting.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zeno/master_equation.hpp"

namespace zeno {

double CountDistribution::total() const {
    double s = 0.0;
    for (double p : pmf) s += p;
    return s;
}

double CountDistribution::mean() const {
    double s = 0.0;
    for (std::size_t n = 0; n < pmf.size(); ++n) s += static_cast<double>(n) * pmf[n];
    return s;
}

double CountDistribution::variance() const {
    const double mu = mean();
    double s = 0.0;
    for (std::size_t n = 0; n < pmf.size(); ++n) {
        const double d = static_cast<double>(n) - mu;
        s += d * d * pmf[n];
    }
    return s;
}

double poisson_pn(double current, double t, std::size_t n) {
    if (!(current >= 0.0) || !(t >= 0.0)) throw std::domain_error("poisson_pn requires I >= 0 and t >= 0");
    const double mean = current * t;
    if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
    const auto k = static_cast<double>(n);
    return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

double gaussian_approx_pn(double current, double t, double n) {
    const double mean = current * t;
    if (!(mean > 0.0)) throw std::domain_error("gaussian_approx_pn requires I t > 0");
    const double d = mean - n;
    return std::exp(-d * d / (2.0 * mean)) / std::sqrt(2.0 * std::numbers::pi * mean);
}

CountDistribution count_distribution(double current, double t) {
    CountDistribution d;
    d.rate = current;
    d.t = t;
    const double mean = current * t;
    const auto n_end = static_cast<std::size_t>(std::ceil(mean + 12.0 * std::sqrt(mean) + 30.0));
    d.pmf.reserve(n_end + 1);
    for (std::size_t n = 0; n <= n_end; ++n) d.pmf.push_back(poisson_pn(current, t, n));
    return d;
}

std::optional<double> min_discrimination_time(const DetectorParams& det, Discrimination convention) {
    const double gd = gamma_d(det);
    if (gd == 0.0) return std::nullopt;
    const double c = convention == Discrimination::Width ? 2.0 : 1.0;
    return c / gd;
}

double separation_metric(const DetectorParams& det, double t) {
    if (!(t > 0.0)) throw std::domain_error("separation_metric requires t > 0");
    const double i_occ = det.current_occupied();
    const double i_emp = det.current_empty();
    const double widths = std::sqrt(2.0 * i_occ * t) + std::sqrt(2.0 * i_emp * t);
    if (widths == 0.0) return 0.0;
    return std::abs(i_emp - i_occ) * t / widths;
}

}  // namespace zeno
