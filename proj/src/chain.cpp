#include "zeno/chain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "zeno/rk4.hpp"

namespace zeno {

namespace {

constexpr cplx kI{0.0, 1.0};

double level_angle(std::size_t r, std::size_t n_sites) {
    return static_cast<double>(r) * std::numbers::pi / static_cast<double>(n_sites + 1);
}

}  // namespace

ChainModel::ChainModel(std::size_t n_sites, double hop, double dot_coupling, double e_0)
    : n_sites_(n_sites), hop_(hop), dot_coupling_(dot_coupling), e_0_(e_0) {
    if (n_sites == 0) throw ConfigError("chain needs at least one site");
    if (!(hop > 0.0) || !std::isfinite(hop)) throw ConfigError("hop must be finite and positive");
    if (!(dot_coupling >= 0.0) || !std::isfinite(dot_coupling)) {
        throw ConfigError("dot coupling must be finite and non-negative");
    }
    if (!std::isfinite(e_0)) throw ConfigError("e_0 must be finite");
}

ChainModel ChainModel::for_decay_rate(std::size_t n_sites, double hop, double gamma, double e_0) {
    if (!(gamma >= 0.0)) throw ConfigError("gamma must be non-negative");
    return ChainModel(n_sites, hop, std::sqrt(gamma * hop / 2.0), e_0);
}

double ChainModel::decay_rate() const noexcept { return 2.0 * dot_coupling_ * dot_coupling_ / hop_; }

double ChainModel::recurrence_time() const noexcept { return static_cast<double>(n_sites_) / (2.0 * hop_); }

std::string ChainModel::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "n_sites=" << n_sites_ << " hop=" << hop_ << " dot_coupling=" << dot_coupling_ << " e_0=" << e_0_;
    return os.str();
}

std::vector<double> ChainSpectrum::eigenvector(std::size_t r) const {
    const std::size_t n_sites = energies.size();
    if (r == 0 || r > n_sites) throw std::out_of_range("chain level index out of range");
    const double norm = std::sqrt(2.0 / static_cast<double>(n_sites + 1));
    std::vector<double> v(n_sites);
    for (std::size_t n = 1; n <= n_sites; ++n) {
        v[n - 1] = norm * std::sin(level_angle(r, n_sites) * static_cast<double>(n));
    }
    return v;
}

ChainSpectrum chain_spectrum(const ChainModel& model) {
    const std::size_t n_sites = model.n_sites();
    const double norm = std::sqrt(2.0 / static_cast<double>(n_sites + 1));
    ChainSpectrum s;
    s.energies.resize(n_sites);
    s.couplings.resize(n_sites);
    for (std::size_t r = 1; r <= n_sites; ++r) {
        const double theta = level_angle(r, n_sites);
        s.energies[r - 1] = -2.0 * model.hop() * std::cos(theta);
        s.couplings[r - 1] = model.dot_coupling() * norm * std::sin(theta);
    }
    return s;
}

double spectral_function_chain(double e, double gamma, double hop) {
    const double u = e / (2.0 * hop);
    if (std::abs(u) >= 1.0) return 0.0;
    return gamma / (2.0 * std::numbers::pi) * std::sqrt(1.0 - u * u);
}

double spectral_function_lorentzian(double e, const ModelParams& params) {
    const double lam = params.lambda_band();
    const double d = e - params.e_r();
    return params.gamma() / (2.0 * std::numbers::pi) * lam * lam / (d * d + lam * lam);
}

double bandwidth_map(double hop) {
    if (!(hop > 0.0)) throw std::domain_error("bandwidth_map requires hop > 0");
    return 2.0 * std::numbers::sqrt2 * hop;
}

BinnedDensity binned_spectral_density(const ChainModel& model, std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("need at least one bin");
    const auto spectrum = chain_spectrum(model);
    const double lo = -2.0 * model.hop();
    BinnedDensity out;
    out.bin_width = 4.0 * model.hop() / static_cast<double>(bins);
    out.centers.resize(bins);
    out.density.assign(bins, 0.0);
    for (std::size_t b = 0; b < bins; ++b) out.centers[b] = lo + (static_cast<double>(b) + 0.5) * out.bin_width;
    for (std::size_t r = 0; r < spectrum.energies.size(); ++r) {
        auto b = static_cast<std::size_t>((spectrum.energies[r] - lo) / out.bin_width);
        if (b >= bins) b = bins - 1;
        out.density[b] += spectrum.couplings[r] * spectrum.couplings[r];
    }
    for (double& d : out.density) d /= out.bin_width;
    return out;
}

ChainEvolution evolve_chain(const ChainModel& model, std::span<const double> t_grid,
                            std::optional<std::size_t> start_level) {
    check_time_grid(t_grid);
    const auto spectrum = chain_spectrum(model);
    const auto n_sites = static_cast<Eigen::Index>(model.n_sites());
    const Eigen::Map<const Eigen::VectorXd> energies(spectrum.energies.data(), n_sites);
    const Eigen::Map<const Eigen::VectorXd> couplings(spectrum.couplings.data(), n_sites);
    const double e_0 = model.e_0();

    // y = (b_dot, c_1, ..., c_N) in the chain eigenbasis; i dy/dt = H y.
    const Derivative f = [&](const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        const auto levels = y.tail(n_sites);
        dy[0] = -kI * (e_0 * y[0] + couplings.dot(levels));
        dy.tail(n_sites) = -kI * (energies.cwiseProduct(levels) + couplings * y[0]);
    };

    Eigen::VectorXcd y0 = Eigen::VectorXcd::Zero(n_sites + 1);
    if (start_level) {
        if (*start_level == 0 || *start_level > model.n_sites()) throw ConfigError("start level out of range");
        y0[static_cast<Eigen::Index>(*start_level)] = 1.0;
    } else {
        y0[0] = 1.0;
    }

    const double max_energy = std::max(2.0 * model.hop(), std::abs(e_0)) + model.dot_coupling();
    StepControl control;
    control.initial_step = std::min(1.0 / max_energy, min_spacing(t_grid)) / 20.0;
    control.min_step = control.initial_step * 1e-6;
    const auto sol = integrate_on_grid(f, y0, t_grid, control);

    ChainEvolution out;
    out.step = sol.step;
    out.samples.reserve(sol.samples.size());
    const double t_rev = model.recurrence_time();
    for (std::size_t i = 0; i < sol.samples.size(); ++i) {
        const auto& y = sol.samples[i];
        ChainSample s;
        s.t = t_grid[i];
        s.b0 = y[0];
        s.p0 = std::norm(y[0]);
        s.past_recurrence = s.t > t_rev;
        out.samples.push_back(s);
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(y.squaredNorm() - 1.0));
    }
    return out;
}

}  // namespace zeno
