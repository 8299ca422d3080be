#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "zeno/chain.hpp"
#include "zeno/lorentzian.hpp"
#include "zeno/rk4.hpp"

using namespace zeno;

TEST_CASE("chain spectrum small cases") {
    const auto one = chain_spectrum(ChainModel(1, 1.0, 0.5));
    REQUIRE(one.energies.size() == 1);
    CHECK(std::abs(one.energies[0]) < 1e-15);

    const auto two = chain_spectrum(ChainModel(2, 1.0, 0.5));
    CHECK(two.energies[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(two.energies[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("long chain spectrum lies inside the band and is symmetric") {
    const auto s = chain_spectrum(ChainModel(250, 3.0, 1.0));
    for (double e : s.energies) {
        CHECK(e > -6.0);
        CHECK(e < 6.0);
    }
    for (std::size_t r = 0; r < s.energies.size(); ++r) {
        CHECK(std::abs(s.energies[r] + s.energies[s.energies.size() - 1 - r]) < 1e-13);
    }
}

TEST_CASE("eigenvectors are orthonormal and diagonalize the chain") {
    const std::size_t n = 40;
    const double hop = 1.3;
    const auto s = chain_spectrum(ChainModel(n, hop, 1.0));
    std::vector<std::vector<double>> vecs;
    for (std::size_t r = 1; r <= n; ++r) vecs.push_back(s.eigenvector(r));
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += vecs[a][k] * vecs[b][k];
            worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    }
    CHECK(worst <= 1e-12);
    // H v = E v with H the open chain, hopping -hop
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const double hv = -hop * ((k > 0 ? vecs[r][k - 1] : 0.0) + (k + 1 < n ? vecs[r][k + 1] : 0.0));
            CHECK(std::abs(hv - s.energies[r] * vecs[r][k]) < 1e-12);
        }
    }
    // coupling to level r is omega_tilde times the site-1 amplitude
    for (std::size_t r = 0; r < n; ++r) CHECK(std::abs(s.couplings[r] - vecs[r][0]) < 1e-15);
    CHECK_THROWS(s.eigenvector(0));
}

TEST_CASE("spectral functions") {
    CHECK(spectral_function_chain(0.0, 1.0, 1.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
    CHECK(spectral_function_chain(2.0, 1.0, 1.0) == 0.0);
    CHECK(spectral_function_chain(-2.0, 1.0, 1.0) == 0.0);
    CHECK(spectral_function_chain(3.0, 1.0, 1.0) == 0.0);
    CHECK(spectral_function_chain(1.0, 1.0, 1.0) == doctest::Approx(0.137832223855448012).epsilon(1e-14));

    const ModelParams p(1.0, 4.0, 0.5);
    CHECK(spectral_function_lorentzian(0.5, p) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
    CHECK(spectral_function_lorentzian(4.5, p) == doctest::Approx(1.0 / (4.0 * std::numbers::pi)));
    CHECK(spectral_function_lorentzian(-3.5, p) == doctest::Approx(1.0 / (4.0 * std::numbers::pi)));
}

TEST_CASE("bandwidth map matches the band-centre curvature") {
    CHECK(bandwidth_map(1.0) == doctest::Approx(2.8284271247461903).epsilon(1e-15));
    CHECK(bandwidth_map(3.0) == doctest::Approx(8.4852813742385706).epsilon(1e-15));
    CHECK(bandwidth_map(2.0 * 1.7) == doctest::Approx(2.0 * bandwidth_map(1.7)).epsilon(1e-15));
    // second derivative at e = 0 by central differences
    const double hop = 3.0;
    const ModelParams p(1.0, bandwidth_map(hop), 0.0);
    const double h = 1e-3;
    auto curv = [h](auto f) { return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h); };
    const double c_chain = curv([&](double e) { return spectral_function_chain(e, 1.0, hop); });
    const double c_lor = curv([&](double e) { return spectral_function_lorentzian(e, p); });
    CHECK(c_chain == doctest::Approx(c_lor).epsilon(1e-5));
}

TEST_CASE("Lorentzian and chain densities agree near the band centre") {
    const double hop = 3.0;
    const ModelParams p(1.0, bandwidth_map(hop), 0.0);
    CHECK(spectral_function_chain(0.0, 1.0, hop) == spectral_function_lorentzian(0.0, p));
    for (int i = -100; i <= 100; ++i) {
        const double e = hop * i / 100.0;
        const double c = spectral_function_chain(e, 1.0, hop);
        CHECK(std::abs(spectral_function_lorentzian(e, p) - c) <= 0.05 * c);
    }
}

TEST_CASE("coupling convention reproduces the chain spectral function") {
    const double gamma = 1.0;
    const double hop = 3.0;
    const auto model = ChainModel::for_decay_rate(250, hop, gamma);
    CHECK(model.decay_rate() == doctest::Approx(gamma));
    const auto levels_of = chain_spectrum(model);
    // cumulative weight sum_{E_r <= e} |g_r|^2 against the integrated density
    const double total = model.dot_coupling() * model.dot_coupling();
    for (int k = -4; k <= 4; ++k) {
        const double e = hop * k / 2.5;
        double levels = 0.0;
        for (std::size_t r = 0; r < levels_of.energies.size(); ++r) {
            if (levels_of.energies[r] <= e) levels += levels_of.couplings[r] * levels_of.couplings[r];
        }
        const int steps = 20000;
        const double lo = -2.0 * hop;
        const double h = (e - lo) / steps;
        double integral = 0.0;
        for (int i = 0; i < steps; ++i) integral += spectral_function_chain(lo + (i + 0.5) * h, gamma, hop) * h;
        CHECK(std::abs(levels - integral) <= 0.01 * total);
    }
    // coarse bins follow the density to within the level-count granularity
    const auto binned = binned_spectral_density(model, 10);
    for (std::size_t b = 2; b < 8; ++b) {
        const double expected = spectral_function_chain(binned.centers[b], gamma, hop);
        CHECK(std::abs(binned.density[b] - expected) <= 0.06 * expected);
    }
}

TEST_CASE("sum rule over the binned spectral weight") {
    const auto model = ChainModel::for_decay_rate(250, 3.0, 1.0);
    const auto binned = binned_spectral_density(model, 50);
    double total = 0.0;
    for (double d : binned.density) total += d * binned.bin_width;
    const double w2 = model.dot_coupling() * model.dot_coupling();
    CHECK(std::abs(total - w2) <= 0.01 * w2);
}

TEST_CASE("evolution basics") {
    const auto model = ChainModel::for_decay_rate(60, 2.0, 1.0, 0.5);
    const auto grid = uniform_grid(3.0, 30);
    const auto evo = evolve_chain(model, grid);
    CHECK(evo.samples.front().b0 == cplx(1.0, 0.0));
    CHECK(evo.max_norm_drift <= 1e-10);

    const ChainModel decoupled(60, 2.0, 0.0, 0.7);
    const auto free = evolve_chain(decoupled, grid);
    for (const auto& s : free.samples) {
        CHECK(std::abs(s.b0 - std::exp(cplx(0.0, -0.7 * s.t))) < 1e-9);
        CHECK(s.p0 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("recurrence guard flags late samples") {
    const auto model = ChainModel::for_decay_rate(20, 2.0, 1.0);
    CHECK(model.recurrence_time() == doctest::Approx(5.0));
    const auto evo = evolve_chain(model, uniform_grid(10.0, 20));
    for (const auto& s : evo.samples) CHECK(s.past_recurrence == (s.t > 5.0));
}

TEST_CASE("chain evolution against direct diagonalization") {
    // Independent route: dense Hermitian eigensolver in the site basis.
    const std::size_t n = 30;
    const auto model = ChainModel::for_decay_rate(n, 1.5, 1.0, 0.4);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 1, n + 1);
    h(0, 0) = model.e_0();
    h(0, 1) = h(1, 0) = model.dot_coupling();
    for (std::size_t k = 1; k < n; ++k) h(k, k + 1) = h(k + 1, k) = -model.hop();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto grid = uniform_grid(4.0, 40);
    const auto evo = evolve_chain(model, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        cplx b0{};
        for (Eigen::Index k = 0; k <= static_cast<Eigen::Index>(n); ++k) {
            const double v = es.eigenvectors()(0, k);
            b0 += v * v * std::exp(cplx(0.0, -es.eigenvalues()[k] * grid[i]));
        }
        CHECK(std::abs(evo.samples[i].b0 - b0) < 1e-9);
    }
}

TEST_CASE("return amplitude from a reservoir level shrinks as 1/N") {
    auto peak = [](std::size_t n) {
        const auto model = ChainModel::for_decay_rate(n, 3.0, 1.0, 0.0);
        const auto grid = uniform_grid(0.9 * model.recurrence_time(), 400);
        const auto evo = evolve_chain(model, grid, n / 2);
        double best = 0.0;
        for (const auto& s : evo.samples) best = std::max(best, s.p0);
        return best;
    };
    const double small = peak(100);
    const double large = peak(200);
    CHECK(large < small);
    CHECK(small / large == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("invalid chains are rejected") {
    CHECK_THROWS_AS(ChainModel(0, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(ChainModel(5, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(ChainModel(5, 1.0, -1.0), ConfigError);
    CHECK_THROWS_AS(evolve_chain(ChainModel(5, 1.0, 1.0), uniform_grid(1.0, 2), 6), ConfigError);
}
