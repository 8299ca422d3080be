#include "zeno/model.hpp"

#include <cmath>
#include <sstream>

namespace zeno {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

}  // namespace

ModelParams::ModelParams(double gamma, double lambda_band, double e_r, double e_0)
    : gamma_(gamma), lambda_band_(lambda_band), e_r_(e_r), e_0_(e_0) {
    // gamma = 0 is allowed: it is the decoupled-dot limit used throughout the tests.
    require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be finite and non-negative");
    require(std::isfinite(lambda_band) && lambda_band > 0.0, "lambda_band must be finite and positive");
    require(std::isfinite(e_r), "e_r must be finite");
    require(std::isfinite(e_0), "e_0 must be finite");
}

double ModelParams::omega_bar() const noexcept { return std::sqrt(gamma_ * lambda_band_ / 2.0); }

ModelParams ModelParams::rescaled(double k) const {
    require(std::isfinite(k) && k > 0.0, "rescale factor must be positive");
    return ModelParams(gamma_ * k, lambda_band_ * k, e_r_ * k, e_0_ * k);
}

std::string ModelParams::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "gamma=" << gamma_ << " lambda_band=" << lambda_band_ << " e_r=" << e_r_ << " e_0=" << e_0_;
    return os.str();
}

DetectorParams::DetectorParams(double current_occupied, double current_empty)
    : current_occupied_(current_occupied), current_empty_(current_empty) {
    require(std::isfinite(current_occupied) && current_occupied >= 0.0,
            "current_occupied must be finite and non-negative");
    require(std::isfinite(current_empty) && current_empty >= 0.0,
            "current_empty must be finite and non-negative");
}

std::string DetectorParams::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "current_occupied=" << current_occupied_ << " current_empty=" << current_empty_;
    return os.str();
}

Schedule::Schedule(const ModelParams& params, double tau, std::size_t m)
    : tau_(tau), m_(m), x_(params.lambda_band() * tau) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive");
}

Schedule Schedule::from_x(const ModelParams& params, double x, std::size_t m) {
    require(std::isfinite(x) && x > 0.0, "x must be positive");
    return Schedule(params, x / params.lambda_band(), m);
}

DerivedQuantities derived_quantities(const ModelParams& params) {
    const double lam = params.lambda_band();
    const cplx q(lam, params.e_r());
    const cplx s = std::sqrt(q * q - 2.0 * lam * params.gamma());
    return {params.omega_bar(), q, s};
}

}  // namespace zeno
