#include "decoh/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace decoh {

double spectral_density(double w, const ModelParams& p) {
    if (w < 0.0) throw std::invalid_argument("spectral_density: requires w >= 0");
    const double r = w / p.cutoff;
    return 2.0 * p.mass_B * p.gamma0 * w * std::exp(-r * r);
}

double gamma_kernel(double s, const ModelParams& p, const QuadratureSpec& spec) {
    if (s < 0.0) throw std::invalid_argument("gamma_kernel: requires s >= 0");
    // I(w)/w = 2 M_B gamma0 exp(-w^2/cutoff^2); Gaussian tail beyond
    // 8*cutoff is below 1e-12 of the integrand scale.
    const auto f = [&](double w) {
        const double r = w / p.cutoff;
        return 2.0 * p.mass_B * p.gamma0 * std::exp(-r * r) * std::cos(w * s);
    };
    return integrate(f, 0.0, 8.0 * p.cutoff, spec);
}

namespace {

// coth(x) with the small-x expansion 1/x + x/3 - x^3/45 to keep the
// integrand finite near w = 0.
double coth(double x) {
    if (std::fabs(x) < 1e-4) return 1.0 / x + x / 3.0 - x * x * x / 45.0;
    return 1.0 / std::tanh(x);
}

}  // namespace

double noise_kernel(double s, const ModelParams& p, const QuadratureSpec& spec) {
    if (s < 0.0) throw std::invalid_argument("noise_kernel: requires s >= 0");
    if (!(p.kT > 0.0)) throw std::invalid_argument("noise_kernel: requires kT > 0");
    const auto f = [&](double w) {
        return spectral_density(w, p) * coth(p.hbar * w / (2.0 * p.kT)) * std::cos(w * s);
    };
    return integrate(f, 0.0, 8.0 * p.cutoff, spec) / (2.0 * std::numbers::pi);
}

double eff_dissipation_kernel(double tau, const ModelParams& p, CaseId c) {
    const double Om = p.omega_B;
    const double pref = p.lambda_c * p.lambda_c / (2.0 * p.mass_B * Om);
    return case_kinds(c).b_kind == OscillatorKind::inverted ? pref * std::sinh(Om * tau)
                                                            : pref * std::sin(Om * tau);
}

double eff_noise_kernel(double tau, const ModelParams& p, CaseId c) {
    const double Om = p.omega_B;
    const double pref = p.lambda_c * p.lambda_c * p.sigma / (32.0 * p.hbar);
    return case_kinds(c).b_kind == OscillatorKind::inverted ? pref * std::cosh(Om * tau)
                                                            : pref * std::cos(Om * tau);
}

}  // namespace decoh
