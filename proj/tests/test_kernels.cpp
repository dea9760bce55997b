#include <cmath>
#include <numbers>

#include "decoh/kernels.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace decoh;

namespace {

ModelParams bath_params() {
    ModelParams p;
    p.gamma0 = 0.05;
    p.kT = 100.0;
    p.cutoff = 10.0;
    return p;
}

}  // namespace

TEST_CASE("spectral density: Ohmic with gaussian cutoff") {
    const ModelParams p = bath_params();
    CHECK(spectral_density(0.0, p) == 0.0);
    CHECK_THROWS_AS(spectral_density(-1.0, p), std::invalid_argument);

    // argmax at cutoff/sqrt(2)
    const double wstar = p.cutoff / std::sqrt(2.0);
    const double peak = spectral_density(wstar, p);
    CHECK(peak > spectral_density(wstar * 0.99, p));
    CHECK(peak > spectral_density(wstar * 1.01, p));

    // Ohmic limit I(w)/w -> 2 M gamma0
    CHECK(spectral_density(1e-8, p) / 1e-8 ==
          doctest::Approx(2.0 * p.mass_B * p.gamma0).epsilon(1e-10));

    // nonnegative and strongly suppressed beyond the cutoff
    CHECK(spectral_density(5.0 * p.cutoff, p) < 1e-9 * peak);
}

TEST_CASE("gamma kernel closed-form value at zero lag") {
    const ModelParams p = bath_params();
    CHECK(gamma_kernel(0.0, p) ==
          doctest::Approx(p.mass_B * p.gamma0 * p.cutoff * std::sqrt(std::numbers::pi))
              .epsilon(1e-10));
}

TEST_CASE("gamma kernel decays at large lag") {
    const ModelParams p = bath_params();
    CHECK(std::fabs(gamma_kernel(50.0 / p.cutoff, p)) < 1e-8);
}

TEST_CASE("gamma kernel matches the oversampled fixed-grid oracle") {
    const ModelParams p = bath_params();
    const double s = 1.0 / p.cutoff;
    const auto ref = oracle::simpson(
        [&](double w) {
            return 2.0 * p.mass_B * p.gamma0 * std::exp(-w * w / (p.cutoff * p.cutoff)) *
                   std::cos(w * s);
        },
        0.0, 8.0 * p.cutoff, 40000);
    CHECK(std::fabs(gamma_kernel(s, p) - ref.value) < 1e-8);
}

TEST_CASE("noise kernel spot value against the oracle") {
    ModelParams p = bath_params();
    p.kT = 100.0;
    p.cutoff = 50.0;
    const double s = 0.1;
    const auto coth = [](double x) { return 1.0 / std::tanh(x); };
    const auto ref = oracle::simpson(
        [&](double w) {
            if (w == 0.0) w = 1e-12;
            return spectral_density(w, p) * coth(p.hbar * w / (2.0 * p.kT)) *
                   std::cos(w * s);
        },
        0.0, 8.0 * p.cutoff, 80000);
    const double got = noise_kernel(s, p);
    CHECK(std::fabs(got - ref.value / (2.0 * std::numbers::pi)) <
          1e-6 * std::fabs(got));
}

TEST_CASE("noise kernel requires a finite temperature") {
    ModelParams p = bath_params();
    p.kT = 0.0;
    CHECK_THROWS_AS(noise_kernel(0.1, p), std::invalid_argument);
}

TEST_CASE("high-temperature smearing reproduces the delta weight") {
    ModelParams p;
    p.gamma0 = 0.05;
    p.cutoff = 2.0;
    p.kT = 100.0 * p.hbar * p.cutoff;
    // smooth and flat on the kernel's width ~1/cutoff, f(0)=1
    const auto f = [](double s) { return 1.0 / (1.0 + s * s / 100.0); };
    QuadratureSpec loose;
    loose.abs_tol = 1e-6;
    loose.rel_tol = 1e-6;
    const double smeared =
        integrate([&](double s) { return noise_kernel(s, p) * f(s); }, 0.0, 6.0, loose);
    const double expected = (2.0 * p.mass_B * p.gamma0 * p.kT / p.hbar) * f(0.0) * 0.5;
    CHECK(std::fabs(smeared - expected) < 0.05 * expected);
}

TEST_CASE("effective dissipation kernel per case") {
    ModelParams p;
    p.lambda_c = 0.1;
    p.omega_B = 1.0;
    CHECK(eff_dissipation_kernel(0.0, p, CaseId::a) == 0.0);
    CHECK(eff_dissipation_kernel(0.0, p, CaseId::b) == 0.0);
    CHECK(eff_dissipation_kernel(1.0, p, CaseId::a) ==
          doctest::Approx(0.01 / 2.0 * std::sinh(1.0)).epsilon(1e-12));
    CHECK(eff_dissipation_kernel(1.0, p, CaseId::b) ==
          doctest::Approx(0.01 / 2.0 * std::sin(1.0)).epsilon(1e-12));
    // antisymmetry
    for (CaseId c : {CaseId::a, CaseId::b, CaseId::c, CaseId::d})
        CHECK(eff_dissipation_kernel(-0.7, p, c) ==
              doctest::Approx(-eff_dissipation_kernel(0.7, p, c)).epsilon(1e-12));
}

TEST_CASE("effective noise kernel per case") {
    ModelParams p;
    p.lambda_c = 0.1;
    p.omega_B = 1.0;
    p.sigma = 0.01;
    const double at0 = p.lambda_c * p.lambda_c * p.sigma / (32.0 * p.hbar);
    for (CaseId c : {CaseId::a, CaseId::b, CaseId::c, CaseId::d})
        CHECK(eff_noise_kernel(0.0, p, c) == doctest::Approx(at0).epsilon(1e-12));
    CHECK(eff_noise_kernel(std::numbers::pi, p, CaseId::b) ==
          doctest::Approx(-at0).epsilon(1e-12));
    // symmetry
    CHECK(eff_noise_kernel(-0.7, p, CaseId::a) ==
          doctest::Approx(eff_noise_kernel(0.7, p, CaseId::a)).epsilon(1e-12));
}

TEST_CASE("effective kernels share their zero-lag structure across B kinds") {
    ModelParams p;
    p.lambda_c = 0.2;
    p.omega_B = 1.7;
    // slope of the dissipation kernel at 0 is lambda^2/(2 M_B) for both kinds
    const double h = 1e-6;
    for (CaseId c : {CaseId::a, CaseId::b}) {
        const double slope =
            (eff_dissipation_kernel(h, p, c) - eff_dissipation_kernel(-h, p, c)) / (2.0 * h);
        CHECK(slope ==
              doctest::Approx(p.lambda_c * p.lambda_c / (2.0 * p.mass_B)).epsilon(1e-6));
    }
}
