#include "decoh/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace decoh {

CaseKinds case_kinds(CaseId c) {
    switch (c) {
        case CaseId::a: return {OscillatorKind::harmonic, OscillatorKind::inverted};
        case CaseId::b: return {OscillatorKind::inverted, OscillatorKind::harmonic};
        case CaseId::c: return {OscillatorKind::harmonic, OscillatorKind::harmonic};
        case CaseId::d: return {OscillatorKind::inverted, OscillatorKind::inverted};
    }
    throw std::invalid_argument("case_kinds: bad CaseId");
}

CaseId case_from_string(const std::string& s) {
    if (s == "a") return CaseId::a;
    if (s == "b") return CaseId::b;
    if (s == "c") return CaseId::c;
    if (s == "d") return CaseId::d;
    throw std::invalid_argument("unknown case tag '" + s + "' (expected a, b, c or d)");
}

std::string case_to_string(CaseId c) {
    switch (c) {
        case CaseId::a: return "a";
        case CaseId::b: return "b";
        case CaseId::c: return "c";
        case CaseId::d: return "d";
    }
    return "?";
}

double ModelParams::sigma_A_eff() const { return sigma_A.value_or(sigma); }

double ModelParams::sigma_p0_eff() const {
    return sigma_p0 ? *sigma_p0 : std::sqrt(hbar * mass_A * omega / 2.0);
}

namespace {

void check_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw std::invalid_argument(std::string("ModelParams: field '") + name +
                                    "' must be finite and > 0");
}

void check_nonneg(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument(std::string("ModelParams: field '") + name +
                                    "' must be finite and >= 0");
}

}  // namespace

void ModelParams::require_valid() const {
    check_positive(omega, "omega");
    check_positive(omega_B, "omega_B");
    check_positive(sigma, "sigma");
    check_positive(hbar, "hbar");
    check_positive(mass_A, "mass_A");
    check_positive(mass_B, "mass_B");
    check_positive(cutoff, "cutoff");
    check_nonneg(gamma0, "gamma0");
    check_nonneg(kT, "kT");
    if (!std::isfinite(lambda_c))
        throw std::invalid_argument("ModelParams: field 'lambda' must be finite");
    if (sigma_A) check_positive(*sigma_A, "sigma_A");
    if (sigma_p0) check_positive(*sigma_p0, "sigma_p0");
}

RegimeReport validate(const ModelParams& p) {
    p.require_valid();
    RegimeReport r;

    const double fmin = std::min(p.omega, p.omega_B);
    const double fmax = std::max(p.omega, p.omega_B);

    r.underdamped_ok = p.gamma0 <= 0.1 * fmin;
    if (!r.underdamped_ok)
        r.messages.push_back("gamma0 exceeds 0.1*min(omega, omega_B): outside the "
                             "underdamped regime the formulas assume");

    // With gamma0 = 0 the bath decouples and temperature is irrelevant.
    r.high_T_ok = p.gamma0 == 0.0 || p.kT >= 10.0 * p.hbar * fmax;
    if (!r.high_T_ok)
        r.messages.push_back("kT below 10*hbar*max(omega, omega_B): outside the "
                             "high-temperature regime the formulas assume");

    return r;
}

}  // namespace decoh
