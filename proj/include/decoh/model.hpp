#pragma once

#include <optional>
#include <string>
#include <vector>

namespace decoh {

enum class CaseId { a, b, c, d };
enum class OscillatorKind { harmonic, inverted };

struct CaseKinds {
    OscillatorKind a_kind;  // subsystem A
    OscillatorKind b_kind;  // subsystem B
};

/// a: harmonic A + inverted B; b: inverted A + harmonic B;
/// c: both harmonic; d: both inverted.
CaseKinds case_kinds(CaseId c);

CaseId case_from_string(const std::string& s);
std::string case_to_string(CaseId c);

/// Physical constants of the composite system and bath.
/// Units: hbar = k_B = 1 by default, masses 1.
struct ModelParams {
    double omega = 1.0;      // subsystem A frequency
    double omega_B = 1.0;    // subsystem B frequency
    double lambda_c = 0.1;   // A-B bilinear coupling
    double gamma0 = 0.0;     // bath damping constant
    double kT = 0.0;         // bath temperature energy
    double sigma = 0.01;     // squared-width parameter of B's initial packet
    std::optional<double> sigma_A;   // A packet position dispersion; default sigma
    std::optional<double> sigma_p0;  // A packet momentum width; default sqrt(hbar*M_A*omega/2)
    double hbar = 1.0;
    double mass_A = 1.0;
    double mass_B = 1.0;
    double cutoff = 10.0;    // bath cutoff frequency

    double sigma_A_eff() const;
    double sigma_p0_eff() const;

    /// Hard-errors on non-finite / non-positive required fields.
    void require_valid() const;
};

struct RegimeReport {
    bool underdamped_ok = true;
    bool high_T_ok = true;
    std::vector<std::string> messages;
};

/// Checks the regime assumptions the diffusion formulas rely on.
/// Warns (never throws) when gamma0 or kT fall outside the
/// underdamped / high-temperature windows.
RegimeReport validate(const ModelParams& p);

}  // namespace decoh
