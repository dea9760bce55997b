#pragma once

#include "decoh/model.hpp"
#include "decoh/numerics.hpp"

namespace decoh {

enum class KernelKind { noise, dissipation, gamma, eff_noise, eff_dissipation };

struct KernelSample {
    double lag = 0.0;
    double value = 0.0;
    KernelKind kind = KernelKind::noise;
    std::optional<CaseId> case_id;  // required for eff_* kinds
};

/// Ohmic spectral density I(w) = 2 M_B gamma0 w exp(-w^2/cutoff^2).
double spectral_density(double w, const ModelParams& p);

/// gamma(s) = int_0^inf dw I(w)/w cos(w s), by quadrature over [0, 8*cutoff].
double gamma_kernel(double s, const ModelParams& p, const QuadratureSpec& spec = {});

/// nu(s) = (1/2pi) int_0^inf dw I(w) coth(hbar w / 2 kT) cos(w s).
/// The 1/(2pi) Fourier measure makes the high-T limit exactly
/// nu(s) -> (2 M_B gamma0 kT / hbar) delta(s).
double noise_kernel(double s, const ModelParams& p, const QuadratureSpec& spec = {});

/// Effective A-level dissipation kernel after averaging over B:
/// (lambda^2 / 2 M_B Omega) * sinh(Omega tau) for inverted B,
/// sin for harmonic B (Omega -> i Omega mapping).
double eff_dissipation_kernel(double tau, const ModelParams& p, CaseId c);

/// Effective A-level noise kernel: (lambda^2 sigma / 32 hbar) * cosh(Omega tau)
/// for inverted B, cos for harmonic B.
double eff_noise_kernel(double tau, const ModelParams& p, CaseId c);

}  // namespace decoh
