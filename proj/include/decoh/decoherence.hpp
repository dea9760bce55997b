#pragma once

#include "decoh/diffusion.hpp"
#include "decoh/model.hpp"
#include "decoh/numerics.hpp"

namespace decoh {

/// Decoherence factor Gamma(t) = exp(-multiplier * int_0^t D), sampled on a
/// uniform grid. `multiplier` is the squared coherence separation
/// (x_f - x_f')^2; the exponent is linear in it. Interior caustic gaps in
/// the D series are bridged by linear interpolation for the running
/// integral, but stay NaN in the returned Gamma samples.
TimeSeries gamma_factor(double horizon, std::size_t n, const ModelParams& p, CaseId c,
                        double multiplier = 1.0,
                        EvalMethod method = EvalMethod::closed_form,
                        const DiffusionOptions& opt = {});

/// Running integral int_0^t D with interior caustic gaps bridged by linear
/// interpolation; the exponent of the decoherence factor. Kept separate so
/// callers needing large exponents avoid exp() underflow.
TimeSeries diffusion_exponent(double horizon, std::size_t n, const ModelParams& p,
                              CaseId c, EvalMethod method = EvalMethod::closed_form,
                              const DiffusionOptions& opt = {});

/// First time Gamma falls below epsilon; none if it stays above within the
/// sampled horizon.
std::optional<double> t_dec_threshold(const TimeSeries& gamma_series, double epsilon);

struct UnstablePolicy {
    enum class TMaxMode {
        critical,        // t_max = t_c, so t_D = 2 t_c
        half_threshold,  // t_max = first crossing of Gamma below 1/2
        fixed,           // t_max = t_max_fixed
    };
    TMaxMode t_max_mode = TMaxMode::critical;
    std::optional<double> t_max_fixed;
    /// Fixed evaluation time for the reference diffusion value. When unset,
    /// D_ref is taken at the first-pass threshold time and refined by one
    /// fixed-point iteration.
    std::optional<double> d_ref_time;
    double horizon = 25.0;
    std::size_t points = 4096;
    double epsilon = 0.01;
};

struct UnstableEstimate {
    double t_D = 0.0;
    double sigma_c = 0.0;   // critical packet width sqrt(2 D_ref / lyapunov)
    double lyapunov = 0.0;  // 2 omega^2 for the inverted A oscillator
    double d_ref = 0.0;
    double t_max = 0.0;
};

/// Analytic decoherence-time estimator for the unstable (inverted-A)
/// cases b and d: t_D = t_max + (1/Lyap) ln(sigma_p0 / sigma_c).
UnstableEstimate t_dec_unstable(const ModelParams& p, CaseId c,
                                const UnstablePolicy& policy = {},
                                const DiffusionOptions& opt = {});

/// Analytic decoherence-time estimator for the harmonic-A cases a and c:
/// smallest t with L^2 int_0^t D >= 1 (L defaults to 2*sigma_A).
std::optional<double> t_dec_harmonic(const ModelParams& p, CaseId c, double horizon,
                                     std::size_t n,
                                     std::optional<double> L = std::nullopt,
                                     const DiffusionOptions& opt = {});

struct DecoherenceReport {
    CaseId case_id = CaseId::a;
    TimeSeries gamma_series;
    std::optional<double> t_D_threshold;
    std::optional<double> t_D_analytic;
    std::optional<double> lyapunov;  // inverted-A cases only
    std::optional<double> sigma_c;   // inverted-A cases only
    std::vector<std::string> notes;
};

DecoherenceReport decoherence_report(const ModelParams& p, CaseId c, double horizon,
                                     std::size_t n, double epsilon,
                                     const DiffusionOptions& opt = {});

}  // namespace decoh
