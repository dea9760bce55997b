#pragma once

#include "decoh/model.hpp"
#include "decoh/numerics.hpp"

namespace decoh {

enum class EvalMethod { closed_form, quadrature };

/// Whether the Omega^2/(omega^2+Omega^2)^2 prefactor multiplies both terms
/// of D(t) or only the thermal (first) term. `both` is canonical.
enum class PrefactorScope { both, first_only };

struct DiffusionOptions {
    PrefactorScope scope = PrefactorScope::both;
    QuadratureSpec quadrature = {};
};

struct DiffusionValue {
    double t = 0.0;
    double value = 0.0;
    CaseId case_id = CaseId::a;
    EvalMethod method = EvalMethod::closed_form;
};

/// Normal-diffusion master-equation coefficient from the explicit
/// per-case expressions: thermal term (2 gamma0 kT lambda^2 / hbar)
/// int_0^t H dH/dt ds plus packet term (lambda^2 sigma / 32 hbar) times
/// the closed-form kernel integral, with the prefactor per `scope`.
double diffusion_closed(double t, const ModelParams& p, CaseId c,
                        const DiffusionOptions& opt = {});

/// Same coefficient assembled from first principles: the path difference
/// Delta q (via g) and its time derivative from the trajectories module,
/// and the effective noise kernel convolved with Delta x. Serves as an
/// independent route for cross-validation.
double diffusion_quadrature(double t, const ModelParams& p, CaseId c,
                            const DiffusionOptions& opt = {});

/// Uniform sampling of D(t) on [0, horizon]; points where the evaluation
/// is singular (caustics) or fails to converge become NaN gap markers.
TimeSeries diffusion_series(double horizon, std::size_t n, const ModelParams& p,
                            CaseId c, EvalMethod method = EvalMethod::closed_form,
                            const DiffusionOptions& opt = {});

namespace detail {
/// Unit-separation path-difference amplitude H(s,t) with g = (lambda/M_B) H;
/// exposed for tests. Resonance-safe for the equal-kind cases near
/// omega = Omega.
double path_amplitude(double s, double t, const ModelParams& p, CaseId c);
double path_amplitude_dt(double s, double t, const ModelParams& p, CaseId c);
/// int_0^t c_B(Omega u) c_A(omega u) du in closed form.
double packet_term_integral(double t, const ModelParams& p, CaseId c);
}  // namespace detail

}  // namespace decoh
