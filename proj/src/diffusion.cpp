#include "decoh/diffusion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "decoh/kernels.hpp"
#include "decoh/trajectories.hpp"
#include "decoh/trig.hpp"

namespace decoh {

namespace {

constexpr double kResonanceWindow = 1e-5;  // relative |omega - Omega| gap
constexpr double kDegenerateScale = 1e-6;

double sinc(double x) {
    if (std::fabs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double sinhc(double x) {
    if (std::fabs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sinh(x) / x;
}

struct CaseCtx {
    TrigKit ka, kb;
    double w, Om;
};

CaseCtx make_ctx(const ModelParams& p, CaseId c) {
    const CaseKinds kinds = case_kinds(c);
    return {trig_kit(kinds.a_kind), trig_kit(kinds.b_kind), p.omega, p.omega_B};
}

double ratio_dt(const CaseCtx& x, double s, double t) {
    if (std::fabs(x.Om * t) < kDegenerateScale) return -s / (t * t);
    const double st = x.kb.s(x.Om * t);
    if (x.kb.e < 0.0 && std::fabs(st) < kDegenerateScale) throw CausticError(x.Om, t);
    return -x.Om * x.kb.s(x.Om * s) * x.kb.c(x.Om * t) / (st * st);
}

double ratio(const CaseCtx& x, double s, double t) {
    if (std::fabs(x.Om * t) < kDegenerateScale) return s / t;
    const double st = x.kb.s(x.Om * t);
    if (x.kb.e < 0.0 && std::fabs(st) < kDegenerateScale) throw CausticError(x.Om, t);
    return x.kb.s(x.Om * s) / st;
}

// Dimensionless path-difference structure function: the piece of
// Delta q_cl (unit endpoint separation for A, endpoint-independent part)
// before normalization. Vanishes at s = 0 and s = t.
double F1(const CaseCtx& x, double s, double t, double w) {
    const double R = ratio(x, s, t);
    const double C = x.kb.c(x.Om * t) * x.ka.c(w * t) - 1.0;
    return R * C - x.kb.c(x.Om * s) * x.ka.c(w * t) + x.ka.c(w * (t - s));
}

double F1_dt(const CaseCtx& x, double s, double t, double w) {
    const double R = ratio(x, s, t);
    const double Rt = ratio_dt(x, s, t);
    const double C = x.kb.c(x.Om * t) * x.ka.c(w * t) - 1.0;
    const double Ct = x.Om * x.kb.e * x.kb.s(x.Om * t) * x.ka.c(w * t) +
                      w * x.ka.e * x.kb.c(x.Om * t) * x.ka.s(w * t);
    return Rt * C + R * Ct - x.kb.c(x.Om * s) * w * x.ka.e * x.ka.s(w * t) +
           w * x.ka.e * x.ka.s(w * (t - s));
}

double F1_dw(const CaseCtx& x, double s, double t, double w) {
    const double R = ratio(x, s, t);
    return R * x.kb.c(x.Om * t) * t * x.ka.e * x.ka.s(w * t) -
           x.kb.c(x.Om * s) * t * x.ka.e * x.ka.s(w * t) +
           (t - s) * x.ka.e * x.ka.s(w * (t - s));
}

double F1_dw_dt(const CaseCtx& x, double s, double t, double w) {
    const double R = ratio(x, s, t);
    const double Rt = ratio_dt(x, s, t);
    return Rt * x.kb.c(x.Om * t) * t * x.ka.e * x.ka.s(w * t) +
           R * x.ka.e *
               (x.kb.e * x.Om * x.kb.s(x.Om * t) * t * x.ka.s(w * t) +
                x.kb.c(x.Om * t) * (x.ka.s(w * t) + t * w * x.ka.c(w * t))) -
           x.kb.c(x.Om * s) * x.ka.e * (x.ka.s(w * t) + t * w * x.ka.c(w * t)) +
           x.ka.e * (x.ka.s(w * (t - s)) + (t - s) * w * x.ka.c(w * (t - s)));
}

bool near_resonance(const CaseCtx& x) {
    // Only the equal-kind cases have a vanishing normalization at
    // omega = Omega; the mixed cases are safe everywhere.
    return x.ka.e == x.kb.e &&
           std::fabs(x.w - x.Om) < kResonanceWindow * std::max(x.w, x.Om);
}

}  // namespace

namespace detail {

double path_amplitude(double s, double t, const ModelParams& p, CaseId c) {
    const CaseCtx x = make_ctx(p, c);
    if (near_resonance(x)) {
        // 0/0 at omega = Omega; take d/d(omega^2) of numerator and
        // denominator at the midpoint frequency.
        const double wm = std::sqrt(0.5 * (x.w * x.w + x.Om * x.Om));
        return F1_dw(x, s, t, wm) / (-2.0 * x.ka.e * wm);
    }
    return F1(x, s, t, x.w) / (x.kb.e * x.Om * x.Om - x.ka.e * x.w * x.w);
}

double path_amplitude_dt(double s, double t, const ModelParams& p, CaseId c) {
    const CaseCtx x = make_ctx(p, c);
    if (near_resonance(x)) {
        const double wm = std::sqrt(0.5 * (x.w * x.w + x.Om * x.Om));
        return F1_dw_dt(x, s, t, wm) / (-2.0 * x.ka.e * wm);
    }
    return F1_dt(x, s, t, x.w) / (x.kb.e * x.Om * x.Om - x.ka.e * x.w * x.w);
}

double packet_term_integral(double t, const ModelParams& p, CaseId c) {
    const CaseKinds kinds = case_kinds(c);
    const double w = p.omega;
    const double Om = p.omega_B;
    const bool a_inv = kinds.a_kind == OscillatorKind::inverted;
    const bool b_inv = kinds.b_kind == OscillatorKind::inverted;
    if (b_inv && !a_inv)  // int cosh(Om u) cos(w u) du
        return (Om * std::sinh(Om * t) * std::cos(w * t) +
                w * std::cosh(Om * t) * std::sin(w * t)) /
               (Om * Om + w * w);
    if (!b_inv && a_inv)  // int cos(Om u) cosh(w u) du
        return (w * std::cos(Om * t) * std::sinh(w * t) +
                Om * std::sin(Om * t) * std::cosh(w * t)) /
               (Om * Om + w * w);
    if (!b_inv)  // int cos(Om u) cos(w u) du
        return 0.5 * t * (sinc((w - Om) * t) + sinc((w + Om) * t));
    // int cosh(Om u) cosh(w u) du
    return 0.5 * t * (sinhc((Om + w) * t) + sinhc((Om - w) * t));
}

}  // namespace detail

namespace {

double packet_prefactor(const ModelParams& p, const DiffusionOptions& opt) {
    const double base = p.lambda_c * p.lambda_c * p.sigma / (32.0 * p.hbar);
    if (opt.scope == PrefactorScope::first_only) return base;
    const double w2 = p.omega * p.omega;
    const double Om2 = p.omega_B * p.omega_B;
    const double sum = w2 + Om2;
    return base * Om2 / (sum * sum);
}

}  // namespace

double diffusion_closed(double t, const ModelParams& p, CaseId c,
                        const DiffusionOptions& opt) {
    p.require_valid();
    if (t < 0.0) throw std::invalid_argument("diffusion_closed: requires t >= 0");
    if (t == 0.0) return 0.0;

    double thermal = 0.0;
    const double weight = 2.0 * p.gamma0 * p.kT * p.lambda_c * p.lambda_c / p.hbar;
    if (weight != 0.0) {
        thermal = weight * integrate(
                               [&](double s) {
                                   return detail::path_amplitude(s, t, p, c) *
                                          detail::path_amplitude_dt(s, t, p, c);
                               },
                               0.0, t, opt.quadrature);
    } else if (case_kinds(c).b_kind == OscillatorKind::harmonic) {
        // Even without the thermal term, the path-difference structure is
        // undefined at caustics; keep the singularity surface consistent
        // between the two evaluation routes.
        (void)ratio(make_ctx(p, c), 0.0, t);
    }

    return thermal + packet_prefactor(p, opt) * detail::packet_term_integral(t, p, c);
}

double diffusion_quadrature(double t, const ModelParams& p, CaseId c,
                            const DiffusionOptions& opt) {
    p.require_valid();
    if (t < 0.0) throw std::invalid_argument("diffusion_quadrature: requires t >= 0");
    if (t == 0.0) return 0.0;

    const CaseKinds kinds = case_kinds(c);
    const DrivenSourceSpec source{kinds.a_kind, p.omega, 1.0};

    double thermal = 0.0;
    const double weight =
        2.0 * p.gamma0 * p.kT * p.mass_B * p.mass_B / p.hbar;
    if (weight != 0.0 && p.lambda_c != 0.0) {
        thermal = weight * integrate(
                               [&](double s) {
                                   return g_function(s, t, source, p, kinds.b_kind) *
                                          g_function_dt(s, t, source, p, kinds.b_kind);
                               },
                               0.0, t, opt.quadrature);
    } else if (kinds.b_kind == OscillatorKind::harmonic) {
        (void)boundary_ratio(0.0, t, kinds.b_kind, p.omega_B);
    }

    const double w2 = p.omega * p.omega;
    const double Om2 = p.omega_B * p.omega_B;
    const double sum = w2 + Om2;
    const double scope = opt.scope == PrefactorScope::both ? Om2 / (sum * sum) : 1.0;
    const double packet =
        scope * integrate(
                    [&](double s) {
                        return eff_noise_kernel(t - s, p, c) * source.shape(s, t);
                    },
                    0.0, t, opt.quadrature);
    return thermal + packet;
}

TimeSeries diffusion_series(double horizon, std::size_t n, const ModelParams& p,
                            CaseId c, EvalMethod method, const DiffusionOptions& opt) {
    if (!(horizon > 0.0)) throw std::invalid_argument("diffusion_series: horizon must be > 0");
    if (n < 2) throw std::invalid_argument("diffusion_series: need n >= 2");

    TimeSeries out;
    out.t0 = 0.0;
    out.dt = horizon / static_cast<double>(n - 1);
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = out.time_at(k);
        try {
            out.values[k] = method == EvalMethod::closed_form
                                ? diffusion_closed(t, p, c, opt)
                                : diffusion_quadrature(t, p, c, opt);
        } catch (const CausticError&) {
            out.values[k] = std::numeric_limits<double>::quiet_NaN();
        } catch (const QuadratureError&) {
            out.values[k] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return out;
}

}  // namespace decoh
