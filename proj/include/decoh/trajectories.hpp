#pragma once

#include "decoh/model.hpp"
#include "decoh/numerics.hpp"

namespace decoh {

/// Raised when a harmonic boundary-value problem is requested at (or too
/// close to) a caustic, where sin(frequency * t) vanishes and endpoint
/// conditions no longer determine a solution.
class CausticError : public std::runtime_error {
public:
    CausticError(double frequency, double t);
    double frequency;
    double t;
};

/// Drive entering B's equation of motion: the difference of A's classical
/// endpoint-conditioned paths, normalized to unit endpoint separation.
/// Its shape is amplitude * cos(omega (t - u)) for harmonic A and
/// amplitude * cosh(omega (t - u)) for inverted A (caustic-free in u).
struct DrivenSourceSpec {
    OscillatorKind a_kind = OscillatorKind::harmonic;
    double omega = 1.0;
    double amplitude = 1.0;  // endpoint separation x_f - x_f'

    double shape(double u, double t) const;
    /// Partial derivative of shape with respect to the horizon t.
    double shape_dt(double u, double t) const;
};

struct BoundaryPath {
    double t_final = 0.0;
    double endpoint_start = 0.0;
    double endpoint_end = 0.0;
    OscillatorKind kind = OscillatorKind::harmonic;
    double frequency = 0.0;
    TimeSeries samples;
};

/// Classical endpoint-conditioned path of a free (undriven) oscillator:
/// x0 s(w(t-s))/s(wt) + xf s(ws)/s(wt) with s = sin or sinh per kind.
double x_classical(double s, double t, double x0, double xf, OscillatorKind kind,
                   double omega);

BoundaryPath sample_x_path(double t, std::size_t n, double x0, double xf,
                           OscillatorKind kind, double omega);

/// B's endpoint-conditioned path driven by A through the bilinear coupling:
/// homogeneous boundary part plus lambda/(M_B Omega) convolution terms.
double q_classical(double s, double t, double q0, double qf, OscillatorKind bkind,
                   double Omega, const DrivenSourceSpec& source, const ModelParams& p);

/// Endpoint-independent part of the path difference Delta q_cl:
/// g(s,t) = (lambda/(M_B Omega)) [ int_0^s dx(u) s(Om(s-u)) du
///          - (s(Om s)/s(Om t)) int_0^t dx(u) s(Om(t-u)) du ].
/// Vanishes at s = 0 and s = t.
double g_function(double s, double t, const DrivenSourceSpec& source,
                  const ModelParams& p, OscillatorKind bkind);

/// Partial derivative of g_function with respect to the horizon t
/// (the source shape also depends on t).
double g_function_dt(double s, double t, const DrivenSourceSpec& source,
                     const ModelParams& p, OscillatorKind bkind);

/// Delta q_cl(s) = dq0 * s(Om(t-s))/s(Om t) + g(s,t).
double delta_q(double s, double t, double dq0, const DrivenSourceSpec& source,
               const ModelParams& p, OscillatorKind bkind);

/// Ratio s(f*num)/s(f*den) with the series fallback num/den for
/// f*den below the degeneracy scale; throws CausticError for harmonic
/// kind at caustics.
double boundary_ratio(double num, double den, OscillatorKind kind, double freq);

}  // namespace decoh
