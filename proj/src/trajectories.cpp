#include "decoh/trajectories.hpp"

#include <cmath>

#include "decoh/trig.hpp"

namespace decoh {

namespace {

constexpr double kDegenerateScale = 1e-6;  // on |frequency * t| and |sin(frequency t)|

std::string caustic_message(double frequency, double t) {
    return "caustic boundary-value problem: sin(" + std::to_string(frequency) + " * " +
           std::to_string(t) + ") vanishes";
}

}  // namespace

CausticError::CausticError(double frequency_, double t_)
    : std::runtime_error(caustic_message(frequency_, t_)), frequency(frequency_), t(t_) {}

double boundary_ratio(double num, double den, OscillatorKind kind, double freq) {
    if (std::fabs(freq * den) < kDegenerateScale) return num / den;
    const TrigKit k = trig_kit(kind);
    const double d = k.s(freq * den);
    if (kind == OscillatorKind::harmonic && std::fabs(d) < kDegenerateScale)
        throw CausticError(freq, den);
    return k.s(freq * num) / d;
}

double DrivenSourceSpec::shape(double u, double t) const {
    return amplitude * trig_kit(a_kind).c(omega * (t - u));
}

double DrivenSourceSpec::shape_dt(double u, double t) const {
    const TrigKit k = trig_kit(a_kind);
    return amplitude * omega * k.e * k.s(omega * (t - u));
}

double x_classical(double s, double t, double x0, double xf, OscillatorKind kind,
                   double omega) {
    return x0 * boundary_ratio(t - s, t, kind, omega) +
           xf * boundary_ratio(s, t, kind, omega);
}

BoundaryPath sample_x_path(double t, std::size_t n, double x0, double xf,
                           OscillatorKind kind, double omega) {
    BoundaryPath path;
    path.t_final = t;
    path.endpoint_start = x0;
    path.endpoint_end = xf;
    path.kind = kind;
    path.frequency = omega;
    path.samples.t0 = 0.0;
    path.samples.dt = t / static_cast<double>(n - 1);
    path.samples.values.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        path.samples.values[k] = x_classical(path.samples.time_at(k), t, x0, xf, kind, omega);
    return path;
}

double q_classical(double s, double t, double q0, double qf, OscillatorKind bkind,
                   double Omega, const DrivenSourceSpec& source, const ModelParams& p) {
    const double homogeneous = q0 * boundary_ratio(t - s, t, bkind, Omega) +
                               qf * boundary_ratio(s, t, bkind, Omega);
    if (source.amplitude == 0.0 || p.lambda_c == 0.0) return homogeneous;

    const TrigKit kb = trig_kit(bkind);
    const double I1 = integrate(
        [&](double u) { return source.shape(u, t) * kb.s(Omega * (s - u)); }, 0.0, s);
    const double I2 = integrate(
        [&](double u) { return source.shape(u, t) * kb.s(Omega * (t - u)); }, 0.0, t);
    const double R = boundary_ratio(s, t, bkind, Omega);
    return homogeneous + p.lambda_c / (p.mass_B * Omega) * (I1 - R * I2);
}

double g_function(double s, double t, const DrivenSourceSpec& source,
                  const ModelParams& p, OscillatorKind bkind) {
    const double Omega = p.omega_B;
    const TrigKit kb = trig_kit(bkind);
    const double I1 = integrate(
        [&](double u) { return source.shape(u, t) * kb.s(Omega * (s - u)); }, 0.0, s);
    const double I2 = integrate(
        [&](double u) { return source.shape(u, t) * kb.s(Omega * (t - u)); }, 0.0, t);
    const double R = boundary_ratio(s, t, bkind, Omega);
    return p.lambda_c / (p.mass_B * Omega) * (I1 - R * I2);
}

double g_function_dt(double s, double t, const DrivenSourceSpec& source,
                     const ModelParams& p, OscillatorKind bkind) {
    const double Omega = p.omega_B;
    const TrigKit kb = trig_kit(bkind);

    const double I1t = integrate(
        [&](double u) { return source.shape_dt(u, t) * kb.s(Omega * (s - u)); }, 0.0, s);
    const double I2 = integrate(
        [&](double u) { return source.shape(u, t) * kb.s(Omega * (t - u)); }, 0.0, t);
    // d/dt of int_0^t shape * s(Om(t-u)) du: the boundary term carries s(0) = 0.
    const double I2t = integrate(
        [&](double u) {
            return source.shape_dt(u, t) * kb.s(Omega * (t - u)) +
                   source.shape(u, t) * Omega * kb.c(Omega * (t - u));
        },
        0.0, t);

    const double R = boundary_ratio(s, t, bkind, Omega);
    double Rt;
    if (std::fabs(Omega * t) < kDegenerateScale) {
        Rt = -s / (t * t);
    } else {
        const double st = kb.s(Omega * t);
        if (bkind == OscillatorKind::harmonic && std::fabs(st) < kDegenerateScale)
            throw CausticError(Omega, t);
        Rt = -Omega * kb.s(Omega * s) * kb.c(Omega * t) / (st * st);
    }
    return p.lambda_c / (p.mass_B * Omega) * (I1t - Rt * I2 - R * I2t);
}

double delta_q(double s, double t, double dq0, const DrivenSourceSpec& source,
               const ModelParams& p, OscillatorKind bkind) {
    return dq0 * boundary_ratio(t - s, t, bkind, p.omega_B) +
           g_function(s, t, source, p, bkind);
}

}  // namespace decoh
