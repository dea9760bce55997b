#include "decoh/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace decoh {

void TimeSeries::require_valid() const {
    if (!(dt > 0.0)) throw std::invalid_argument("TimeSeries: dt must be > 0");
    if (values.empty()) throw std::invalid_argument("TimeSeries: values must be non-empty");
}

void QuadratureSpec::require_valid() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
}

namespace {

// QUADPACK dqk15 abscissae/weights. xgk odd entries are the embedded
// 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double integral;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(mid);
    if (!std::isfinite(fc)) throw std::domain_error("integrate: integrand not finite");
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;

    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        if (!std::isfinite(f1) || !std::isfinite(f2))
            throw std::domain_error("integrate: integrand not finite");
        k15 += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) g7 += kWg[i / 2] * (f1 + f2);
    }
    k15 *= half;
    g7 *= half;
    return Segment{a, b, k15, std::fabs(k15 - g7)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    spec.require_valid();
    if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
    if (a == b) return 0.0;

    std::priority_queue<Segment> segments;
    segments.push(gauss_kronrod_15(f, a, b));
    double total = segments.top().integral;
    double total_err = segments.top().error;

    int used = 1;
    while (true) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
        if (total_err <= tol) return total;
        if (used >= spec.max_subdivisions) break;

        Segment worst = segments.top();
        segments.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gauss_kronrod_15(f, worst.a, mid);
        Segment right = gauss_kronrod_15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        segments.push(left);
        segments.push(right);
        ++used;
    }
    throw QuadratureError("integrate: tolerance not reached after " +
                              std::to_string(spec.max_subdivisions) + " subdivisions",
                          total, total_err);
}

TimeSeries cumulative_integral(const TimeSeries& s) {
    s.require_valid();
    TimeSeries out;
    out.t0 = s.t0;
    out.dt = s.dt;
    out.values.resize(s.size());
    out.values[0] = 0.0;
    for (std::size_t k = 1; k < s.size(); ++k)
        out.values[k] = out.values[k - 1] + 0.5 * s.dt * (s.values[k - 1] + s.values[k]);
    return out;
}

std::optional<double> find_first_crossing(const TimeSeries& s, double threshold,
                                          Crossing direction) {
    s.require_valid();
    for (std::size_t k = 1; k < s.size(); ++k) {
        const double v0 = s.values[k - 1];
        const double v1 = s.values[k];
        if (std::isnan(v0) || std::isnan(v1)) continue;
        const bool crossed = direction == Crossing::falling
                                 ? (v0 > threshold && v1 <= threshold)
                                 : (v0 < threshold && v1 >= threshold);
        if (!crossed) continue;
        const double frac = v1 == v0 ? 0.0 : (threshold - v0) / (v1 - v0);
        return s.time_at(k - 1) + frac * s.dt;
    }
    return std::nullopt;
}

}  // namespace decoh
