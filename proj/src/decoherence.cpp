#include "decoh/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace decoh {

namespace {

// Linear interpolation across interior NaN runs; returns the indices that
// were gaps so Gamma can be marked there.
std::vector<std::size_t> bridge_gaps(TimeSeries& s) {
    std::vector<std::size_t> gaps;
    const std::size_t n = s.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isnan(s.values[k])) continue;
        gaps.push_back(k);
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isnan(s.values[k])) continue;
        std::size_t lo = k;
        std::size_t hi = k;
        while (hi + 1 < n && std::isnan(s.values[hi + 1])) ++hi;
        if (lo == 0 || hi + 1 >= n)
            throw std::runtime_error("gamma_factor: diffusion series has a gap at a "
                                     "grid boundary; adjust the horizon or grid");
        const double v0 = s.values[lo - 1];
        const double v1 = s.values[hi + 1];
        const double span = static_cast<double>(hi + 2 - lo);
        for (std::size_t j = lo; j <= hi; ++j)
            s.values[j] = v0 + (v1 - v0) * static_cast<double>(j + 1 - lo) / span;
        k = hi;
    }
    return gaps;
}

}  // namespace

TimeSeries diffusion_exponent(double horizon, std::size_t n, const ModelParams& p,
                              CaseId c, EvalMethod method, const DiffusionOptions& opt) {
    TimeSeries d = diffusion_series(horizon, n, p, c, method, opt);
    bridge_gaps(d);
    return cumulative_integral(d);
}

TimeSeries gamma_factor(double horizon, std::size_t n, const ModelParams& p, CaseId c,
                        double multiplier, EvalMethod method,
                        const DiffusionOptions& opt) {
    TimeSeries d = diffusion_series(horizon, n, p, c, method, opt);
    const std::vector<std::size_t> gaps = bridge_gaps(d);
    const TimeSeries cum = cumulative_integral(d);

    TimeSeries out;
    out.t0 = cum.t0;
    out.dt = cum.dt;
    out.values.resize(cum.size());
    for (std::size_t k = 0; k < cum.size(); ++k)
        out.values[k] = std::exp(-multiplier * cum.values[k]);
    for (std::size_t k : gaps) out.values[k] = std::numeric_limits<double>::quiet_NaN();
    return out;
}

std::optional<double> t_dec_threshold(const TimeSeries& gamma_series, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("t_dec_threshold: epsilon must lie in (0, 1)");
    return find_first_crossing(gamma_series, epsilon, Crossing::falling);
}

UnstableEstimate t_dec_unstable(const ModelParams& p, CaseId c,
                                const UnstablePolicy& policy,
                                const DiffusionOptions& opt) {
    p.require_valid();
    if (case_kinds(c).a_kind != OscillatorKind::inverted)
        throw std::invalid_argument(
            "t_dec_unstable: only the inverted-A cases (b, d) have an instability "
            "time scale");

    UnstableEstimate est;
    est.lyapunov = 2.0 * p.omega * p.omega;

    const auto d_at = [&](double t) { return diffusion_closed(t, p, c, opt); };

    const auto sigma_c_of = [&](double d_ref) {
        if (!(d_ref > 0.0))
            throw std::runtime_error(
                "t_dec_unstable: reference diffusion is not positive (no diffusion, "
                "no decoherence time)");
        return std::sqrt(2.0 * d_ref / est.lyapunov);
    };
    const auto log_term = [&](double sigma_c) {
        return std::log(p.sigma_p0_eff() / sigma_c) / est.lyapunov;
    };

    std::optional<double> t_thr;
    std::optional<double> t_half;
    if (!policy.d_ref_time || policy.t_max_mode == UnstablePolicy::TMaxMode::half_threshold) {
        const TimeSeries gamma = gamma_factor(policy.horizon, policy.points, p, c, 1.0,
                                              EvalMethod::closed_form, opt);
        t_thr = t_dec_threshold(gamma, policy.epsilon);
        t_half = t_dec_threshold(gamma, 0.5);
    }

    if (policy.d_ref_time) {
        est.d_ref = d_at(*policy.d_ref_time);
        est.sigma_c = sigma_c_of(est.d_ref);
    } else {
        if (!t_thr)
            throw std::runtime_error(
                "t_dec_unstable: Gamma never crossed epsilon within the policy "
                "horizon; no reference time for D");
        // First pass at the threshold time, then one fixed-point refinement
        // at the resulting estimate.
        double t_ref = *t_thr;
        est.d_ref = d_at(t_ref);
        est.sigma_c = sigma_c_of(est.d_ref);
        const double t_c0 = log_term(est.sigma_c);
        t_ref = std::clamp(2.0 * t_c0, 0.0, policy.horizon);
        if (t_ref > 0.0) {
            est.d_ref = d_at(t_ref);
            est.sigma_c = sigma_c_of(est.d_ref);
        }
    }

    const double t_c = log_term(est.sigma_c);
    switch (policy.t_max_mode) {
        case UnstablePolicy::TMaxMode::critical:
            est.t_max = t_c;
            break;
        case UnstablePolicy::TMaxMode::half_threshold:
            if (!t_half)
                throw std::runtime_error(
                    "t_dec_unstable: Gamma never crossed 1/2 within the policy horizon");
            est.t_max = *t_half;
            break;
        case UnstablePolicy::TMaxMode::fixed:
            if (!policy.t_max_fixed)
                throw std::invalid_argument(
                    "t_dec_unstable: fixed t_max mode requires t_max_fixed");
            est.t_max = *policy.t_max_fixed;
            break;
    }
    est.t_D = est.t_max + t_c;
    return est;
}

std::optional<double> t_dec_harmonic(const ModelParams& p, CaseId c, double horizon,
                                     std::size_t n, std::optional<double> L,
                                     const DiffusionOptions& opt) {
    p.require_valid();
    if (case_kinds(c).a_kind != OscillatorKind::harmonic)
        throw std::invalid_argument(
            "t_dec_harmonic: only the harmonic-A cases (a, c) use the distance-scale "
            "rule");
    const double length = L.value_or(2.0 * p.sigma_A_eff());
    if (!(length > 0.0))
        throw std::invalid_argument("t_dec_harmonic: L must be > 0");

    TimeSeries d = diffusion_series(horizon, n, p, c, EvalMethod::closed_form, opt);
    bridge_gaps(d);
    TimeSeries cum = cumulative_integral(d);
    for (double& v : cum.values) v *= length * length;
    return find_first_crossing(cum, 1.0, Crossing::rising);
}

DecoherenceReport decoherence_report(const ModelParams& p, CaseId c, double horizon,
                                     std::size_t n, double epsilon,
                                     const DiffusionOptions& opt) {
    DecoherenceReport r;
    r.case_id = c;
    r.gamma_series = gamma_factor(horizon, n, p, c, 1.0, EvalMethod::closed_form, opt);
    r.t_D_threshold = t_dec_threshold(r.gamma_series, epsilon);

    if (case_kinds(c).a_kind == OscillatorKind::inverted) {
        UnstablePolicy policy;
        policy.horizon = horizon;
        policy.points = n;
        policy.epsilon = epsilon;
        try {
            const UnstableEstimate est = t_dec_unstable(p, c, policy, opt);
            r.t_D_analytic = est.t_D;
            r.lyapunov = est.lyapunov;
            r.sigma_c = est.sigma_c;
        } catch (const std::exception& e) {
            r.lyapunov = 2.0 * p.omega * p.omega;
            r.notes.push_back(std::string("analytic estimator unavailable: ") + e.what());
        }
    } else {
        try {
            r.t_D_analytic = t_dec_harmonic(p, c, horizon, n, std::nullopt, opt);
        } catch (const std::exception& e) {
            r.notes.push_back(std::string("analytic estimator unavailable: ") + e.what());
        }
    }
    if (!r.t_D_threshold)
        r.notes.push_back("Gamma stayed above epsilon within the horizon");
    return r;
}

}  // namespace decoh
