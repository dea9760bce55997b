#include "decoh/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace decoh {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write to " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace

void RunConfig::require_valid() const {
    params.require_valid();
    if (cases.empty()) throw std::invalid_argument("config: case list is empty");
    if (points < 2) throw std::invalid_argument("config: points must be >= 2");
    if (!(horizon > 0.0)) throw std::invalid_argument("config: horizon must be > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("config: epsilon must lie in (0, 1)");
}

void apply_config_json(RunConfig& cfg, const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "omega") cfg.params.omega = value.get<double>();
        else if (key == "omega_B") cfg.params.omega_B = value.get<double>();
        else if (key == "lambda") cfg.params.lambda_c = value.get<double>();
        else if (key == "gamma0") cfg.params.gamma0 = value.get<double>();
        else if (key == "kT") cfg.params.kT = value.get<double>();
        else if (key == "sigma") cfg.params.sigma = value.get<double>();
        else if (key == "sigma_A") cfg.params.sigma_A = value.get<double>();
        else if (key == "sigma_p0") cfg.params.sigma_p0 = value.get<double>();
        else if (key == "hbar") cfg.params.hbar = value.get<double>();
        else if (key == "mass_A") cfg.params.mass_A = value.get<double>();
        else if (key == "mass_B") cfg.params.mass_B = value.get<double>();
        else if (key == "cutoff") cfg.params.cutoff = value.get<double>();
        else if (key == "case") {
            cfg.cases.clear();
            if (value.is_array()) {
                for (const auto& item : value)
                    cfg.cases.push_back(case_from_string(item.get<std::string>()));
            } else {
                for (char ch : value.get<std::string>())
                    cfg.cases.push_back(case_from_string(std::string(1, ch)));
            }
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    apply_config_json(base, text);
    return base;
}

namespace {

std::string diffusion_csv(const RunConfig& cfg, const std::vector<CaseId>& cases,
                          double horizon, std::size_t points) {
    const DiffusionOptions opt = cfg.diffusion_options();
    std::string out = "t,case,method,D\n";
    double max_rel_gap = 0.0;
    for (CaseId c : cases) {
        std::vector<std::pair<const char*, TimeSeries>> blocks;
        if (cfg.method != RunMethod::quadrature)
            blocks.emplace_back("closed_form", diffusion_series(horizon, points, cfg.params,
                                                                c, EvalMethod::closed_form, opt));
        if (cfg.method != RunMethod::closed_form)
            blocks.emplace_back("quadrature", diffusion_series(horizon, points, cfg.params,
                                                               c, EvalMethod::quadrature, opt));
        for (const auto& [name, series] : blocks) {
            for (std::size_t k = 0; k < series.size(); ++k) {
                out += num(series.time_at(k));
                out += ',';
                out += case_to_string(c);
                out += ',';
                out += name;
                out += ',';
                if (!std::isnan(series.values[k])) out += num(series.values[k]);
                out += '\n';
            }
        }
        if (blocks.size() == 2) {
            for (std::size_t k = 0; k < blocks[0].second.size(); ++k) {
                const double a = blocks[0].second.values[k];
                const double b = blocks[1].second.values[k];
                if (std::isnan(a) || std::isnan(b)) continue;
                max_rel_gap = std::max(max_rel_gap,
                                       std::fabs(a - b) / std::max(std::fabs(a), 1e-12));
            }
        }
    }
    if (cfg.method == RunMethod::both)
        std::cerr << "max relative closed/quadrature gap: " << num(max_rel_gap) << "\n";
    return out;
}

}  // namespace

void cmd_diffusion(const RunConfig& cfg) {
    cfg.require_valid();
    if (cfg.output_path.empty())
        throw std::invalid_argument("diffusion: output path required");
    atomic_write(cfg.output_path,
                 diffusion_csv(cfg, cfg.cases, cfg.horizon, cfg.points));
}

void cmd_gamma(const RunConfig& cfg) {
    cfg.require_valid();
    if (cfg.output_path.empty())
        throw std::invalid_argument("gamma: output path required");
    const DiffusionOptions opt = cfg.diffusion_options();

    std::string out = "t,case,Gamma\n";
    nlohmann::ordered_json sidecar = nlohmann::ordered_json::object();
    for (CaseId c : cfg.cases) {
        const DecoherenceReport report =
            decoherence_report(cfg.params, c, cfg.horizon, cfg.points, cfg.epsilon, opt);
        const TimeSeries& g = report.gamma_series;
        for (std::size_t k = 0; k < g.size(); ++k) {
            out += num(g.time_at(k));
            out += ',';
            out += case_to_string(c);
            out += ',';
            if (!std::isnan(g.values[k])) out += num(g.values[k]);
            out += '\n';
        }
        nlohmann::ordered_json entry;
        entry["t_threshold"] =
            report.t_D_threshold ? nlohmann::ordered_json(*report.t_D_threshold) : nullptr;
        entry["t_analytic"] =
            report.t_D_analytic ? nlohmann::ordered_json(*report.t_D_analytic) : nullptr;
        entry["sigma_c"] = report.sigma_c ? nlohmann::ordered_json(*report.sigma_c) : nullptr;
        entry["lyapunov"] =
            report.lyapunov ? nlohmann::ordered_json(*report.lyapunov) : nullptr;
        sidecar[case_to_string(c)] = entry;
    }
    atomic_write(cfg.output_path, out);

    std::filesystem::path sidecar_path(cfg.output_path);
    sidecar_path.replace_extension(".json");
    atomic_write(sidecar_path.string(), sidecar.dump(2) + "\n");
}

namespace {

ModelParams figure_params(const RunConfig& base, double g0kT, double w, double Om) {
    ModelParams p = base.params;
    p.omega = w;
    p.omega_B = Om;
    if (g0kT == 0.0) {
        p.gamma0 = 0.0;
        p.kT = 0.0;
    } else {
        p.gamma0 = 0.01;
        p.kT = g0kT / p.gamma0;
    }
    return p;
}

}  // namespace

std::vector<std::string> cmd_reproduce_figure(int id, const std::string& out_dir,
                                              const RunConfig& base) {
    base.params.require_valid();
    if (id < 1 || id > 4) throw std::invalid_argument("reproduce-figure: id must be 1..4");

    namespace fs = std::filesystem;
    std::vector<std::string> written;

    const auto emit_diffusion = [&](const std::string& name, const ModelParams& p,
                                    const std::vector<CaseId>& cases, double horizon) {
        RunConfig cfg = base;
        cfg.params = p;
        cfg.method = RunMethod::closed_form;
        const fs::path path = fs::path(out_dir) / name;
        atomic_write(path.string(), diffusion_csv(cfg, cases, horizon, cfg.points));
        written.push_back(path.string());
    };
    const auto emit_gamma = [&](const std::string& name, const ModelParams& p,
                                const std::vector<CaseId>& cases, double horizon) {
        std::string out = "t,case,Gamma\n";
        for (CaseId c : cases) {
            const TimeSeries g = gamma_factor(horizon, base.points, p, c, 1.0,
                                              EvalMethod::closed_form,
                                              base.diffusion_options());
            for (std::size_t k = 0; k < g.size(); ++k) {
                out += num(g.time_at(k));
                out += ',';
                out += case_to_string(c);
                out += ',';
                if (!std::isnan(g.values[k])) out += num(g.values[k]);
                out += '\n';
            }
        }
        const fs::path path = fs::path(out_dir) / name;
        atomic_write(path.string(), out);
        written.push_back(path.string());
    };

    const std::vector<CaseId> all = {CaseId::a, CaseId::b, CaseId::c, CaseId::d};
    const std::vector<CaseId> ac = {CaseId::a, CaseId::c};

    if (id == 1 || id == 3) {
        // 3 temperature rows x 2 frequency sets; the hot row uses a shorter
        // dimensionless horizon.
        for (double g0kT : {0.0, 1.0, 100.0}) {
            for (double w : {1.0, 5.0}) {
                const double wt_range = g0kT == 100.0 ? 2.0 : 3.0;
                const double horizon = wt_range / w;
                const ModelParams p = figure_params(base, g0kT, w, 1.0);
                const std::string name = "fig" + std::to_string(id) + "_gkT" +
                                         num(g0kT) + "_w" + num(w) + ".csv";
                if (id == 1)
                    emit_diffusion(name, p, all, horizon);
                else
                    emit_gamma(name, p, all, horizon);
            }
        }
    } else if (id == 2) {
        const ModelParams p = figure_params(base, 100.0, 5.0, 1.0);
        emit_diffusion("fig2_main.csv", p, ac, 12.0 / 5.0);
    } else {
        const ModelParams p = figure_params(base, 100.0, 5.0, 1.0);
        emit_gamma("fig4_main.csv", p, ac, 30.0 / 5.0);
    }
    return written;
}

namespace {

// Threshold decoherence time from the lambda = 1 exponent: with
// D proportional to lambda^2, Gamma < eps iff E_unit > ln(1/eps)/lambda^2.
std::optional<double> t_dec_from_unit_exponent(const TimeSeries& e_unit, double lambda,
                                               double epsilon) {
    const double threshold = std::log(1.0 / epsilon) / (lambda * lambda);
    return find_first_crossing(e_unit, threshold, Crossing::rising);
}

}  // namespace

CalibrationResult cmd_calibrate_lambda(const RunConfig& cfg, double target) {
    cfg.require_valid();
    if (!(target > 0.0))
        throw std::invalid_argument("calibrate-lambda: target must be > 0");

    ModelParams unit = cfg.params;
    unit.lambda_c = 1.0;
    const CaseId c = cfg.cases.front();
    const DiffusionOptions opt = cfg.diffusion_options();
    const TimeSeries e_unit =
        diffusion_exponent(cfg.horizon, cfg.points, unit, c, EvalMethod::closed_form, opt);

    const auto t_of = [&](double lambda) {
        return t_dec_from_unit_exponent(e_unit, lambda, cfg.epsilon);
    };

    double lo = 1e-4;
    double hi = 10.0;
    const auto t_lo = t_of(lo);
    const auto t_hi = t_of(hi);
    // t_D is monotone decreasing in lambda; the target must sit between the
    // bracket endpoints' decoherence times.
    if (t_hi && *t_hi > target * 1.01) {
        throw std::runtime_error(
            "calibrate-lambda: target " + num(target) + " unreachable: even lambda=" +
            num(hi) + " gives t_D=" + num(*t_hi));
    }
    if (!t_hi)
        throw std::runtime_error(
            "calibrate-lambda: Gamma never crosses epsilon within the horizon even at "
            "lambda=" + num(hi) + "; increase --horizon");
    if (t_lo && *t_lo < target * 0.99) {
        throw std::runtime_error(
            "calibrate-lambda: target " + num(target) + " unreachable: even lambda=" +
            num(lo) + " gives t_D=" + num(*t_lo));
    }

    CalibrationResult result;
    double t_mid = *t_hi;
    double mid = hi;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const auto t = t_of(mid);
        if (!t || *t > target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (t) {
            t_mid = *t;
            if (std::fabs(*t - target) <= 0.01 * target) break;
        }
    }
    result.lambda = mid;
    result.t_D_achieved = t_mid;

    const CaseId order[4] = {CaseId::a, CaseId::b, CaseId::c, CaseId::d};
    for (int i = 0; i < 4; ++i) {
        const TimeSeries e = diffusion_exponent(cfg.horizon, cfg.points, unit, order[i],
                                                EvalMethod::closed_form, opt);
        const auto t = t_dec_from_unit_exponent(e, result.lambda, cfg.epsilon);
        result.t_D_cases[i] = t ? *t : std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

}  // namespace decoh
