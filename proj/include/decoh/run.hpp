#pragma once

#include <string>
#include <vector>

#include "decoh/decoherence.hpp"
#include "decoh/diffusion.hpp"
#include "decoh/model.hpp"

namespace decoh {

enum class RunMethod { closed_form, quadrature, both };

struct RunConfig {
    ModelParams params;
    std::vector<CaseId> cases = {CaseId::a, CaseId::b, CaseId::c, CaseId::d};
    double horizon = 3.0;
    std::size_t points = 4096;
    double epsilon = 0.01;
    std::string output_path;
    RunMethod method = RunMethod::closed_form;
    PrefactorScope scope = PrefactorScope::both;

    DiffusionOptions diffusion_options() const { return {scope, {}}; }
    void require_valid() const;
};

/// Applies a flat JSON object (file contents) onto a config; unknown keys
/// are rejected. Flags applied afterwards override these values.
void apply_config_json(RunConfig& cfg, const std::string& json_text);
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Writes `t,case,method,D` rows for every case/method/grid point.
/// With method=both, prints the max relative closed/quadrature gap to stderr.
void cmd_diffusion(const RunConfig& cfg);

/// Writes `t,case,Gamma` rows plus a JSON sidecar (output path with a .json
/// extension) holding per-case decoherence times.
void cmd_gamma(const RunConfig& cfg);

/// Emits the per-panel CSV datasets for figure `id` (1..4) into `out_dir`;
/// returns the written file names.
std::vector<std::string> cmd_reproduce_figure(int id, const std::string& out_dir,
                                              const RunConfig& base);

struct CalibrationResult {
    double lambda = 0.0;
    double t_D_achieved = 0.0;
    /// Per-case threshold decoherence times at the calibrated lambda
    /// (NaN where not reached within the horizon).
    double t_D_cases[4] = {0, 0, 0, 0};
};

/// Bisects lambda in [1e-4, 10] so the threshold decoherence time of
/// cfg's first case matches `target` within 1%. D scales exactly as
/// lambda^2, so the exponent is precomputed once at lambda = 1.
CalibrationResult cmd_calibrate_lambda(const RunConfig& cfg, double target);

}  // namespace decoh
