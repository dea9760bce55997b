#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace decoh {

/// Uniformly sampled real-valued series: value k lives at t0 + k*dt.
struct TimeSeries {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
    double t_end() const { return time_at(values.empty() ? 0 : values.size() - 1); }

    void require_valid() const;
};

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;

    void require_valid() const;
};

/// Raised when adaptive subdivision runs out of budget before reaching
/// the requested tolerance. Carries the best estimate so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best, double residual)
        : std::runtime_error(what), best_estimate(best), residual(residual) {}

    double best_estimate;
    double residual;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Composite-trapezoid running integral on the same grid; c(t0) = 0.
TimeSeries cumulative_integral(const TimeSeries& s);

enum class Crossing { falling, rising };

/// First time the series crosses `threshold` in the given direction,
/// linearly interpolated between bracketing samples. NaN samples are
/// treated as gaps: pairs touching a gap are skipped.
std::optional<double> find_first_crossing(const TimeSeries& s, double threshold,
                                          Crossing direction);

}  // namespace decoh
