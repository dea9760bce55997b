#pragma once

#include <cmath>

#include "decoh/model.hpp"

namespace decoh {

/// Circular/hyperbolic selector shared by the trajectory and diffusion
/// formulas. `e` is the sign in c' = e * freq * s (so s'' = e * freq^2 * s):
/// +1 for sinh/cosh (inverted), -1 for sin/cos (harmonic).
struct TrigKit {
    double (*s)(double);
    double (*c)(double);
    double e;
};

inline TrigKit trig_kit(OscillatorKind k) {
    if (k == OscillatorKind::inverted)
        return {[](double x) { return std::sinh(x); },
                [](double x) { return std::cosh(x); }, +1.0};
    return {[](double x) { return std::sin(x); },
            [](double x) { return std::cos(x); }, -1.0};
}

}  // namespace decoh
