#pragma once

// Dormand–Prince 5(4) with FSAL and a standard step-size controller, for
// two-component systems. Private to the library.

#include <algorithm>
#include <array>
#include <cmath>

namespace singulab::detail {

using Vec2 = std::array<double, 2>;

enum class StepStatus { Done, Stopped, Underflow, MaxSteps, NonFinite };

struct StepperConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 1'000'000;
    double h_init = 0.0;  // signed initial step, required
};

inline bool finite(const Vec2& y) { return std::isfinite(y[0]) && std::isfinite(y[1]); }

/// f(x, y) -> Vec2; h_cap(x) -> largest allowed |h| at x;
/// observe(x, y, dy) -> false to stop. observe is called at x0 and after
/// every accepted step. On return x and y hold the last accepted point.
template <class F, class Cap, class Observe>
StepStatus dopri5(F&& f, Cap&& h_cap, Observe&& observe, double& x, Vec2& y, double x_end,
                  const StepperConfig& cfg) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = x_end > x ? 1.0 : -1.0;
    Vec2 k1 = f(x, y);
    if (!finite(k1)) return StepStatus::NonFinite;
    if (!observe(x, y, k1)) return StepStatus::Stopped;

    double h = dir * std::min(std::abs(cfg.h_init), h_cap(x));
    long steps = 0;
    int nonfinite_retries = 0;
    while (dir * (x_end - x) > 0.0) {
        if (steps >= cfg.max_steps) return StepStatus::MaxSteps;
        const double cap = h_cap(x);
        if (std::abs(h) > cap) h = dir * cap;
        bool last = false;
        if (dir * (x + h - x_end) >= 0.0) {
            h = x_end - x;
            last = true;
        }
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x))) return StepStatus::Underflow;

        auto at = [&](double c, std::initializer_list<std::pair<double, const Vec2*>> terms) {
            Vec2 ys = y;
            for (const auto& [a, k] : terms) {
                ys[0] += h * a * (*k)[0];
                ys[1] += h * a * (*k)[1];
            }
            return f(x + c * h, ys);
        };
        const Vec2 k2 = at(c2, {{a21, &k1}});
        const Vec2 k3 = at(c3, {{a31, &k1}, {a32, &k2}});
        const Vec2 k4 = at(c4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        const Vec2 k5 = at(c5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        const Vec2 k6 = at(1.0, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        Vec2 y_new;
        for (int i = 0; i < 2; ++i)
            y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const Vec2 k7 = finite(y_new) ? f(x + h, y_new) : Vec2{NAN, NAN};

        bool ok = finite(k2) && finite(k3) && finite(k4) && finite(k5) && finite(k6) &&
                  finite(y_new) && finite(k7);
        double err = 0.0;
        if (ok) {
            for (int i = 0; i < 2; ++i) {
                const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                      e6 * k6[i] + e7 * k7[i]);
                const double sc =
                    cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(0.5 * err);
            ok = std::isfinite(err);
        }
        if (!ok) {
            if (++nonfinite_retries > 60) return StepStatus::NonFinite;
            h *= 0.25;
            continue;
        }
        nonfinite_retries = 0;
        if (err <= 1.0) {
            x = last ? x_end : x + h;
            y = y_new;
            k1 = k7;
            ++steps;
            if (!observe(x, y, k1)) return StepStatus::Stopped;
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= fac;
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    return StepStatus::Done;
}

}  // namespace singulab::detail
