#pragma once

#include <string>

namespace singulab {

/// Position of q relative to the thresholds N/(N-1) and 2.
enum class RegimeTag {
    Subcritical,     // 1 < q < N/(N-1)
    Critical,        // q = N/(N-1) up to kCriticalTolerance
    Supercritical,   // N/(N-1) < q < 2
    Quadratic,       // q = 2, not covered by any result here
    Superquadratic,  // q > 2
};

/// Relative tolerance used to decide q == N/(N-1).
inline constexpr double kCriticalTolerance = 1e-9;

/// Problem triple of  -Δu + m|∇u|^q - e^u = 0  in dimension N.
struct Params {
    int N = 3;
    double q = 1.5;
    double m = 1.0;

    /// Validates N >= 2, q > 1, m > 0.
    static Params make(int N, double q, double m);

    /// m = 0: the pure Emden equation -Δu = e^u. Only meant for testing the
    /// integrators against exact solutions.
    static Params pure_emden(int N, double q = 1.5);

    double critical_q() const { return static_cast<double>(N) / (N - 1); }
    RegimeTag tag() const;
    bool is_critical() const { return tag() == RegimeTag::Critical; }
};

RegimeTag regime_tag(int N, double q);
std::string to_string(RegimeTag tag);

}  // namespace singulab
